#include "nicensus/error.hpp"
#include "nicensus/galois.hpp"
#include "nicensus/poly.hpp"
#include "nicensus/tower.hpp"

#include <doctest.h>

using namespace nicensus;

namespace {

Poly P(const Field& f, std::vector<std::uint32_t> c)
{
    return Poly::from_encodings(f, c);
}

/// Every polynomial of degree <= max_deg (leading coefficient nonzero).
std::vector<Poly> all_polys(const Field& f, int max_deg)
{
    std::vector<Poly> out;
    const std::uint32_t q = f->size();
    for (int deg = 0; deg <= max_deg; ++deg) {
        std::uint64_t n = 1;
        for (int i = 0; i <= deg; ++i)
            n *= q;
        for (std::uint64_t idx = 0; idx < n; ++idx) {
            std::vector<std::uint32_t> c;
            std::uint64_t rest = idx;
            for (int i = 0; i <= deg; ++i) {
                c.push_back(static_cast<std::uint32_t>(rest % q));
                rest /= q;
            }
            if (c.back() != 0)
                out.push_back(P(f, c));
        }
    }
    return out;
}

/// Irreducibility by trial division over all monic polynomials of lower degree.
bool brute_irreducible(const Poly& f)
{
    if (f.degree() < 1)
        return false;
    for (const Poly& g : all_polys(f.field(), f.degree() / 2))
        if (g.degree() >= 1 && (f % g).is_zero())
            return false;
    return true;
}

} // namespace

TEST_CASE("factorize examples")
{
    const Field f2 = FieldCtx::of_order(2);
    const Field f3 = FieldCtx::of_order(3);
    auto fz = factorize(P(f2, {0, 0, 1}));
    REQUIRE(fz.factors.size() == 1);
    CHECK(fz.factors[0].poly == Poly::t(f2));
    CHECK(fz.factors[0].multiplicity == 2);

    fz = factorize(P(f2, {1, 1, 1}));
    REQUIRE(fz.factors.size() == 1);
    CHECK(fz.factors[0].poly == P(f2, {1, 1, 1}));

    fz = factorize(P(f3, {2, 0, 1})); // t^2 - 1
    REQUIRE(fz.factors.size() == 2);
    CHECK(fz.factors[0].poly == P(f3, {1, 1})); // t + 1
    CHECK(fz.factors[1].poly == P(f3, {2, 1})); // t - 1

    CHECK_THROWS_AS(factorize(Poly(f2)), Error);
}

TEST_CASE("factorize recomposes every polynomial of degree <= 6 over F_2 and F_3")
{
    for (std::uint64_t q : {2u, 3u}) {
        const Field f = FieldCtx::of_order(q);
        const int max_deg = q == 2 ? 6 : 5;
        bool ok = true;
        for (const Poly& g : all_polys(f, max_deg)) {
            const Factorization fz = factorize(g);
            ok = ok && fz.expand(f) == g;
            for (std::size_t i = 0; i < fz.factors.size(); ++i) {
                ok = ok && fz.factors[i].poly.is_monic() && is_irreducible(fz.factors[i].poly);
                if (i > 0)
                    ok = ok && canonical_less(fz.factors[i - 1].poly, fz.factors[i].poly);
            }
        }
        CHECK(ok);
    }
    // Degree 6 over F_3: spot-check the products of a few irreducibles.
    const Field f3 = FieldCtx::of_order(3);
    const Poly a = irr_enumerate(2, f3)[1];
    const Poly b = irr_enumerate(3, f3)[0];
    const Poly t1 = P(f3, {1, 1});
    const Poly g = Elt{2} * (a * b * t1);
    CHECK(factorize(g).expand(f3) == g);
}

TEST_CASE("Rabin test matches trial division")
{
    for (std::uint64_t q : {2u, 3u, 4u}) {
        const Field f = FieldCtx::of_order(q);
        for (const Poly& g : all_polys(f, q == 2 ? 7 : 4))
            if (g.is_monic())
                CHECK(is_irreducible(g) == brute_irreducible(g));
    }
}

TEST_CASE("irreducible enumeration and counts")
{
    const Field f2 = FieldCtx::of_order(2);
    CHECK(irr_enumerate(1, f2).size() == 2);
    REQUIRE(irr_enumerate(2, f2).size() == 1);
    CHECK(irr_enumerate(2, f2)[0] == P(f2, {1, 1, 1}));
    CHECK(irr_enumerate(4, f2).size() == 3);

    CHECK(irr_count(1, 7) == 7);
    CHECK(irr_count(2, 3) == 3);
    CHECK(irr_count(6, 2) == 9);

    for (std::uint64_t q : {2u, 3u, 4u})
        for (int m = 1; m <= (q == 2 ? 8 : q == 3 ? 6 : 5); ++m)
            CHECK(Integer(static_cast<unsigned long>(irr_enumerate(m, FieldCtx::of_order(q)).size())) ==
                  irr_count(m, static_cast<unsigned long>(q)));
    CHECK_THROWS_AS(irr_enumerate(20, f2, 1000), Error);
}

TEST_CASE("irr_count sandwich")
{
    for (unsigned long q : {2ul, 3ul, 4ul, 5ul})
        for (int m = 2; m <= 16; ++m) {
            const Integer n = irr_count(m, q);
            const Integer qm = ipow(q, static_cast<unsigned long>(m));
            CHECK(n * m <= qm - 1);
            // (q^m - 2 q^{m/2}) / m <= n, i.e. (qm - m n)^2 <= 4 q^m when qm >= m n.
            const Integer gap = qm - n * m;
            CHECK(gap * gap <= 4 * qm);
        }
}

TEST_CASE("Galois action on coefficients")
{
    const Tower tw = TowerCtx::from_descriptor("4/2");
    const Field& K = tw->ext();
    const Poly g = P(K, {2, 1}); // t + lambda
    CHECK(galois_conjugate(g, *tw, 1) == P(K, {3, 1}));
    CHECK(galois_conjugate(g, *tw, 0) == g);
    CHECK(galois_conjugate(P(K, {1, 1, 1}), *tw, 1) == P(K, {1, 1, 1}));
    CHECK_THROWS_AS(galois_conjugate(g, 8, 1), Error);

    const OrbitProduct op = galois_orbit_product(g, *tw);
    CHECK(op.product == P(tw->base(), {1, 1, 1}));
    CHECK(op.irreducible);
    CHECK(op.orbit_length == 2);

    const OrbitProduct fixed = galois_orbit_product(P(K, {1, 1}), *tw);
    CHECK_FALSE(fixed.irreducible);
    CHECK(fixed.orbit_length == 1);
    CHECK(fixed.product == P(tw->base(), {1, 0, 1}));

    const Tower trivial = TowerCtx::create(FieldCtx::of_order(3), 1u);
    const Poly h = P(trivial->ext(), {1, 2, 1, 1});
    if (is_irreducible(h))
        CHECK(galois_orbit_product(h, *trivial).product == h);
    CHECK_THROWS_AS(galois_orbit_product(P(K, {0, 0, 1}), *tw), Error);
}

TEST_CASE("regular-orbit products are irreducible of degree b*r")
{
    for (auto desc : {"4/2", "8/2", "16/2", "16/4", "9/3", "27/3"}) {
        const Tower tw = TowerCtx::from_descriptor(desc);
        const unsigned b = tw->degree();
        for (int r = 1; r <= 3; ++r) {
            if (r * b > 8)
                continue;
            for (const Poly& g : irr_enumerate(r, tw->ext())) {
                const OrbitProduct op = galois_orbit_product(g, *tw);
                if (op.orbit_length != b)
                    continue;
                CHECK(op.irreducible);
                CHECK(op.product.degree() == static_cast<int>(b) * r);
                CHECK(is_irreducible(op.product));
            }
        }
    }
}

TEST_CASE("regular orbit counts")
{
    CHECK(count_regular_orbit_irr(1, 2, 2) == 2);
    for (int r = 1; r <= 4; ++r)
        CHECK(count_regular_orbit_irr(r, 1, 3) == irr_count(r, 3));
    const RegularOrbitReport rep = regular_orbit_report(2, 2, 2);
    CHECK(rep.enumerated == rep.b_times_irr);
}

TEST_CASE("text form")
{
    const Field f4 = FieldCtx::of_order(4);
    const Poly g = P(f4, {2, 0, 3});
    CHECK(to_text(g) == "2+0*t+3*t^2");
    CHECK(parse_poly(f4, to_text(g)) == g);
    CHECK(parse_poly(f4, "3*t^2+2") == g);
    try {
        parse_poly(f4, "1+t+7*t^2");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}
