#include "nicensus/error.hpp"
#include "nicensus/estimate.hpp"
#include "nicensus/matrix.hpp"

#include <doctest.h>

using namespace nicensus;

namespace {

Poly P(const Field& f, std::vector<std::uint32_t> c)
{
    return Poly::from_encodings(f, c);
}

Mat M(const Field& f, int n, std::vector<std::uint32_t> e)
{
    return Mat::from_encodings(f, n, n, e);
}

std::uint64_t count_of(std::uint64_t q, int d)
{
    std::uint64_t n = 1;
    for (int i = 0; i < d * d; ++i)
        n *= q;
    return n;
}

/// Rows of `sub` lie in the row space of `basis`.
bool within(const Mat& sub, const Mat& basis)
{
    if (sub.rows() == 0)
        return true;
    return rank(vstack(basis, sub)) == rank(basis);
}

} // namespace

TEST_CASE("charpoly and minpoly examples")
{
    const Field f2 = FieldCtx::of_order(2);
    const Mat I = Mat::identity(f2, 2);
    CHECK(charpoly(I) == P(f2, {1, 0, 1}));
    CHECK(minpoly(I) == P(f2, {1, 1}));

    const Poly f = P(f2, {1, 1, 0, 1});
    CHECK(charpoly(companion(f)) == f);
    CHECK(minpoly(companion(f)) == f);

    const Mat J = M(f2, 2, {0, 1, 0, 0});
    CHECK(charpoly(J) == P(f2, {0, 0, 1}));
    CHECK(minpoly(J) == P(f2, {0, 0, 1}));

    CHECK_THROWS_AS(companion(P(f2, {1})), Error);
}

TEST_CASE("Fitting decomposition examples")
{
    const Field f2 = FieldCtx::of_order(2);
    const Mat g = M(f2, 2, {0, 1, 1, 1});
    FittingSplit s = fitting_decompose(g);
    CHECK(s.dim_nil() == 0);
    CHECK(s.x_inv == conjugate(g, Mat::identity(f2, 2)));
    CHECK(s.x_inv == g);

    s = fitting_decompose(M(f2, 2, {0, 1, 0, 0}));
    CHECK(s.dim_inv() == 0);
    CHECK(s.dim_nil() == 2);

    s = fitting_decompose(M(f2, 2, {1, 0, 0, 0}));
    REQUIRE(s.dim_inv() == 1);
    REQUIRE(s.dim_nil() == 1);
    CHECK(s.inv_basis == Mat::from_encodings(f2, 1, 2, {1, 0}));
    CHECK(s.nil_basis == Mat::from_encodings(f2, 1, 2, {0, 1}));
}

TEST_CASE("Fitting invariants on all of M(2,2) and M(2,3)")
{
    for (std::uint64_t q : {2u, 3u}) {
        const Field f = FieldCtx::of_order(q);
        const int d = 2;
        bool ok = true;
        for (std::uint64_t idx = 0; idx < count_of(q, d); ++idx) {
            const Mat x = Mat::from_index(f, d, idx);
            ok = ok && x.index() == idx;
            const FittingSplit s = fitting_decompose(x);
            ok = ok && s.dim_inv() + s.dim_nil() == d;
            ok = ok && s.dim_nil() == d - rank(pow(x, Integer(d)));
            if (s.dim_inv() > 0)
                ok = ok && is_invertible(s.x_inv) && within(s.inv_basis * x, s.inv_basis);
            if (s.dim_nil() > 0)
                ok = ok && pow(s.x_nil, Integer(s.dim_nil())).is_zero() && within(s.nil_basis * x, s.nil_basis);
            // Change of basis reconstructs X.
            const Mat basis = s.dim_inv() == 0 ? s.nil_basis : s.dim_nil() == 0 ? s.inv_basis
                                                                                : vstack(s.inv_basis, s.nil_basis);
            Mat block = Mat::zero(f, d);
            for (int i = 0; i < s.dim_inv(); ++i)
                for (int j = 0; j < s.dim_inv(); ++j)
                    block(i, j) = s.x_inv(i, j);
            for (int i = 0; i < s.dim_nil(); ++i)
                for (int j = 0; j < s.dim_nil(); ++j)
                    block(s.dim_inv() + i, s.dim_inv() + j) = s.x_nil(i, j);
            ok = ok && basis * x == block * basis;
            Mat inv_only = Mat::zero(f, d);
            for (int i = 0; i < s.dim_inv(); ++i)
                for (int j = 0; j < s.dim_inv(); ++j)
                    inv_only(i, j) = s.x_inv(i, j);
            ok = ok && invertible_part_embedded(x) == inverse(basis).value() * inv_only * basis;
        }
        CHECK(ok);
    }
}

TEST_CASE("primary components")
{
    const Field f2 = FieldCtx::of_order(2);
    const Field f3 = FieldCtx::of_order(3);
    const Poly irr = P(f2, {1, 1, 1});
    PrimaryDecomposition pd = primary_components(companion(irr));
    REQUIRE(pd.components.size() == 1);
    CHECK(pd.components[0].f == irr);
    CHECK(pd.components[0].basis.rows() == 2);

    pd = primary_components(M(f3, 2, {1, 0, 0, 2}));
    REQUIRE(pd.components.size() == 2);
    CHECK(pd.components[0].f == P(f3, {1, 1}));
    CHECK(pd.components[1].f == P(f3, {2, 1}));
    CHECK(pd.components[0].basis.rows() == 1);
    CHECK(pd.components[1].basis.rows() == 1);

    const Mat diag10 = M(f2, 2, {1, 0, 0, 0});
    pd = primary_components(diag10);
    REQUIRE(pd.components.size() == 2);
    CHECK(pd.components[0].f == Poly::t(f2));
    CHECK(pd.components[0].basis == fitting_decompose(diag10).nil_basis);

    // Dimensions and multiplicities across M(2,3).
    bool ok = true;
    for (std::uint64_t idx = 0; idx < 81; ++idx) {
        const Mat x = Mat::from_index(f3, 2, idx);
        int total = 0;
        Mat all(f3, 0, 2);
        for (const auto& comp : primary_components(x).components) {
            total += comp.basis.rows();
            ok = ok && comp.basis.rows() == comp.charpoly_mult * comp.f.degree();
            ok = ok && 1 <= comp.minpoly_mult && comp.minpoly_mult <= comp.charpoly_mult;
            all = vstack(all, comp.basis);
        }
        ok = ok && total == 2 && rank(all) == 2;
    }
    CHECK(ok);
}

TEST_CASE("primary cyclic test")
{
    const Field f2 = FieldCtx::of_order(2);
    const Field f3 = FieldCtx::of_order(3);
    const Poly irr = P(f2, {1, 1, 1});
    CHECK(is_primary_cyclic(companion(irr), irr));
    CHECK_FALSE(is_primary_cyclic(Mat::identity(f2, 2), P(f2, {1, 1})));
    CHECK(is_primary_cyclic(M(f3, 2, {1, 0, 0, 2}), P(f3, {2, 1})));
    CHECK_FALSE(is_primary_cyclic(M(f3, 2, {1, 0, 0, 2}), P(f3, {0, 1})));
    CHECK_THROWS_AS(is_primary_cyclic(Mat::identity(f2, 2), P(f2, {1, 0, 1})), Error);
}

TEST_CASE("minpoly divides charpoly and both are conjugation invariant")
{
    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
        const Field f = FieldCtx::of_order(q);
        bool ok = true;
        for (std::uint64_t j = 0; j < 1000; ++j) {
            CounterRng rng(7, j);
            const int d = 1 + static_cast<int>(rng.below(4));
            const Mat x = sample_matrix(d, f, rng);
            const Mat g = sample_gl(d, f, rng);
            const Mat y = conjugate(x, g);
            ok = ok && divides(minpoly(x), charpoly(x));
            ok = ok && charpoly(y) == charpoly(x) && minpoly(y) == minpoly(x);
            ok = ok && eval(minpoly(x), x).is_zero();
        }
        CHECK(ok);
    }
}

TEST_CASE("nilpotent counts are q^(n^2 - n)")
{
    for (auto [d, q, expected] : std::vector<std::tuple<int, std::uint64_t, std::uint64_t>>{
             {1, 2, 1}, {1, 3, 1}, {2, 2, 4}, {2, 3, 9}, {3, 2, 64}, {3, 3, 729}}) {
        const Field f = FieldCtx::of_order(q);
        std::uint64_t n = 0;
        for (std::uint64_t idx = 0; idx < count_of(q, d); ++idx)
            n += is_nilpotent(Mat::from_index(f, d, idx));
        CHECK(n == expected);
    }
}

TEST_CASE("multiplicative Jordan decomposition")
{
    const Field f2 = FieldCtx::of_order(2);
    const Mat g = M(f2, 2, {0, 1, 1, 1}); // order 3
    JordanParts jp = jordan_multiplicative(g);
    CHECK(jp.s == g);
    CHECK(jp.u == Mat::identity(f2, 2));

    const Mat u = M(f2, 2, {1, 1, 0, 1});
    jp = jordan_multiplicative(u);
    CHECK(jp.s == Mat::identity(f2, 2));
    CHECK(jp.u == u);

    CHECK_THROWS_AS(jordan_multiplicative(M(f2, 2, {1, 0, 0, 0})), Error);

    for (auto [d, q] : std::vector<std::pair<int, std::uint64_t>>{{2, 2}, {2, 3}, {3, 2}}) {
        const Field f = FieldCtx::of_order(q);
        bool ok = true;
        std::uint64_t seen = 0;
        for (std::uint64_t idx = 0; idx < count_of(q, d); ++idx) {
            const Mat x = Mat::from_index(f, d, idx);
            if (!is_invertible(x))
                continue;
            ++seen;
            const JordanParts p = jordan_multiplicative(x);
            ok = ok && p.s * p.u == x && p.u * p.s == x;
            ok = ok && charpoly(p.s) == charpoly(x);
            ok = ok && gcd(element_order(p.s), Integer(q)) == 1;
            Integer e = element_order(p.u);
            while (e % q == 0)
                e /= q;
            ok = ok && e == 1;
        }
        CHECK(Integer(static_cast<unsigned long>(seen)) == gl_order(d, Integer(q)));
        CHECK(ok);
    }
}

TEST_CASE("conjugate, direct sum, companion")
{
    const Field f3 = FieldCtx::of_order(3);
    const Mat x = M(f3, 2, {1, 2, 0, 1});
    CHECK(conjugate(x, Mat::identity(f3, 2)) == x);
    CHECK_THROWS_AS(conjugate(x, Mat::zero(f3, 2)), Error);

    const Mat ds = direct_sum(Mat::identity(f3, 1), x);
    CHECK(ds.rows() == 3);
    CHECK(charpoly(ds) == P(f3, {2, 1}) * charpoly(x));

    const Poly f = P(f3, {2, 0, 1, 1});
    CHECK(charpoly(companion(f)) == f);
    CHECK(gl_order(2, Integer(2)) == 6);
    CHECK(gl_order(3, Integer(2)) == 168);
}
