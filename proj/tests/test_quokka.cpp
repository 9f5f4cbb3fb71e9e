#include "nicensus/census.hpp"
#include "nicensus/embed.hpp"
#include "nicensus/error.hpp"
#include "nicensus/quokka.hpp"

#include <doctest.h>

#include <numeric>

using namespace nicensus;

namespace {

/// Permutations of {0..c-1} containing a cycle of length r, by enumeration.
Rational brute_r_cycle(int c, int r)
{
    std::vector<int> perm(static_cast<std::size_t>(c));
    std::iota(perm.begin(), perm.end(), 0);
    long hits = 0;
    long total = 0;
    do {
        ++total;
        std::vector<bool> seen(perm.size());
        bool has = false;
        for (int s = 0; s < c; ++s) {
            if (seen[static_cast<std::size_t>(s)])
                continue;
            int len = 0;
            for (int x = s; !seen[static_cast<std::size_t>(x)]; x = perm[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = true;
                ++len;
            }
            has = has || len == r;
        }
        hits += has;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return ratio(hits, total);
}

/// Elements of GL(c, q^b) whose blow-up is f-primary cyclic, per f of degree
/// b*r, tallied directly.
std::vector<Rational> brute_pc_single(int c, std::uint64_t q, unsigned b, int r)
{
    const Tower tw = TowerCtx::create(FieldCtx::of_order(q), b);
    const auto& irr = irr_enumerate(static_cast<int>(b) * r, tw->base());
    std::vector<long> hits(irr.size());
    long gl = 0;
    std::uint64_t total = 1;
    for (int k = 0; k < c * c; ++k)
        total *= tw->ext()->size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const Mat x = Mat::from_index(tw->ext(), c, idx);
        if (!is_invertible(x))
            continue;
        ++gl;
        for (std::size_t j = 0; j < irr.size(); ++j)
            hits[j] += in_pc_set(x, irr[j], *tw);
    }
    std::vector<Rational> out;
    for (std::size_t j = 0; j < irr.size(); ++j)
        if (!(irr[j].degree() == 1 && irr[j][0] == Elt{0}))
            out.push_back(ratio(hits[j], gl));
    return out;
}

} // namespace

TEST_CASE("cycle types")
{
    auto ct = cycle_types(1);
    REQUIRE(ct.size() == 1);
    CHECK(ct[0].type.parts == std::vector<int>{1});
    CHECK(ct[0].proportion == 1);

    ct = cycle_types(3);
    REQUIRE(ct.size() == 3);
    CHECK(ct[0].type.parts == std::vector<int>{3});
    CHECK(ct[0].proportion == Rational(1, 3));
    CHECK(ct[1].type.parts == std::vector<int>{2, 1});
    CHECK(ct[1].proportion == Rational(1, 2));
    CHECK(ct[2].proportion == Rational(1, 6));

    const std::vector<std::size_t> partition_counts{1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int c = 1; c <= 10; ++c) {
        Rational sum = 0;
        const auto all = cycle_types(c);
        for (const auto& w : all) {
            CHECK(w.type.size() == c);
            sum += w.proportion;
        }
        CHECK(sum == 1);
        CHECK(all.size() == partition_counts[static_cast<std::size_t>(c - 1)]);
    }
}

TEST_CASE("r-cycle proportions")
{
    CHECK(r_cycle_proportion(3, 2) == Rational(1, 2));
    CHECK(r_cycle_proportion(2, 2) == Rational(1, 2));
    CHECK(r_cycle_proportion(5, 3) == Rational(1, 3));
    for (int c = 1; c <= 7; ++c)
        for (int r = c / 2 + 1; r <= c; ++r)
            CHECK(r_cycle_proportion(c, r) == brute_r_cycle(c, r));
    CHECK_THROWS_AS(r_cycle_proportion(4, 2), Error);
    CHECK_THROWS_AS(r_cycle_proportion(4, 5), Error);
}

TEST_CASE("single-f proportions")
{
    CHECK(quokka_pc_single(2, 2, 1, 2) == Rational(1, 3));
    CHECK(quokka_pc_single(1, 2, 2, 1) == Rational(2, 3));
    CHECK(quokka_pc_single(2, 2, 2, 2) == Rational(2, 15));
    for (int c = 1; c <= 10; ++c)
        for (unsigned b = 1; b <= 3; ++b)
            for (std::uint64_t q : {2u, 3u})
                for (int r = c / 2 + 1; r <= c; ++r) {
                    const Integer denom = ipow(Integer(static_cast<unsigned long>(q)), b * r) - 1;
                    CHECK(quokka_pc_single(c, q, b, r) == ratio(Integer(b), denom));
                }
}

TEST_CASE("single-f proportions against exhaustive counting")
{
    struct Case {
        int c;
        std::uint64_t q;
        unsigned b;
        int r;
    };
    // Brute force inline for the smallest cases, the library sweep for the rest.
    for (Case k : {Case{2, 2, 1, 2}, Case{1, 2, 2, 1}, Case{1, 3, 2, 1}, Case{2, 2, 2, 2}, Case{2, 3, 1, 2}}) {
        CAPTURE(k.c);
        CAPTURE(k.q);
        CAPTURE(k.b);
        const auto props = brute_pc_single(k.c, k.q, k.b, k.r);
        CHECK_FALSE(props.empty());
        for (const Rational& p : props)
            CHECK(p == quokka_pc_single(k.c, k.q, k.b, k.r));
    }
    for (Case k : {Case{3, 2, 1, 2}, Case{3, 2, 1, 3}, Case{2, 5, 1, 2}, Case{1, 2, 3, 1}, Case{2, 2, 3, 2},
                   Case{1, 3, 3, 1}, Case{2, 3, 2, 2}}) {
        CAPTURE(k.c);
        CAPTURE(k.q);
        CAPTURE(k.b);
        CAPTURE(k.r);
        for (const PcSingleCount& s : pc_single_exhaustive(k.c, k.q, k.b, k.r))
            CHECK(s.proportion() == quokka_pc_single(k.c, k.q, k.b, k.r));
    }
}

TEST_CASE("per-degree totals")
{
    CHECK(quokka_pc_r(1, 2, 2, 1) == Rational(2, 3));
    CHECK(quokka_pc_r(2, 3, 1, 2) == Rational(3, 8));
    CHECK(quokka_pc_r(2, 2, 1, 2) == Rational(1, 3));
    CHECK(irr_count_excluding_t(1, 5) == 4);
    CHECK(irr_count_excluding_t(2, 2) == 1);
    for (int c = 1; c <= 6; ++c)
        for (unsigned b = 1; b <= 3; ++b)
            for (unsigned long q : {2ul, 3ul})
                for (int r = c / 2 + 1; r <= c; ++r) {
                    CHECK(quokka_pc_r(c, q, b, r) ==
                          quokka_pc_single(c, q, b, r) * Rational(irr_count_excluding_t(static_cast<int>(b) * r, q)));
                    CHECK(quokka_pc_r_sandwich(c, q, b, r) == Verdict::Holds);
                }
    CHECK(ngl_exact(2, 2, 1) == Rational(1, 3));
}

TEST_CASE("bands")
{
    CHECK(harmonic_tail(2) == Rational(1, 2));
    const Band h = harmonic_band(2);
    CHECK(h.lower.below(Rational(1, 2)));
    CHECK(h.upper.above(Rational(1, 2)));

    const Band g = ngl_band(2, 2, 1);
    CHECK(g.lower.below(Rational(1, 3)));
    CHECK(g.upper.above(Rational(1, 3)));
    CHECK(g.upper.lo_double() == doctest::Approx(1.1931).epsilon(1e-4));

    const BoundSheet s = bound_sheet(6, 2, 2);
    CHECK(s.exact_by_r.size() == 3);
    CHECK(s.overall() == Verdict::Holds);

    for (int c = 2; c <= 12; ++c)
        for (unsigned b = 1; b <= 4; ++b)
            for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
                const Band band = ngl_band(c, q, b);
                const Rational exact = ngl_exact(c, q, b);
                CHECK(check_less(band.lower, exact) == Verdict::Holds);
                CHECK(check_less_equal(exact, band.upper) == Verdict::Holds);
            }
    CHECK_THROWS_AS(ngl_band(1, 2, 2), Error);
}

TEST_CASE("per-dimension closed form against exhaustive N_i")
{
    const Field f4 = FieldCtx::of_order(4);
    const FlagCensus c = census_exact(make_spec("pc-large-degree(2)", f4), f4, 2);
    for (const FlagLevel& lvl : c.per_i)
        if (lvl.i >= 1)
            CHECK(lvl.proportion() == ngl_exact(lvl.i, 2, 2));
    const Field f8 = FieldCtx::of_order(8);
    const FlagCensus c8 = census_exact(make_spec("pc-large-degree(3)", f8), f8, 2);
    for (const FlagLevel& lvl : c8.per_i)
        if (lvl.i >= 1)
            CHECK(lvl.proportion() == ngl_exact(lvl.i, 2, 3));
}

TEST_CASE("large-degree proportion of all matrices")
{
    const Interval big = thm_pc_m_bound(100, 2, 8);
    CHECK(big.lo_double() == doctest::Approx(0.5324).epsilon(1e-4));

    const Interval small = thm_pc_m_bound(2, 2, 2);
    CHECK(small.below(Rational(0)));
    CHECK(thm_pc_m_exact(2, 2, 2) == Rational(7, 16));

    // Independent oracle: exhaustive membership over all 256 elements of M(2,4).
    const Tower tw = TowerCtx::from_descriptor("4/2");
    long members = 0;
    for (std::uint64_t idx = 0; idx < 256; ++idx)
        members += pc_membership(Mat::from_index(tw->ext(), 2, idx), *tw).member;
    CHECK(ratio(members, 256) == thm_pc_m_exact(2, 2, 2));

    for (auto [cc, q, b] : std::vector<std::tuple<int, std::uint64_t, unsigned>>{{2, 2, 2}, {3, 2, 2}, {8, 2, 2}, {6, 3, 2}, {100, 2, 8}})
        CHECK(check_less(thm_pc_m_bound(cc, q, b), thm_pc_m_exact(cc, q, b)) == Verdict::Holds);

    CHECK_THROWS_AS(thm_pc_m_bound(2, 2, 1), Error);
    CHECK_THROWS_AS(thm_pc_m_bound(1, 2, 2), Error);
}

TEST_CASE("weighted band brackets the exact proportion")
{
    for (auto [c, q, b] : std::vector<std::tuple<int, std::uint64_t, unsigned>>{{2, 2, 2}, {6, 3, 2}, {8, 2, 2}, {5, 2, 3}}) {
        const Band w = weighted_pc_m_band(c, q, b);
        const Rational exact = thm_pc_m_exact(c, q, b);
        CHECK(check_less_equal(Rational(0), w.upper) == Verdict::Holds);
        CHECK(!w.lower.above(exact));
        CHECK(!w.upper.below(exact));
    }
}
