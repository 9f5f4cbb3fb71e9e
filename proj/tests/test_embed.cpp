#include "nicensus/embed.hpp"
#include "nicensus/error.hpp"
#include "nicensus/estimate.hpp"
#include "nicensus/galois.hpp"

#include <doctest.h>

#include <set>

using namespace nicensus;

namespace {

Poly P(const Field& f, std::vector<std::uint32_t> c)
{
    return Poly::from_encodings(f, c);
}

const Tower& f4_over_f2()
{
    static const Tower t = TowerCtx::from_descriptor("4/2");
    return t;
}

} // namespace

TEST_CASE("regular representation")
{
    const TowerCtx& tw = *f4_over_f2();
    const Field& F = tw.base();
    const Elt lambda{2};
    CHECK(regular_rep(lambda, tw) == Mat::from_encodings(F, 2, 2, {0, 1, 1, 1}));
    CHECK(regular_rep(Elt{1}, tw) == Mat::identity(F, 2));

    const Tower t16 = TowerCtx::from_descriptor("16/4");
    for (Elt a : t16->base()->elements())
        CHECK(regular_rep(t16->embed(a), *t16) == Mat::scalar(t16->base(), 2, a));
}

TEST_CASE("blow-up examples")
{
    const TowerCtx& tw = *f4_over_f2();
    const Field& K = tw.ext();
    CHECK(blow_up(Mat::identity(K, 3), tw) == Mat::identity(tw.base(), 6));
    const Mat lam = Mat::from_encodings(K, 1, 1, {2});
    CHECK(charpoly(blow_up(lam, tw)) == P(tw.base(), {1, 1, 1}));
    CHECK_THROWS_AS(blow_up(Mat::identity(tw.base(), 2), tw), Error);
}

TEST_CASE("blow-up is an injective algebra homomorphism")
{
    const TowerCtx& tw = *f4_over_f2();
    const Field& K = tw.ext();
    std::set<std::uint64_t> images;
    for (std::uint64_t i = 0; i < 4; ++i) {
        const Mat x = Mat::from_index(K, 1, i);
        images.insert(blow_up(x, tw).index());
        for (std::uint64_t j = 0; j < 4; ++j) {
            const Mat y = Mat::from_index(K, 1, j);
            CHECK(blow_up(x + y, tw) == blow_up(x, tw) + blow_up(y, tw));
            CHECK(blow_up(x * y, tw) == blow_up(x, tw) * blow_up(y, tw));
        }
    }
    CHECK(images.size() == 4);

    for (const char* desc : {"4/2", "8/2", "9/3", "16/4"}) {
        const Tower t = TowerCtx::from_descriptor(desc);
        bool ok = true;
        for (std::uint64_t j = 0; j < 300; ++j) {
            CounterRng rng(11, j);
            const Mat x = sample_matrix(2, t->ext(), rng);
            const Mat y = sample_matrix(2, t->ext(), rng);
            ok = ok && blow_up(x + y, *t) == blow_up(x, *t) + blow_up(y, *t);
            ok = ok && blow_up(x * y, *t) == blow_up(x, *t) * blow_up(y, *t);
            ok = ok && (x == y) == (blow_up(x, *t) == blow_up(y, *t));
        }
        CHECK(ok);
    }
}

TEST_CASE("norm identity for charpolys on M(2,4)")
{
    const TowerCtx& tw = *f4_over_f2();
    bool ok = true;
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const Mat x = Mat::from_index(tw.ext(), 2, idx);
        const Poly c = charpoly(x);
        const Poly norm = c * galois_conjugate(c, tw, 1);
        ok = ok && tw.lift(charpoly(blow_up(x, tw))) == norm;
    }
    CHECK(ok);
}

TEST_CASE("membership examples")
{
    const TowerCtx& tw = *f4_over_f2();
    const Field& K = tw.ext();
    PCMembership m = pc_membership(Mat::from_encodings(K, 1, 1, {2}), tw);
    CHECK(m.member);
    REQUIRE(m.f.has_value());
    CHECK(*m.f == P(tw.base(), {1, 1, 1}));
    CHECK(m.r == 1);
    CHECK(m.g == P(K, {2, 1}));

    CHECK_FALSE(pc_membership(Mat::from_encodings(K, 1, 1, {1}), tw).member);
    CHECK_FALSE(pc_membership(Mat::identity(K, 2), tw).member);
    CHECK_FALSE(pc_membership(Mat::from_encodings(K, 2, 2, {0, 3, 0, 0}), tw).member);
    CHECK_FALSE(pc_membership(Mat::zero(K, 2), tw).member);
}

TEST_CASE("M(2,4) membership: count, disjointness, NI property")
{
    const TowerCtx& tw = *f4_over_f2();
    const Field& K = tw.ext();
    const auto& irr4 = irr_enumerate(4, tw.base());
    const auto& irr2 = irr_enumerate(2, tw.base());
    int members = 0;
    int full_members = 0;
    bool disjoint = true;
    bool ni = true;
    bool witness_ok = true;
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const Mat x = Mat::from_index(K, 2, idx);
        const PCMembership m = pc_membership(x, tw);
        members += m.member;
        full_members += pc_membership(x, tw, DegreeThreshold::FullDimension).member;
        // r = 2 > c/2 = 1: at most one f of degree 4 can claim X.
        int hits = 0;
        for (const Poly& f : irr4)
            hits += in_pc_set(x, f, tw);
        disjoint = disjoint && hits <= 1;
        const Mat y = invertible_part_embedded(x);
        ni = ni && pc_membership(y, tw).member == m.member;
        if (m.member) {
            witness_ok = witness_ok && m.f->is_monic() && is_irreducible(*m.f) &&
                         m.f->degree() == 2 * *m.r && in_pc_set(x, *m.f, tw) && divides(*m.g, charpoly(x));
            witness_ok = witness_ok && (m.r == 2 || std::find(irr2.begin(), irr2.end(), *m.f) != irr2.end());
        }
    }
    CHECK(members == 112);
    CHECK(full_members == 72);
    CHECK(disjoint);
    CHECK(ni);
    CHECK(witness_ok);
}

TEST_CASE("membership is conjugation invariant")
{
    const Tower t = TowerCtx::from_descriptor("8/2");
    bool ok = true;
    for (std::uint64_t j = 0; j < 300; ++j) {
        CounterRng rng(5, j);
        const Mat x = sample_matrix(2, t->ext(), rng);
        const Mat g = sample_gl(2, t->ext(), rng);
        ok = ok && pc_membership(x, *t).member == pc_membership(conjugate(x, g), *t).member;
    }
    CHECK(ok);
}

TEST_CASE("blow-up criterion agrees with the direct test")
{
    const TowerCtx& tw = *f4_over_f2();
    const Field& K = tw.ext();
    const Field& F = tw.base();
    int checked = 0;
    bool agree = true;
    for (int c = 1; c <= 2; ++c) {
        const std::uint64_t total = c == 1 ? 4 : 256;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            const Mat x = Mat::from_index(K, c, idx);
            for (const auto& [f, mult] : factorize(charpoly(blow_up(x, tw))).factors) {
                const PropositionCheck pc = proposition_check(x, f, tw);
                agree = agree && pc.agree();
                if (f.degree() % 2 != 0)
                    agree = agree && !pc.direct && !pc.conditions;
                ++checked;
            }
        }
    }
    CHECK(agree);
    CHECK(checked > 256);

    const Mat lam = Mat::from_encodings(K, 1, 1, {2});
    CHECK_THROWS_AS(proposition_check(lam, P(F, {1, 0, 1}), tw), Error);
    CHECK_THROWS_AS(proposition_check(lam, P(F, {1, 1}), tw), Error);
    const PropositionCheck pc = proposition_check(lam, P(F, {1, 1, 1}), tw);
    CHECK(pc.direct);
    CHECK(pc.conditions);
    CHECK(pc.g == P(K, {2, 1}));
}
