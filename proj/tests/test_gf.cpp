#include "nicensus/error.hpp"
#include "nicensus/gf.hpp"
#include "nicensus/tower.hpp"

#include <doctest.h>

#include <set>

using namespace nicensus;

namespace {

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::InvalidArgument;
}

} // namespace

TEST_CASE("field construction")
{
    const Field f2 = FieldCtx::create(2, 1);
    CHECK(f2->size() == 2);
    CHECK(f2->elements().size() == 2);

    const Field f4 = FieldCtx::create(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    CHECK(f4->size() == 4);
    CHECK(f4->same_as(*FieldCtx::of_order(4)));

    CHECK(code_of([] { FieldCtx::create(4, 1); }) == Errc::NonPrimeCharacteristic);
    CHECK(code_of([] { FieldCtx::create(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }) == Errc::ReducibleModulus);
    CHECK(code_of([] { FieldCtx::create(2, 3, std::vector<std::uint32_t>{1, 1, 1}); }) == Errc::DegreeMismatch);
}

TEST_CASE("canonical modulus is the smallest irreducible, low degree first")
{
    // t^3 + t^2 + 1 = (1, 0, 1, 1) beats t^3 + t + 1 = (1, 1, 0, 1).
    CHECK(FieldCtx::of_order(8)->modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
    CHECK(FieldCtx::of_order(8)->descriptor() == "2^3/13");
    CHECK(FieldCtx::of_order(9)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("descriptors round-trip")
{
    for (std::uint64_t q : {2u, 3u, 4u, 8u, 9u, 16u, 25u, 27u}) {
        const Field f = FieldCtx::of_order(q);
        CHECK(FieldCtx::from_descriptor(f->descriptor())->same_as(*f));
    }
    CHECK(FieldCtx::from_descriptor("2^4")->size() == 16);
    CHECK(FieldCtx::from_descriptor("2^3/11")->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(code_of([] { FieldCtx::from_descriptor("2^x"); }) == Errc::ParseError);
    CHECK(code_of([] { FieldCtx::from_descriptor("6"); }) == Errc::NonPrimeCharacteristic);
}

TEST_CASE("field axioms by exhaustion")
{
    for (std::uint64_t q : {2u, 3u, 4u, 8u, 9u}) {
        CAPTURE(q);
        const Field f = FieldCtx::of_order(q);
        const auto els = f->elements();
        CHECK(std::set<Elt>(els.begin(), els.end()).size() == q);
        bool ok = true;
        for (Elt a : els) {
            ok = ok && f->add(a, f->neg(a)) == f->zero() && f->mul(a, f->one()) == a;
            if (a != f->zero())
                ok = ok && f->mul(a, f->inv(a)) == f->one();
            for (Elt b : els) {
                ok = ok && f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
                for (Elt c : els) {
                    ok = ok && f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
                    ok = ok && f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
                    ok = ok && f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
                }
            }
        }
        CHECK(ok);
        CHECK(f->pow(f->primitive(), q - 1) == f->one());
        for (const auto pdiv : prime_divisors(q - 1))
            CHECK(f->pow(f->primitive(), (q - 1) / pdiv) != f->one());
    }
    CHECK(code_of([] { FieldCtx::of_order(5)->inv(Elt{0}); }) == Errc::RangeError);
}

TEST_CASE("Frobenius")
{
    const Field f2 = FieldCtx::of_order(2);
    for (Elt x : f2->elements())
        CHECK(f2->frobenius(x, 2) == x);

    // lambda = t satisfies lambda^2 = lambda + 1 in F_4 = F_2[t]/(t^2+t+1).
    const Field f4 = FieldCtx::of_order(4);
    const Elt lambda{2};
    CHECK(f4->frobenius(lambda, 2) == Elt{3});
    CHECK(f4->degree_over_subfield(Elt{1}, 2) == 1);
    CHECK(f4->degree_over_subfield(lambda, 2) == 2);

    const Field f8 = FieldCtx::of_order(8);
    CHECK(f8->degree_over_subfield(f8->primitive(), 2) == 3);
    CHECK_THROWS_AS(f8->frobenius(Elt{1}, 4), Error);
    CHECK(code_of([&] { f8->degree_over_subfield(Elt{1}, 4); }) == Errc::NotASubfield);
}

TEST_CASE("Frobenius is an automorphism fixing exactly the subfield")
{
    for (auto [Q, q] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
             {4, 2}, {8, 2}, {16, 2}, {16, 4}, {9, 3}, {27, 3}, {81, 3}, {81, 9}, {64, 4}, {64, 8}}) {
        CAPTURE(Q);
        CAPTURE(q);
        const Field big = FieldCtx::of_order(Q);
        const Tower tower = TowerCtx::create(FieldCtx::of_order(q), big);
        const auto els = big->elements();
        std::size_t fixed = 0;
        bool hom = true;
        for (Elt x : els) {
            const bool is_fixed = big->frobenius(x, q) == x;
            fixed += is_fixed;
            hom = hom && is_fixed == tower->in_base(x);
            for (Elt y : els) {
                hom = hom && big->frobenius(big->add(x, y), q) == big->add(big->frobenius(x, q), big->frobenius(y, q));
                hom = hom && big->frobenius(big->mul(x, y), q) == big->mul(big->frobenius(x, q), big->frobenius(y, q));
            }
        }
        CHECK(hom);
        CHECK(fixed == q);
        unsigned b = 0;
        for (std::uint64_t s = 1; s < Q; s *= q)
            ++b;
        for (Elt x : els) {
            Elt y = x;
            for (unsigned i = 0; i < b; ++i)
                y = big->frobenius(y, q);
            CHECK(y == x);
        }
    }
}

TEST_CASE("tower embedding and coordinates")
{
    const Tower t = TowerCtx::from_descriptor("4/2");
    CHECK(t->degree() == 2);
    CHECK(t->basis() == std::vector<Elt>{Elt{1}, Elt{2}});
    for (Elt y : t->ext()->elements())
        CHECK(t->from_coords(t->coords(y)) == y);

    const Tower t2 = TowerCtx::from_descriptor("16/4");
    const Field& K = t2->ext();
    const Field& F = t2->base();
    for (Elt a : F->elements())
        for (Elt b : F->elements()) {
            CHECK(t2->embed(F->add(a, b)) == K->add(t2->embed(a), t2->embed(b)));
            CHECK(t2->embed(F->mul(a, b)) == K->mul(t2->embed(a), t2->embed(b)));
            CHECK(t2->restrict(t2->embed(a)) == a);
        }
    CHECK(code_of([&] { t2->restrict(K->primitive()); }) == Errc::NotASubfield);
    CHECK(code_of([] { TowerCtx::from_descriptor("8/4"); }) == Errc::NotASubfield);
}
