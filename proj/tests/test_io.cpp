#include "nicensus/error.hpp"
#include "nicensus/estimate.hpp"
#include "nicensus/io.hpp"

#include <doctest.h>

using namespace nicensus;

namespace {

/// Position reported by a ParseError, or npos when the input parsed.
std::size_t error_position(std::string_view text)
{
    try {
        parse_matrix(text);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        const std::string msg = e.what();
        const auto at = msg.find("at position ");
        REQUIRE(at != std::string::npos);
        return std::stoul(msg.substr(at + 12));
    }
    return std::string::npos;
}

} // namespace

TEST_CASE("matrix text form")
{
    const Mat x = parse_matrix("2 2 : 0 1 1 1");
    CHECK(x == Mat::from_encodings(FieldCtx::of_order(2), 2, 2, {0, 1, 1, 1}));
    CHECK(to_text(x) == "2 2^1/2 : 0 1 1 1");
    CHECK(parse_matrix(to_text(x)) == x);

    const Mat y = parse_matrix("  2 2^2 :  3 0\n 1 2 ");
    CHECK(y.ctx().size() == 4);
    CHECK(y(0, 0) == Elt{3});
    CHECK(y(1, 1) == Elt{2});

    const Mat z = parse_matrix("1 2^3/11 : 6");
    CHECK(z.ctx().modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(parse_matrix(to_text(z)).ctx().same_as(z.ctx()));
}

TEST_CASE("matrix text round trips on random input")
{
    for (std::uint64_t q : {2u, 3u, 4u, 9u, 16u}) {
        const Field f = FieldCtx::of_order(q);
        for (std::uint64_t j = 0; j < 50; ++j) {
            CounterRng rng(q, j);
            const Mat x = sample_matrix(1 + static_cast<int>(rng.below(4)), f, rng);
            CHECK(parse_matrix(to_text(x)) == x);
            CHECK(parse_matrix(to_json(x).dump()) == x);
            CHECK(matrix_from_json(to_json(x)) == x);
        }
    }
}

TEST_CASE("malformed matrices report a position")
{
    CHECK(error_position("2 2 : 0 1 1") != std::string::npos);
    CHECK(error_position("2 2 : 0 1 5 1") == 10);
    CHECK(error_position("2 2 0 1 1 1") == 4);
    CHECK(error_position("x 2 : 0") == 0);
    CHECK(error_position("2 6 : 0 1 1 1") == 2);
    CHECK(error_position("") == 0);
    CHECK(error_position("{\"field\": \"2\", ") != std::string::npos);
}

TEST_CASE("JSON forms")
{
    const Json r = to_json(Rational(-6, 4) + 0);
    CHECK(r.dump() == R"({"num":"-3","den":"2"})");
    CHECK(rational_from_json(r) == Rational(-3, 2));
    CHECK(rational_from_json(Json::parse(R"({"num":"4","den":"8"})")) == Rational(1, 2));
    CHECK_THROWS_AS(rational_from_json(Json::parse(R"({"num":"4","den":"0"})")), Error);
    CHECK_THROWS_AS(rational_from_json(Json::parse(R"({"num":4})")), Error);

    const Integer huge = ipow(Integer(3), 100);
    CHECK(rational_from_json(to_json(Rational(huge))) == Rational(huge));

    const Json iv = to_json(Interval::log2(), 10);
    CHECK(iv["lo"] == "0.6931471805");
    CHECK(iv["hi"] == "0.6931471806");
    CHECK(iv["rounding"] == "outward");

    const Field f4 = FieldCtx::of_order(4);
    CHECK(to_json(Poly::from_encodings(f4, {2, 0, 1})).dump() == "[2,0,1]");
    const Json m = to_json(Mat::identity(f4, 2));
    CHECK(m["field"] == f4->descriptor());
    CHECK(m["rows"] == 2);
}
