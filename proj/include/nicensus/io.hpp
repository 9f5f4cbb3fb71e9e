#ifndef NICENSUS_IO_HPP
#define NICENSUS_IO_HPP

#include "nicensus/matrix.hpp"
#include "nicensus/numeric.hpp"
#include "nicensus/poly.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace nicensus {

using Json = nlohmann::ordered_json;

/// "d FIELD : e11 e12 ... edd", entries as element encodings, row-major.
/// FIELD is any field descriptor ("2", "2^2", "2^2/7").
std::string to_text(const Mat& x);

/// Parses the text form above, or the JSON form produced by to_json when the
/// input starts with '{'. Throws ParseError with the offending position.
Mat parse_matrix(std::string_view text);

Json to_json(const Rational& r);
/// Endpoints as decimal strings, lo rounded down and hi rounded up.
Json to_json(const Interval& x, int digits = 20);
/// Coefficient encodings, low degree first.
Json to_json(const Poly& f);
Json to_json(const Mat& x);

Rational rational_from_json(const Json& j);
Mat matrix_from_json(const Json& j);

} // namespace nicensus

#endif
