#include "nicensus/io.hpp"

#include "nicensus/error.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace nicensus {

namespace {

[[noreturn]] void fail(const std::string& why, std::size_t pos)
{
    throw Error(Errc::ParseError, why + " at position " + std::to_string(pos));
}

struct Token {
    std::string_view text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] == ':') {
            out.push_back({s.substr(i, 1), i});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ':')
            ++j;
        out.push_back({s.substr(i, j - i), i});
        i = j;
    }
    return out;
}

std::uint64_t parse_number(const Token& t)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        fail("expected a non-negative integer, found '" + std::string(t.text) + "'", t.pos);
    return v;
}

} // namespace

std::string to_text(const Mat& x)
{
    std::string out = std::to_string(x.rows()) + " " + x.ctx().descriptor() + " :";
    for (const Elt e : x.data())
        out += " " + std::to_string(e.v);
    return out;
}

Mat parse_matrix(std::string_view text)
{
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first])))
        ++first;
    if (first < text.size() && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            fail(std::string("malformed JSON matrix: ") + e.what(), e.byte);
        }
        return matrix_from_json(j);
    }
    const auto tokens = tokenize(text);
    if (tokens.empty())
        fail("empty matrix text", 0);
    const std::uint64_t d = parse_number(tokens[0]);
    if (d == 0 || d > 64)
        fail("dimension must be between 1 and 64", tokens[0].pos);
    if (tokens.size() < 2)
        fail("missing field descriptor", text.size());
    Field field;
    try {
        field = FieldCtx::from_descriptor(tokens[1].text);
    } catch (const Error& e) {
        fail(std::string("bad field descriptor (") + e.what() + ")", tokens[1].pos);
    }
    if (tokens.size() < 3 || tokens[2].text != ":")
        fail("expected ':' after the field", tokens.size() < 3 ? text.size() : tokens[2].pos);
    const std::size_t want = static_cast<std::size_t>(d * d);
    if (tokens.size() - 3 != want)
        fail("expected " + std::to_string(want) + " entries, found " + std::to_string(tokens.size() - 3),
             tokens.size() > 3 + want ? tokens[3 + want].pos : text.size());
    Mat x(field, static_cast<int>(d), static_cast<int>(d));
    for (std::size_t k = 0; k < want; ++k) {
        const Token& t = tokens[3 + k];
        const std::uint64_t v = parse_number(t);
        if (v >= field->size())
            fail("entry " + std::to_string(v) + " is not an element of F_" + std::to_string(field->size()), t.pos);
        x(static_cast<int>(k / d), static_cast<int>(k % d)) = Elt{static_cast<std::uint32_t>(v)};
    }
    return x;
}

Json to_json(const Rational& r)
{
    Rational c = r;
    c.canonicalize();
    return Json{{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}};
}

Json to_json(const Interval& x, int digits)
{
    return Json{{"lo", x.lo_string(digits)}, {"hi", x.hi_string(digits)}, {"rounding", "outward"}};
}

Json to_json(const Poly& f)
{
    Json arr = Json::array();
    for (auto v : f.encodings())
        arr.push_back(v);
    return arr;
}

Json to_json(const Mat& x)
{
    Json rows = Json::array();
    for (int i = 0; i < x.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < x.cols(); ++j)
            row.push_back(x(i, j).v);
        rows.push_back(std::move(row));
    }
    return Json{{"field", x.ctx().descriptor()}, {"rows", x.rows()}, {"cols", x.cols()}, {"entries", std::move(rows)}};
}

Rational rational_from_json(const Json& j)
{
    try {
        Rational r(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
        if (r.get_den() == 0)
            throw Error(Errc::ParseError, "zero denominator");
        r.canonicalize();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("rational needs string fields num and den: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(Errc::ParseError, "rational fields must be decimal integers");
    }
}

Mat matrix_from_json(const Json& j)
{
    try {
        Field field = FieldCtx::from_descriptor(j.at("field").get<std::string>());
        const auto& rows = j.at("entries");
        const int n = static_cast<int>(rows.size());
        if (n == 0)
            throw Error(Errc::ParseError, "matrix has no rows");
        Mat x(field, n, n);
        for (int i = 0; i < n; ++i) {
            const auto& row = rows.at(static_cast<std::size_t>(i));
            if (static_cast<int>(row.size()) != n)
                throw Error(Errc::ParseError, "row " + std::to_string(i) + " has the wrong length");
            for (int k = 0; k < n; ++k) {
                const auto v = row.at(static_cast<std::size_t>(k)).get<std::uint64_t>();
                if (v >= field->size())
                    throw Error(Errc::ParseError, "entry (" + std::to_string(i) + "," + std::to_string(k) +
                                                      ") is not a field element");
                x(i, k) = Elt{static_cast<std::uint32_t>(v)};
            }
        }
        return x;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad JSON matrix: ") + e.what());
    }
}

} // namespace nicensus
