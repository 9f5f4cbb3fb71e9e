#ifndef NICENSUS_POLY_HPP
#define NICENSUS_POLY_HPP

#include "nicensus/gf.hpp"
#include "nicensus/numeric.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nicensus {

/// Default cap on the number of candidates an enumeration may visit.
inline constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 24;

/// Dense univariate polynomial over a finite field, coefficients low degree
/// first. The zero polynomial has degree -1 and no stored coefficients.
class Poly {
public:
    explicit Poly(Field field);
    Poly(Field field, std::vector<Elt> coeffs);

    static Poly constant(Field field, Elt c);
    /// c * t^degree
    static Poly monomial(Field field, Elt c, int degree);
    static Poly t(Field field) { return monomial(field, Elt{1}, 1); }
    /// Parses the integer-encoded coefficient list, low degree first.
    static Poly from_encodings(Field field, const std::vector<std::uint32_t>& coeffs);

    const Field& field() const noexcept { return field_; }
    const FieldCtx& ctx() const noexcept { return *field_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == Elt{1}; }
    Elt lead() const noexcept { return c_.empty() ? Elt{0} : c_.back(); }
    Elt operator[](int i) const noexcept
    {
        return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Elt{0};
    }
    const std::vector<Elt>& coeffs() const noexcept { return c_; }
    std::vector<std::uint32_t> encodings() const;

    Elt eval(Elt x) const;

    friend bool operator==(const Poly& a, const Poly& b);

private:
    void normalize();

    Field field_;
    std::vector<Elt> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Elt c, const Poly& a);

/// Quotient and remainder; throws ZeroPolynomial on a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

Poly monic(const Poly& a);
/// Monic gcd (zero when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
Poly derivative(const Poly& a);
Poly pow(const Poly& base, unsigned exponent);
Poly pow_mod(const Poly& base, const Integer& exponent, const Poly& modulus);
bool divides(const Poly& d, const Poly& a);
/// Largest m with g^m | f (f nonzero, g of positive degree).
int multiplicity(const Poly& f, const Poly& g);

/// Total order: degree, then coefficient encodings low degree first.
bool canonical_less(const Poly& a, const Poly& b);

bool is_irreducible(const Poly& f);

struct Factor {
    Poly poly;
    int multiplicity;
};

struct Factorization {
    Elt unit;
    std::vector<Factor> factors; // monic irreducible, canonical order

    Poly expand(const Field& field) const;
};

/// Exact factorization into monic irreducibles: squarefree split, distinct
/// degree split, then trial division by the enumerated irreducibles of each
/// degree. Throws ZeroPolynomial, or BudgetExceeded when an equal-degree
/// split would need more than `budget` candidates.
Factorization factorize(const Poly& f, std::uint64_t budget = default_enumeration_budget);

/// All monic irreducibles of degree m over the field, canonical order.
/// Results are cached per (field, m).
const std::vector<Poly>& irr_enumerate(int m, const Field& field,
                                       std::uint64_t budget = default_enumeration_budget);

/// Number of monic irreducibles of degree m over F_q (necklace formula).
Integer irr_count(int m, const Integer& q);

int mobius(int n);

/// "c0+c1*t+c2*t^2" with every coefficient written as its integer encoding.
std::string to_text(const Poly& f);
/// Accepts the format above; terms may be omitted or reordered.
Poly parse_poly(const Field& field, std::string_view text);

} // namespace nicensus

#endif
