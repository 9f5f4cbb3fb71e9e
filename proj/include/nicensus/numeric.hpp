#ifndef NICENSUS_NUMERIC_HPP
#define NICENSUS_NUMERIC_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace nicensus {

using Integer = mpz_class;
using Rational = mpq_class;

Integer ipow(const Integer& base, unsigned long exponent);
/// num/den in lowest terms; den must be nonzero.
Rational ratio(const Integer& num, const Integer& den);

/// base^exponent for any integer exponent; base must be nonzero when exponent < 0.
Rational rpow(const Rational& base, long exponent);

/// Canonical decimal string "num/den" (or "num" when den == 1).
std::string to_string(const Rational& value);

/// Closed real interval [lo, hi] with endpoints rounded outward.
///
/// Transcendental constants (log 2, fractional powers) only ever enter the
/// library through this type, so a comparison against an exact rational is
/// definitive only when the rational falls strictly outside the interval.
class Interval {
public:
    static constexpr mpfr_prec_t precision = 128;

    Interval();
    explicit Interval(const Rational& value);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval log2();
    static Interval min(const Interval& a, const Interval& b);
    static Interval max(const Interval& a, const Interval& b);
    /// base^exponent for base > 0.
    static Interval power(const Rational& base, const Rational& exponent);

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws RangeError when b contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    /// True when every point of the interval is strictly below x.
    bool below(const Rational& x) const;
    /// True when every point of the interval is strictly above x.
    bool above(const Rational& x) const;
    bool contains(const Rational& x) const;
    bool below(const Interval& other) const;

    double lo_double() const;
    double hi_double() const;
    double mid_double() const;

    /// Fixed-point decimal strings; lo rounds toward -inf, hi toward +inf.
    std::string lo_string(int digits = 20) const;
    std::string hi_string(int digits = 20) const;

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

private:
    using BinaryOp = void (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Interval corners(const Interval& a, const Interval& b, BinaryOp op);

    mpfr_t lo_;
    mpfr_t hi_;
    bool live_ = false;
};

/// Outcome of checking an inequality that may involve rounded quantities.
enum class Verdict { Holds, Violated, Inconclusive };

std::string to_string(Verdict v);

/// Claim a < x.
Verdict check_less(const Interval& a, const Rational& x);
/// Claim x < a.
Verdict check_less(const Rational& x, const Interval& a);
/// Claim x <= a.
Verdict check_less_equal(const Rational& x, const Interval& a);
/// Exact comparison lifted to a verdict.
inline Verdict verdict_of(bool holds) { return holds ? Verdict::Holds : Verdict::Violated; }
/// Violated dominates inconclusive, which dominates holds.
Verdict combine(Verdict a, Verdict b);

} // namespace nicensus

#endif
