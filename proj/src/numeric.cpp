#include "nicensus/numeric.hpp"

#include "nicensus/error.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace nicensus {

Rational ratio(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw Error(Errc::RangeError, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer ipow(const Integer& base, unsigned long exponent)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational rpow(const Rational& base, long exponent)
{
    if (exponent >= 0) {
        Rational out(ipow(base.get_num(), static_cast<unsigned long>(exponent)),
                     ipow(base.get_den(), static_cast<unsigned long>(exponent)));
        out.canonicalize();
        return out;
    }
    if (base == 0)
        throw Error(Errc::RangeError, "zero raised to a negative power");
    return 1 / rpow(base, -exponent);
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

Interval::Interval()
{
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
    live_ = true;
}

Interval::Interval(const Rational& value) : Interval()
{
    mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval()
{
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(static_cast<const Interval&>(other)) {}

Interval& Interval::operator=(const Interval& other)
{
    if (this != &other) {
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept
{
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
    }
    return *this;
}

Interval::~Interval()
{
    if (live_) {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }
}

Interval Interval::log2()
{
    Interval out;
    mpfr_const_log2(out.lo_, MPFR_RNDD);
    mpfr_const_log2(out.hi_, MPFR_RNDU);
    return out;
}

Interval Interval::power(const Rational& base, const Rational& exponent)
{
    if (base <= 0)
        throw Error(Errc::RangeError, "interval power needs a positive base");
    Interval b(base);
    Interval e(exponent);
    // x^y is monotone in each argument on the relevant quadrant; evaluate all
    // four corners with the outward rounding direction and keep the extremes.
    Interval out;
    mpfr_t tmp;
    mpfr_init2(tmp, precision);
    bool first = true;
    for (mpfr_srcptr x : {b.lo_, b.hi_}) {
        for (mpfr_srcptr y : {e.lo_, e.hi_}) {
            mpfr_pow(tmp, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(tmp, out.lo_))
                mpfr_set(out.lo_, tmp, MPFR_RNDD);
            mpfr_pow(tmp, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(tmp, out.hi_))
                mpfr_set(out.hi_, tmp, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(tmp);
    return out;
}

Interval operator+(const Interval& a, const Interval& b)
{
    Interval out;
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Interval operator-(const Interval& a, const Interval& b)
{
    Interval out;
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
}

Interval Interval::operator-() const
{
    Interval out;
    mpfr_neg(out.lo_, hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
    return out;
}

Interval Interval::corners(const Interval& a, const Interval& b, BinaryOp op)
{
    Interval out;
    mpfr_t tmp;
    mpfr_init2(tmp, precision);
    bool first = true;
    for (mpfr_srcptr x : {a.lo_, a.hi_}) {
        for (mpfr_srcptr y : {b.lo_, b.hi_}) {
            op(tmp, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(tmp, out.lo_))
                mpfr_set(out.lo_, tmp, MPFR_RNDD);
            op(tmp, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(tmp, out.hi_))
                mpfr_set(out.hi_, tmp, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(tmp);
    return out;
}

Interval operator*(const Interval& a, const Interval& b)
{
    return Interval::corners(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
        mpfr_mul(r, x, y, rnd);
    });
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
        throw Error(Errc::RangeError, "interval division by an interval containing zero");
    return Interval::corners(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
        mpfr_div(r, x, y, rnd);
    });
}

bool Interval::below(const Rational& x) const
{
    return mpfr_cmp_q(hi_, x.get_mpq_t()) < 0;
}

bool Interval::above(const Rational& x) const
{
    return mpfr_cmp_q(lo_, x.get_mpq_t()) > 0;
}

bool Interval::contains(const Rational& x) const
{
    return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::below(const Interval& other) const
{
    return mpfr_less_p(hi_, other.lo_);
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_double() const { return 0.5 * (lo_double() + hi_double()); }

namespace {

std::string format(mpfr_srcptr x, int digits, bool up)
{
    char* buf = nullptr;
    const std::string fmt = std::string("%.") + std::to_string(digits) + (up ? "RUf" : "RDf");
    mpfr_asprintf(&buf, fmt.c_str(), x);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

} // namespace

std::string Interval::lo_string(int digits) const { return format(lo_, digits, false); }
std::string Interval::hi_string(int digits) const { return format(hi_, digits, true); }

Interval Interval::min(const Interval& a, const Interval& b)
{
    Interval out;
    mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Interval Interval::max(const Interval& a, const Interval& b)
{
    Interval out;
    mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Violated:
        return "violated";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

Verdict check_less(const Interval& a, const Rational& x)
{
    if (a.below(x))
        return Verdict::Holds;
    if (mpfr_cmp_q(a.lo(), x.get_mpq_t()) >= 0)
        return Verdict::Violated;
    return Verdict::Inconclusive;
}

Verdict check_less(const Rational& x, const Interval& a)
{
    if (a.above(x))
        return Verdict::Holds;
    if (mpfr_cmp_q(a.hi(), x.get_mpq_t()) <= 0)
        return Verdict::Violated;
    return Verdict::Inconclusive;
}

Verdict check_less_equal(const Rational& x, const Interval& a)
{
    if (mpfr_cmp_q(a.lo(), x.get_mpq_t()) >= 0)
        return Verdict::Holds;
    if (a.below(x))
        return Verdict::Violated;
    return Verdict::Inconclusive;
}

Verdict combine(Verdict a, Verdict b)
{
    if (a == Verdict::Violated || b == Verdict::Violated)
        return Verdict::Violated;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive)
        return Verdict::Inconclusive;
    return Verdict::Holds;
}

} // namespace nicensus
