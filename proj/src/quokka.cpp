#include "nicensus/quokka.hpp"

#include "nicensus/census.hpp"
#include "nicensus/embed.hpp"
#include "nicensus/error.hpp"
#include "nicensus/gf.hpp"
#include "nicensus/parallel.hpp"
#include "nicensus/poly.hpp"
#include "nicensus/tower.hpp"

#include <functional>
#include <string>

namespace nicensus {

namespace {

void require_prime_power(std::uint64_t q)
{
    if (!prime_power(q))
        throw Error(Errc::InvalidArgument, std::to_string(q) + " is not a prime power");
}

void require_large_r(int c, int r)
{
    if (c < 1 || r > c || 2 * r <= c)
        throw Error(Errc::RangeError,
                    "need c/2 < r <= c, got c=" + std::to_string(c) + ", r=" + std::to_string(r));
}

Integer factorial(int n)
{
    Integer out = 1;
    for (int i = 2; i <= n; ++i)
        out *= i;
    return out;
}

} // namespace

int CycleType::size() const noexcept
{
    int s = 0;
    for (int p : parts)
        s += p;
    return s;
}

std::map<int, int> CycleType::multiplicities() const
{
    std::map<int, int> m;
    for (int p : parts)
        ++m[p];
    return m;
}

bool CycleType::has_part(int r) const noexcept
{
    for (int p : parts)
        if (p == r)
            return true;
    return false;
}

Rational CycleType::class_proportion() const
{
    Integer denom = 1;
    for (auto [j, m] : multiplicities())
        denom *= ipow(j, static_cast<unsigned long>(m)) * factorial(m);
    return Rational(1, denom);
}

std::vector<WeightedCycleType> cycle_types(int c)
{
    if (c < 1)
        throw Error(Errc::RangeError, "cycle types need c >= 1");
    std::vector<WeightedCycleType> out;
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            CycleType t{parts};
            Rational p = t.class_proportion();
            out.push_back({std::move(t), p});
            return;
        }
        for (int j = std::min(remaining, max_part); j >= 1; --j) {
            parts.push_back(j);
            rec(remaining - j, j);
            parts.pop_back();
        }
    };
    rec(c, c);
    return out;
}

Rational r_cycle_proportion(int c, int r)
{
    require_large_r(c, r);
    Rational sum = 0;
    for (const auto& w : cycle_types(c))
        if (w.type.has_part(r))
            sum += w.proportion;
    return sum;
}

Integer irr_count_excluding_t(int m, const Integer& q)
{
    Integer n = irr_count(m, q);
    return m == 1 ? Integer(n - 1) : n;
}

Rational quokka_pc_single(int c, std::uint64_t q, unsigned b, int r)
{
    require_large_r(c, r);
    require_prime_power(q);
    if (b < 1)
        throw Error(Errc::RangeError, "extension degree must be positive");
    const unsigned long br = static_cast<unsigned long>(b) * static_cast<unsigned long>(r);
    const Rational torus = ratio(Integer(br), ipow(Integer(static_cast<unsigned long>(q)), br) - 1);
    Rational sum = 0;
    for (const auto& w : cycle_types(c))
        if (w.type.has_part(r))
            sum += w.proportion * torus;
    sum.canonicalize();
    return sum;
}

Rational quokka_pc_r(int c, std::uint64_t q, unsigned b, int r)
{
    require_large_r(c, r);
    require_prime_power(q);
    if (b < 1)
        throw Error(Errc::RangeError, "extension degree must be positive");
    const int br = static_cast<int>(b) * r;
    const Integer qq(static_cast<unsigned long>(q));
    Rational out(Integer(b) * irr_count_excluding_t(br, qq), ipow(qq, static_cast<unsigned long>(br)) - 1);
    out.canonicalize();
    return out;
}

std::vector<PcSingleCount> pc_single_exhaustive(int c, std::uint64_t q, unsigned b, int r, std::uint64_t budget,
                                                unsigned threads)
{
    require_large_r(c, r);
    require_prime_power(q);
    Field base = FieldCtx::of_order(q);
    Tower tower = TowerCtx::create(base, b);
    const Field& ext = tower->ext();
    const std::uint64_t total = matrix_count(c, ext->size(), budget);
    std::vector<Poly> candidates;
    for (const auto& f : irr_enumerate(static_cast<int>(b) * r, base, budget))
        if (!(f == Poly::t(base)))
            candidates.push_back(f);

    using Counts = std::vector<std::uint64_t>; // one slot per candidate, then |GL|
    const Counts counts = parallel_reduce(
        total, threads, Counts(candidates.size() + 1, 0),
        [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                const Mat x = Mat::from_index(ext, c, idx);
                if (!is_invertible(x))
                    continue;
                ++acc.back();
                const Mat big = blow_up(x, *tower);
                const Poly cb = charpoly(big);
                for (std::size_t k = 0; k < candidates.size(); ++k)
                    if (divides(candidates[k], cb) && is_primary_cyclic(big, candidates[k], cb))
                        ++acc[k];
            }
        },
        [](Counts& acc, const Counts& part) {
            for (std::size_t k = 0; k < acc.size(); ++k)
                acc[k] += part[k];
        });
    std::vector<PcSingleCount> out;
    for (std::size_t k = 0; k < candidates.size(); ++k)
        out.push_back({candidates[k].encodings(), Integer(static_cast<unsigned long>(counts[k])),
                       Integer(static_cast<unsigned long>(counts.back()))});
    return out;
}

Verdict quokka_pc_r_sandwich(int c, std::uint64_t q, unsigned b, int r)
{
    const Rational value = quokka_pc_r(c, q, b, r);
    const Rational inv_r(1, r);
    const long br = static_cast<long>(b) * r;
    const Interval lower = Interval(inv_r) *
                           (Interval(Rational(1)) - Interval(Rational(2)) *
                                                        Interval::power(Rational(Integer(static_cast<unsigned long>(q))),
                                                                        ratio(-br, 2)));
    return combine(check_less(lower, value), verdict_of(value <= inv_r));
}

Rational ngl_exact(int c, std::uint64_t q, unsigned b)
{
    if (c < 1)
        throw Error(Errc::RangeError, "ngl_exact needs c >= 1");
    Rational sum = 0;
    for (int r = c / 2 + 1; r <= c; ++r)
        sum += quokka_pc_r(c, q, b, r);
    return sum;
}

Rational harmonic_tail(int c)
{
    if (c < 1)
        throw Error(Errc::RangeError, "harmonic tail needs c >= 1");
    Rational sum = 0;
    for (int r = c / 2 + 1; r <= c; ++r)
        sum += Rational(1, r);
    return sum;
}

Band harmonic_band(int c)
{
    if (c < 2)
        throw Error(Errc::RangeError, "harmonic band needs c >= 2");
    const Interval l2 = Interval::log2();
    return {l2 - Interval(Rational(1, c + 1)), l2 + Interval(Rational(1, c))};
}

Band ngl_band(int c, std::uint64_t q, unsigned b)
{
    if (c < 2)
        throw Error(Errc::RangeError, "GL band needs c >= 2");
    require_prime_power(q);
    const Interval l2 = Interval::log2();
    const Interval tail = Interval(Rational(2)) *
                          Interval::power(Rational(Integer(static_cast<unsigned long>(q))),
                                          ratio(-static_cast<long>(b) * c, 4));
    return {l2 - Interval(Rational(1, c + 1)) - tail, l2 + Interval(Rational(1, c))};
}

Interval thm_pc_m_bound(int c, std::uint64_t q, unsigned b)
{
    if (c < 2 || b < 2)
        throw Error(Errc::RangeError, "the bound needs b, c >= 2");
    require_prime_power(q);
    const Interval l2 = Interval::log2();
    const Interval cc{Rational(c)};
    const Interval qb = Interval::power(Rational(Integer(static_cast<unsigned long>(q))), ratio(-static_cast<long>(b), 2));
    return l2 - (l2 + Interval(Rational(3))) / cc - Interval(Rational(2) * (1 - Rational(1, c))) * qb;
}

namespace {

/// Weights q^{-(c-i)} / omega(c-i, Q) of the flag sum, i = 0..c.
std::vector<Rational> flag_weights(int c, const Integer& Q)
{
    std::vector<Rational> w(static_cast<std::size_t>(c) + 1);
    for (int i = 0; i <= c; ++i)
        w[static_cast<std::size_t>(i)] = rpow(Rational(Q), -(c - i)) / omega(c - i, Q);
    return w;
}

} // namespace

Rational thm_pc_m_exact(int c, std::uint64_t q, unsigned b)
{
    if (c < 1 || b < 1)
        throw Error(Errc::RangeError, "need b, c >= 1");
    require_prime_power(q);
    const Integer Q = ipow(Integer(static_cast<unsigned long>(q)), b);
    const auto w = flag_weights(c, Q);
    Rational sum = 0;
    for (int i = 1; i <= c; ++i)
        sum += w[static_cast<std::size_t>(i)] * ngl_exact(i, q, b);
    sum *= omega(c, Q);
    sum.canonicalize();
    return sum;
}

Band weighted_pc_m_band(int c, std::uint64_t q, unsigned b)
{
    if (c < 1 || b < 1)
        throw Error(Errc::RangeError, "need b, c >= 1");
    require_prime_power(q);
    const Integer Q = ipow(Integer(static_cast<unsigned long>(q)), b);
    const auto w = flag_weights(c, Q);
    const Interval zero(Rational(0));
    const Interval one(Rational(1));
    Interval lo(Rational(0));
    Interval hi(Rational(0));
    for (int i = 1; i <= c; ++i) {
        const Interval wi(w[static_cast<std::size_t>(i)]);
        if (i == 1) {
            const Interval v(ngl_exact(1, q, b));
            lo = lo + wi * v;
            hi = hi + wi * v;
            continue;
        }
        const Band band = ngl_band(i, q, b);
        lo = lo + wi * Interval::max(band.lower, zero);
        hi = hi + wi * Interval::min(band.upper, one);
    }
    const Interval om(omega(c, Q));
    return {lo * om, hi * om};
}

Verdict BoundSheet::overall() const
{
    Verdict v = combine(band_verdict, combine(harmonic_verdict, thm_verdict));
    for (const auto& [r, s] : sandwich_by_r)
        v = combine(v, s);
    return v;
}

BoundSheet bound_sheet(int c, std::uint64_t q, unsigned b)
{
    BoundSheet s{c, q, b, {}, {}, 0, std::nullopt, Verdict::Holds, std::nullopt, std::nullopt,
                 Verdict::Holds, 0, std::nullopt, Verdict::Holds};
    for (int r = c / 2 + 1; r <= c; ++r) {
        s.exact_by_r[r] = quokka_pc_r(c, q, b, r);
        s.sandwich_by_r[r] = quokka_pc_r_sandwich(c, q, b, r);
    }
    s.exact_total = ngl_exact(c, q, b);
    s.exact_m = thm_pc_m_exact(c, q, b);
    if (c >= 2) {
        s.band = ngl_band(c, q, b);
        s.band_verdict = combine(check_less(s.band->lower, s.exact_total),
                                 check_less_equal(s.exact_total, s.band->upper));
        s.harmonic = harmonic_tail(c);
        s.harmonic_interval = harmonic_band(c);
        // The harmonic lemma is stated with non-strict inequalities.
        s.harmonic_verdict = combine(check_less_equal(-*s.harmonic, -s.harmonic_interval->lower),
                                     check_less_equal(*s.harmonic, s.harmonic_interval->upper));
    }
    if (c >= 2 && b >= 2) {
        s.thm_bound = thm_pc_m_bound(c, q, b);
        s.thm_verdict = check_less(*s.thm_bound, s.exact_m);
    }
    return s;
}

} // namespace nicensus
