#ifndef NICENSUS_ESTIMATE_HPP
#define NICENSUS_ESTIMATE_HPP

#include "nicensus/census.hpp"
#include "nicensus/matrix.hpp"
#include "nicensus/numeric.hpp"
#include "nicensus/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nicensus {

/// Two-sided 99% normal quantile.
inline constexpr double z99 = 2.5758293035489004;

/// Largest sample count monte_carlo accepts.
inline constexpr std::uint64_t max_samples = std::uint64_t{1} << 36;

struct WilsonInterval {
    double low;
    double high;
};

/// Wilson score interval; pinned to 0 or 1 when hits is 0 or n.
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t n, double z = z99);

enum class SampleTarget { M, GL };

struct SampleConfig {
    std::uint64_t seed = 0;
    std::uint64_t n = 1;
    unsigned streams = 0; // worker threads; 0 means all cores
    SampleTarget target = SampleTarget::M;
};

/// Uniform on M(d, q).
Mat sample_matrix(int d, const Field& field, CounterRng& rng);
/// Uniform on GL(d, q) by rejection.
Mat sample_gl(int d, const Field& field, CounterRng& rng);

enum class BoundDirection { Lower, Upper };

struct NamedBound {
    std::string name;
    BoundDirection direction;
    Interval value;
    bool strict;
    Verdict verdict = Verdict::Inconclusive;
};

struct ProportionReport {
    std::string instance;
    std::uint64_t n = 0;
    std::uint64_t hits = 0;
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::optional<Rational> exact;
    /// Where the exact value came from: "closed-form" or "exhaustive".
    std::string exact_source;
    /// Exhaustive proportion, kept separately when it was also computed.
    std::optional<Rational> exhaustive;
    std::vector<NamedBound> bounds;

    bool exact_in_interval() const;
    /// False only when both values exist and differ.
    bool exact_matches_exhaustive() const { return !exact || !exhaustive || *exact == *exhaustive; }
    Verdict overall() const;
};

using Predicate = std::function<bool(const Mat&)>;

/// Samples cfg.n matrices; sample j is drawn from CounterRng(cfg.seed, j), so
/// the result does not depend on cfg.streams. Throws BudgetExceeded when n is
/// above max_samples.
ProportionReport monte_carlo(const Predicate& predicate, int d, const Field& field, const SampleConfig& cfg);

/// As above, attaching an exact value (a closed form when the spec has one,
/// otherwise exhaustive counting within the budget) and, for
/// pc-large-degree(b), the theory bounds for the instance.
ProportionReport monte_carlo(const NISubsetSpec& spec, int d, const Field& field, const SampleConfig& cfg,
                             std::uint64_t budget = std::uint64_t{1} << 24);

/// Sets each bound's verdict: exact values decide definitively, samples can
/// only show a violation (interval disjoint from the bound on the wrong side).
void judge_bounds(ProportionReport& report);

struct PcInstance {
    int c;
    std::uint64_t q;
    unsigned b;
};

/// For each (c, q, b): sampled proportion of N(c, q, b) in M(c, q^b) next
/// to the assembled exact value, the exhaustive count when M(c, q^b) fits
/// the budget, the theorem bound (b, c >= 2) and the weighted GL band.
std::vector<ProportionReport> compare(const std::vector<PcInstance>& instances, const SampleConfig& cfg,
                                      std::uint64_t budget = std::uint64_t{1} << 24);

} // namespace nicensus

#endif
