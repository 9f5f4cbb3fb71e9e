#ifndef NICENSUS_QUOKKA_HPP
#define NICENSUS_QUOKKA_HPP

#include "nicensus/numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace nicensus {

/// A partition of c, parts in descending order; indexes a conjugacy class
/// of S_c and the matching class of maximal tori of GL(c, q).
struct CycleType {
    std::vector<int> parts;

    int size() const noexcept;
    std::map<int, int> multiplicities() const;
    bool has_part(int r) const noexcept;
    /// 1 / prod_j (j^m_j * m_j!)
    Rational class_proportion() const;
};

struct WeightedCycleType {
    CycleType type;
    Rational proportion;
};

/// All partitions of c (reverse lexicographic), with class proportions.
std::vector<WeightedCycleType> cycle_types(int c);

/// Proportion of S_c containing an r-cycle, c/2 < r <= c. Throws RangeError
/// outside that window, where parts may repeat.
Rational r_cycle_proportion(int c, int r);

/// |Irr_m(q)| with the polynomial t removed when m = 1: t never divides the
/// characteristic polynomial of an invertible matrix.
Integer irr_count_excluding_t(int m, const Integer& q);

/// The class sum over S_c with torus proportion br/(q^{br}-1) on classes with
/// an r-part and 0 elsewhere; equals |N(c,q,b;f)| / |GL(c,q^b)| for one
/// f of degree br.
Rational quokka_pc_single(int c, std::uint64_t q, unsigned b, int r);

/// b * |Irr_br(q) \ {t}| / (q^{br} - 1), the proportion of GL(c, q^b) whose
/// blow-up is primary cyclic for some f of degree br.
Rational quokka_pc_r(int c, std::uint64_t q, unsigned b, int r);

/// Exhaustive counterpart of quokka_pc_single: for every f in Irr_br(q)
/// other than t, the number of X in GL(c, q^b) whose blow-up is f-primary
/// cyclic. Throws BudgetExceeded when |M(c, q^b)| is over budget.
struct PcSingleCount {
    std::vector<std::uint32_t> f; // encodings over F_q, low degree first
    Integer count;
    Integer gl;

    Rational proportion() const { return ratio(count, gl); }
};

std::vector<PcSingleCount> pc_single_exhaustive(int c, std::uint64_t q, unsigned b, int r,
                                                std::uint64_t budget = std::uint64_t{1} << 24,
                                                unsigned threads = 0);

/// (1/r)(1 - 2 q^{-br/2}) < quokka_pc_r <= 1/r.
Verdict quokka_pc_r_sandwich(int c, std::uint64_t q, unsigned b, int r);

/// Sum of quokka_pc_r over floor(c/2) < r <= c.
Rational ngl_exact(int c, std::uint64_t q, unsigned b);

struct Band {
    Interval lower;
    Interval upper;
};

/// Sum of 1/r over floor(c/2) < r <= c.
Rational harmonic_tail(int c);
/// [log 2 - 1/(c+1), log 2 + 1/c]; c >= 2.
Band harmonic_band(int c);
/// (log 2 - 1/(c+1) - 2 q^{-bc/4}, log 2 + 1/c]; c >= 2.
Band ngl_band(int c, std::uint64_t q, unsigned b);

/// log 2 - (log 2 + 3)/c - 2(1 - 1/c) q^{-b/2}; b, c >= 2.
Interval thm_pc_m_bound(int c, std::uint64_t q, unsigned b);
/// |N(c,q,b)| / |M(c,q^b)| assembled from the flag sum over F_{q^b} with the
/// per-dimension values ngl_exact(i, q, b) and an empty 0th term.
Rational thm_pc_m_exact(int c, std::uint64_t q, unsigned b);
/// The flag sum with each per-dimension value replaced by its GL band
/// (clamped to [0, 1]); the 1-dimensional term is exact.
Band weighted_pc_m_band(int c, std::uint64_t q, unsigned b);

struct BoundSheet {
    int c;
    std::uint64_t q;
    unsigned b;
    std::map<int, Rational> exact_by_r;
    std::map<int, Verdict> sandwich_by_r;
    Rational exact_total;
    std::optional<Band> band;
    Verdict band_verdict = Verdict::Holds;
    std::optional<Rational> harmonic;
    std::optional<Band> harmonic_interval;
    Verdict harmonic_verdict = Verdict::Holds;
    Rational exact_m;
    std::optional<Interval> thm_bound;
    Verdict thm_verdict = Verdict::Holds;

    Verdict overall() const;
};

BoundSheet bound_sheet(int c, std::uint64_t q, unsigned b);

} // namespace nicensus

#endif
