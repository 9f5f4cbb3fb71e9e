#ifndef NICENSUS_CENSUS_HPP
#define NICENSUS_CENSUS_HPP

#include "nicensus/matrix.hpp"
#include "nicensus/numeric.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nicensus {

/// prod_{k=1}^{j} (1 - q^{-k}); omega(0, q) = 1.
Rational omega(int j, const Integer& q);

/// Number of i-dimensional subspaces of F_q^d. Throws IndexOutOfRange
/// unless 0 <= i <= d.
Integer gaussian_binomial(int d, int i, const Integer& q);

/// |M(d, q)| = q^{d^2} when it fits the budget; throws BudgetExceeded otherwise.
std::uint64_t matrix_count(int d, std::uint64_t q, std::uint64_t budget);

/// A conjugation-closed subset of M(d, q) described by a membership test.
///
/// closed_form_ni, when present, gives |N_i| / |GL(i, q)| independently of d.
/// contains_nilpotents is left empty for sets where the answer depends on d.
struct NISubsetSpec {
    std::string name;
    std::function<bool(const Mat&)> member;
    std::function<Rational(int i, const Integer& q)> closed_form_ni;
    std::optional<bool> contains_nilpotents;
};

/// Built-in sets by name: "all", "invertible", "nilpotent-complement",
/// "primary-cyclic-some-f-not-t", "pc-large-degree(b)", "separable",
/// "has-eigenvalue(a)" (a an element encoding), "unipotent". The field is
/// the one the matrices live over; pc-large-degree(b) reads it as F_{q^b}.
/// Throws InvalidArgument for unknown names or bad arguments.
NISubsetSpec make_spec(std::string_view name, const Field& field);

/// Every built-in name instantiated for the field: all argument values of
/// has-eigenvalue and every admissible b of pc-large-degree.
std::vector<std::string> builtin_spec_instances(const Field& field);

struct CensusOptions {
    std::uint64_t budget = std::uint64_t{1} << 24;
    unsigned threads = 0;
    /// Also count N_i against a second, conjugated flag.
    bool flag_check = false;
};

struct FlagLevel {
    int i;
    Integer n_i;    // |N_i|, counted over GL(i, q) on the standard flag
    Integer gl_i;   // |GL(i, q)|
    Integer n_of_i; // |N(i)| = #{X in N : dim V_inv(X) = i}
    Integer lemma_prediction; // [d i]_q q^{(d-i)(d-1)} |N_i|
    std::optional<Integer> n_i_conjugated_flag;

    Rational proportion() const { return ratio(n_i, gl_i); }
};

struct FlagCensus {
    std::string spec;
    std::string field;
    int d;
    std::uint64_t q;
    Integer n_total; // |N|
    Integer gl_d;
    Integer m_d;
    std::vector<FlagLevel> per_i;
    Rational lhs; // |N| / |GL(d, q)|
    Rational rhs; // the flag sum

    bool identity_holds() const { return lhs == rhs; }
    bool partition_holds() const;
    bool lemma_holds() const;
    /// True when no conjugated-flag counts were taken.
    bool flag_independent() const;
    /// N_0 is empty exactly when N has no nilpotents, else a single element.
    bool zeroth_level_consistent(bool contains_nilpotents) const;
    Rational m_proportion() const { return ratio(n_total, m_d); }
    bool all_hold() const;
};

/// Exhaustive flag census. Throws BudgetExceeded, or NIViolation when some
/// enumerated X has member(X) != member(X_inv + 0).
FlagCensus census_exact(const NISubsetSpec& spec, const Field& field, int d,
                        const CensusOptions& options = {});

struct CorollarySums {
    Rational full_lhs;      // sum_{i=0}^{d} q^{-(d-i)} / omega(d-i, q)
    Rational full_rhs;      // 1 / omega(d, q)
    Rational truncated_lhs; // same sum from i = 1
    Rational truncated_rhs; // (1 - q^{-d}) / omega(d, q)

    bool holds() const { return full_lhs == full_rhs && truncated_lhs == truncated_rhs; }
};

CorollarySums corollary_sum_check(int d, const Integer& q);

/// a - (a+k) d q^{-d}. Throws NonPositiveConstants unless a, k > 0.
Rational transfer_bound_exp(const Rational& a, const Rational& k, int d, const Integer& q);
/// a - (a+k) (2q/3)^{-d}, the weaker companion of transfer_bound_exp.
Rational transfer_bound_exp_relaxed(const Rational& a, const Rational& k, int d, const Integer& q);

struct LinearTransfer {
    Rational main;    // (a - 3k/d)(1 - q^{-d})
    Rational relaxed; // a - (a + 3k)/d
};

LinearTransfer transfer_bound_linear(const Rational& a, const Rational& k, int d, const Integer& q);

/// Smallest k making the per-level hypotheses true for a given a, and the
/// resulting bounds next to the actual proportion |N| / |M(d, q)|. The bounds
/// are evaluated at that k even when it is 0, as a limit.
struct TransferFit {
    Rational a;
    Rational k_exp;
    Rational k_linear;
    Rational exp_main;
    Rational exp_relaxed;
    LinearTransfer linear;
    Rational actual;

    bool holds() const;
};

TransferFit fit_transfer(const FlagCensus& census, const Rational& a);

/// d * sum_{i=1}^{d} q^i / i against 3 q^d.
struct SumBound {
    Rational lhs;
    Rational rhs;
    bool holds() const { return lhs < rhs; }
};

SumBound sum_bound_check(int d, const Integer& q);

/// Exhaustive count of nilpotent matrices in M(n, q).
Integer count_nilpotent(int n, const Field& field, std::uint64_t budget = std::uint64_t{1} << 24);

struct NIWitness {
    /// "conjugation", "nilpotent-part", or "nilpotent-flag".
    std::string condition;
    Mat x;
    Mat other;
    std::optional<Mat> conjugator;
    bool member_x;
    bool member_other;
};

struct NIReport {
    std::string spec;
    std::string field;
    int d;
    bool exhaustive;
    std::uint64_t matrices_checked = 0;
    std::uint64_t conjugations_checked = 0;
    std::uint64_t violation_count = 0;
    std::vector<NIWitness> witnesses; // the first few violations

    bool passed() const { return violation_count == 0; }
};

/// Checks member(X) = member(g^-1 X g) and member(X) = member(X_inv + 0).
/// Exhaustive over M(d,q) x GL(d,q) when that fits the budget; otherwise
/// `trials` random (X, g) pairs drawn from `seed`.
NIReport ni_verify(const NISubsetSpec& spec, const Field& field, int d, std::uint64_t trials,
                   std::uint64_t seed = 0, const CensusOptions& options = {});

} // namespace nicensus

#endif
