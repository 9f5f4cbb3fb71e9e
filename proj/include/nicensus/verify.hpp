#ifndef NICENSUS_VERIFY_HPP
#define NICENSUS_VERIFY_HPP

#include "nicensus/census.hpp"
#include "nicensus/numeric.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nicensus {

struct CheckResult {
    std::string label;
    Verdict verdict;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    void add(std::string label, Verdict v, std::string detail = {});
    void add(std::string label, bool ok, std::string detail = {}) { add(std::move(label), verdict_of(ok), std::move(detail)); }
    Verdict overall() const;
};

struct SuiteOptions {
    CensusOptions census;
    std::uint64_t samples = 200000;
    std::uint64_t seed = 42;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite. Throws UnknownSuite for names outside suite_names().
SuiteReport run_suite(std::string_view name, const SuiteOptions& options = {});

/// Over all g in GL(d, q): charpoly(g) = charpoly(s) for the semisimple part s.
struct JordanAudit {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
};

JordanAudit jordan_charpoly_audit(int d, const Field& field, std::uint64_t budget = std::uint64_t{1} << 24);

/// Every (X, f) with X in M(c, Q) and f an irreducible factor of the
/// blown-up charpoly: does the direct primary cyclicity test agree with
/// the Galois conditions?
struct PropositionAudit {
    std::uint64_t matrices = 0;
    std::uint64_t pairs = 0;
    std::uint64_t disagreements = 0;
};

PropositionAudit proposition_audit(int c, std::uint64_t q, unsigned b,
                                   std::uint64_t budget = std::uint64_t{1} << 24, unsigned threads = 0);

} // namespace nicensus

#endif
