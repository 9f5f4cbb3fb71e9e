#include "nicensus/verify.hpp"

#include "nicensus/embed.hpp"
#include "nicensus/error.hpp"
#include "nicensus/estimate.hpp"
#include "nicensus/galois.hpp"
#include "nicensus/parallel.hpp"
#include "nicensus/quokka.hpp"
#include "nicensus/tower.hpp"

namespace nicensus {

void SuiteReport::add(std::string label, Verdict v, std::string detail)
{
    checks.push_back({std::move(label), v, std::move(detail)});
}

Verdict SuiteReport::overall() const
{
    Verdict v = Verdict::Holds;
    for (const auto& c : checks)
        v = combine(v, c.verdict);
    return v;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"flag-sum", "omega-sums", "level-counts", "quokka-closed-forms",
                                                "blow-up-criterion", "bounds", "large-degree"};
    return names;
}

JordanAudit jordan_charpoly_audit(int d, const Field& field, std::uint64_t budget)
{
    const std::uint64_t total = matrix_count(d, field->size(), budget);
    JordanAudit a;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const Mat g = Mat::from_index(field, d, idx);
        if (!is_invertible(g))
            continue;
        ++a.checked;
        const JordanParts parts = jordan_multiplicative(g);
        if (!(charpoly(g) == charpoly(parts.s)))
            ++a.mismatches;
    }
    return a;
}

PropositionAudit proposition_audit(int c, std::uint64_t q, unsigned b, std::uint64_t budget, unsigned threads)
{
    Tower tower = TowerCtx::create(FieldCtx::of_order(q), b);
    const Field& ext = tower->ext();
    const std::uint64_t total = matrix_count(c, ext->size(), budget);
    return parallel_reduce(
        total, threads, PropositionAudit{},
        [&](std::uint64_t begin, std::uint64_t end, PropositionAudit& acc) {
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                const Mat x = Mat::from_index(ext, c, idx);
                ++acc.matrices;
                for (const auto& f : factorize(charpoly(blow_up(x, *tower))).factors) {
                    ++acc.pairs;
                    if (!proposition_check(x, f.poly, *tower).agree())
                        ++acc.disagreements;
                }
            }
        },
        [](PropositionAudit& acc, const PropositionAudit& part) {
            acc.matrices += part.matrices;
            acc.pairs += part.pairs;
            acc.disagreements += part.disagreements;
        });
}

namespace {

using Instance = std::pair<int, std::uint64_t>;
const std::vector<Instance> census_instances{{2, 2}, {2, 3}, {3, 2}};

std::string inst_label(int d, std::uint64_t q)
{
    return "(d,q)=(" + std::to_string(d) + "," + std::to_string(q) + ")";
}

void flag_sum(SuiteReport& rep, const SuiteOptions& opt)
{
    for (auto [d, q] : census_instances) {
        const Field field = FieldCtx::of_order(q);
        for (const auto& name : builtin_spec_instances(field)) {
            const FlagCensus c = census_exact(make_spec(name, field), field, d, opt.census);
            rep.add("flag sum " + name + " " + inst_label(d, q), c.identity_holds(),
                    "lhs=" + to_string(c.lhs) + " rhs=" + to_string(c.rhs));
            const Rational scaled = omega(d, Integer(static_cast<unsigned long>(q))) * c.lhs;
            rep.add("omega*lhs = |N|/|M| " + name + " " + inst_label(d, q), scaled == c.m_proportion());
        }
    }
    const Field f2 = FieldCtx::of_order(2);
    const FlagCensus pc = census_exact(make_spec("primary-cyclic-some-f-not-t", f2), f2, 2, opt.census);
    rep.add("anchor |N| = 11 on M(2,2)", pc.n_total == 11, "|N|=" + pc.n_total.get_str());
    rep.add("anchor lhs = 11/6", pc.lhs == Rational(11, 6), to_string(pc.lhs));
    rep.add("anchor |N_2|/|GL(2,2)| = 5/6", pc.per_i[2].proportion() == Rational(5, 6),
            to_string(pc.per_i[2].proportion()));
    for (std::uint64_t q : {2u, 3u}) {
        const Field field = FieldCtx::of_order(q);
        for (const auto& name : builtin_spec_instances(field)) {
            const NIReport r = ni_verify(make_spec(name, field), field, 2, 1000, opt.seed, opt.census);
            rep.add("NI audit " + name + " on M(2," + std::to_string(q) + ")", r.passed() && r.exhaustive,
                    std::to_string(r.conjugations_checked) + " conjugations, " + std::to_string(r.violation_count) +
                        " violations");
        }
    }
}

void omega_sums(SuiteReport& rep)
{
    for (unsigned long q : {2ul, 3ul, 4ul, 5ul, 7ul})
        for (int d = 0; d <= 8; ++d) {
            const CorollarySums s = corollary_sum_check(d, Integer(q));
            rep.add("omega sums d=" + std::to_string(d) + " q=" + std::to_string(q), s.holds(),
                    "full " + to_string(s.full_lhs) + " truncated " + to_string(s.truncated_lhs));
        }
    for (unsigned long q : {2ul, 3ul, 4ul, 5ul})
        for (int d = 1; d <= 12; ++d) {
            const SumBound s = sum_bound_check(d, Integer(q));
            rep.add("d*sum q^i/i < 3q^d d=" + std::to_string(d) + " q=" + std::to_string(q), s.holds(),
                    to_string(s.lhs) + " < " + to_string(s.rhs));
        }
}

void level_counts(SuiteReport& rep, const SuiteOptions& opt)
{
    CensusOptions co = opt.census;
    co.flag_check = true;
    for (auto [d, q] : census_instances) {
        const Field field = FieldCtx::of_order(q);
        for (const auto& name : builtin_spec_instances(field)) {
            const NISubsetSpec spec = make_spec(name, field);
            const FlagCensus c = census_exact(spec, field, d, co);
            rep.add("|N(i)| = [d i]_q q^{(d-i)(d-1)} |N_i| " + name + " " + inst_label(d, q), c.lemma_holds());
            rep.add("N(i) partition N " + name + " " + inst_label(d, q), c.partition_holds());
            rep.add("flag independence " + name + " " + inst_label(d, q), c.flag_independent());
            const bool nil = spec.member(Mat::zero(field, d));
            rep.add("N_0 matches nilpotent content " + name + " " + inst_label(d, q), c.zeroth_level_consistent(nil));
        }
    }
    for (std::uint64_t q : {2u, 3u})
        for (int n = 1; n <= 3; ++n) {
            const Integer count = count_nilpotent(n, FieldCtx::of_order(q), opt.census.budget);
            const Integer want = ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(n * n - n));
            rep.add("nilpotent count q^{n^2-n} n=" + std::to_string(n) + " q=" + std::to_string(q), count == want,
                    count.get_str() + " vs " + want.get_str());
        }
}

void quokka_closed_forms(SuiteReport& rep, const SuiteOptions& opt)
{
    struct Case {
        int c;
        unsigned b;
        std::uint64_t q;
        int r;
    };
    for (const Case k : {Case{2, 1, 2, 2}, Case{2, 1, 3, 2}, Case{1, 2, 2, 1}, Case{2, 2, 2, 2}, Case{3, 1, 2, 2}}) {
        const Rational closed = quokka_pc_single(k.c, k.q, k.b, k.r);
        bool ok = true;
        std::string detail = "closed form " + to_string(closed) + ";";
        for (const auto& cnt : pc_single_exhaustive(k.c, k.q, k.b, k.r, opt.census.budget, opt.census.threads)) {
            ok = ok && cnt.proportion() == closed;
            detail += " " + cnt.count.get_str() + "/" + cnt.gl.get_str();
        }
        rep.add("b/(q^{br}-1) vs GL(" + std::to_string(k.c) + "," + std::to_string(k.q) + "^" + std::to_string(k.b) +
                    ") r=" + std::to_string(k.r),
                ok, detail);
    }
    for (int c = 1; c <= 12; ++c) {
        Rational sum = 0;
        for (const auto& w : cycle_types(c))
            sum += w.proportion;
        rep.add("class proportions sum to 1, c=" + std::to_string(c), sum == 1);
        for (int r = c / 2 + 1; r <= c; ++r)
            rep.add("r-cycle proportion 1/r, c=" + std::to_string(c) + " r=" + std::to_string(r),
                    r_cycle_proportion(c, r) == Rational(1, r));
    }
    bool single_ok = true;
    for (int c = 1; c <= 10; ++c)
        for (unsigned b = 1; b <= 3; ++b)
            for (std::uint64_t q : {2u, 3u})
                for (int r = c / 2 + 1; r <= c; ++r) {
                    const Integer Q = ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(b) * r);
                    single_ok = single_ok && quokka_pc_single(c, q, b, r) == ratio(Integer(b), Q - 1);
                    if (c <= 6)
                        single_ok = single_ok &&
                                    quokka_pc_single(c, q, b, r) *
                                            irr_count_excluding_t(static_cast<int>(b) * r,
                                                                  Integer(static_cast<unsigned long>(q))) ==
                                        quokka_pc_r(c, q, b, r);
                }
    rep.add("class sum reproduces b/(q^{br}-1) and sums to quokka_pc_r", single_ok);

    const Field f4 = FieldCtx::of_order(4);
    const NISubsetSpec pc2 = make_spec("pc-large-degree(2)", f4);
    const FlagCensus c = census_exact(pc2, f4, 2, opt.census);
    for (const auto& l : c.per_i)
        rep.add("per-dimension closed form i=" + std::to_string(l.i) + " over F_4/F_2",
                l.proportion() == pc2.closed_form_ni(l.i, 4),
                to_string(l.proportion()) + " vs " + to_string(pc2.closed_form_ni(l.i, 4)));

    for (auto [d, q] : std::vector<Instance>{{2, 2}, {2, 3}, {3, 2}}) {
        const JordanAudit a = jordan_charpoly_audit(d, FieldCtx::of_order(q), opt.census.budget);
        rep.add("c_g = c_s over GL(" + std::to_string(d) + "," + std::to_string(q) + ")", a.mismatches == 0,
                std::to_string(a.checked) + " elements");
    }
}

void blow_up_criterion(SuiteReport& rep, const SuiteOptions& opt)
{
    for (int c : {1, 2}) {
        const PropositionAudit a = proposition_audit(c, 2, 2, opt.census.budget, opt.census.threads);
        rep.add("blow-up criterion on M(" + std::to_string(c) + ",4)", a.disagreements == 0 && a.pairs > 0,
                std::to_string(a.pairs) + " (X, f) pairs, " + std::to_string(a.disagreements) + " disagreements");
    }
    struct Case {
        int r;
        unsigned b;
        std::uint64_t q;
    };
    for (const Case k : {Case{1, 2, 2}, Case{2, 2, 2}, Case{1, 3, 2}, Case{2, 2, 3}}) {
        const RegularOrbitReport r = regular_orbit_report(k.r, k.b, k.q, opt.census.budget);
        const std::string form = r.supports_b_form() ? (r.supports_r_form() ? "both forms" : "b*|Irr_br(q)|")
                                                     : (r.supports_r_form() ? "r*|Irr_br(q)|" : "neither form");
        rep.add("regular orbits (r,b,q)=(" + std::to_string(k.r) + "," + std::to_string(k.b) + "," +
                    std::to_string(k.q) + ")",
                r.supports_b_form(),
                "enumerated " + r.enumerated.get_str() + ", b*Irr " + r.b_times_irr.get_str() + ", r*Irr " +
                    r.r_times_irr.get_str() + "; supports " + form);
    }
}

void bounds(SuiteReport& rep, const SuiteOptions& opt)
{
    Verdict sandwich = Verdict::Holds;
    Verdict gl_band = Verdict::Holds;
    Verdict harmonic = Verdict::Holds;
    std::string first_failure;
    for (std::uint64_t q : {2u, 3u, 4u, 5u})
        for (unsigned b = 1; b <= 4; ++b)
            for (int c = 1; c <= 12; ++c) {
                const BoundSheet s = bound_sheet(c, q, b);
                for (const auto& [r, v] : s.sandwich_by_r) {
                    sandwich = combine(sandwich, v);
                    if (v != Verdict::Holds && first_failure.empty())
                        first_failure = "sandwich c=" + std::to_string(c) + " q=" + std::to_string(q) +
                                        " b=" + std::to_string(b) + " r=" + std::to_string(r);
                }
                gl_band = combine(gl_band, s.band_verdict);
                harmonic = combine(harmonic, s.harmonic_verdict);
            }
    rep.add("(1/r)(1-2q^{-br/2}) < b|Irr_br(q)|/(q^{br}-1) <= 1/r", sandwich, first_failure);
    rep.add("harmonic band, c in [2,12]", harmonic);
    rep.add("GL band for exact proportions, c in [2,12], b in [1,4], q in {2,3,4,5}", gl_band);

    const Rational a(5, 6);
    for (int d : {2, 3}) {
        const Field f2 = FieldCtx::of_order(2);
        const FlagCensus c = census_exact(make_spec("primary-cyclic-some-f-not-t", f2), f2, d, opt.census);
        const TransferFit fit = fit_transfer(c, a);
        rep.add("transfer bounds, a=5/6, d=" + std::to_string(d) + ", q=2", fit.holds(),
                "actual " + to_string(fit.actual) + ", linear " + to_string(fit.linear.main) + ", exp " +
                    to_string(fit.exp_main) + " (k_lin " + to_string(fit.k_linear) + ", k_exp " +
                    to_string(fit.k_exp) + ")");
    }
}

void large_degree(SuiteReport& rep, const SuiteOptions& opt)
{
    SampleConfig cfg;
    cfg.seed = opt.seed;
    cfg.n = opt.samples;
    cfg.streams = opt.census.threads;
    const auto reports = compare({{2, 2, 2}, {8, 2, 2}, {6, 3, 2}}, cfg, opt.census.budget);
    const ProportionReport& small = reports[0];
    rep.add("assembled value equals exhaustion on M(2,4)", small.exhaustive && *small.exhaustive == *small.exact,
            "exact " + to_string(*small.exact) + ", exhaustive " +
                (small.exhaustive ? to_string(*small.exhaustive) : std::string("n/a")));
    for (const auto& r : reports) {
        rep.add("99% interval covers exact value " + r.instance, r.exact_in_interval() ? Verdict::Holds
                                                                                        : Verdict::Inconclusive,
                "estimate " + std::to_string(r.estimate) + " in [" + std::to_string(r.ci_low) + ", " +
                    std::to_string(r.ci_high) + "], exact " + std::to_string(r.exact->get_d()));
        for (const auto& b : r.bounds)
            rep.add(b.name + " " + r.instance, b.verdict, "bound ~ " + std::to_string(b.value.mid_double()));
    }
    const Interval big = thm_pc_m_bound(100, 2, 8);
    rep.add("bound at (100,2,8) ~ 0.5324", big.lo_double() > 0.5324 && big.hi_double() < 0.5325,
            big.lo_string(8));
    for (unsigned b : {2u, 3u}) {
        const Rational n1 = ngl_exact(1, 2, b);
        rep.add("1-dimensional level is b|Irr_b(q)|/(q^b-1), not 1, for q=2 b=" + std::to_string(b), n1 < 1,
                to_string(n1));
    }
}

} // namespace

SuiteReport run_suite(std::string_view name, const SuiteOptions& options)
{
    SuiteReport rep;
    rep.suite = std::string(name);
    if (name == "flag-sum")
        flag_sum(rep, options);
    else if (name == "omega-sums")
        omega_sums(rep);
    else if (name == "level-counts")
        level_counts(rep, options);
    else if (name == "quokka-closed-forms")
        quokka_closed_forms(rep, options);
    else if (name == "blow-up-criterion")
        blow_up_criterion(rep, options);
    else if (name == "bounds")
        bounds(rep, options);
    else if (name == "large-degree")
        large_degree(rep, options);
    else
        throw Error(Errc::UnknownSuite, "unknown suite '" + std::string(name) + "'");
    return rep;
}

} // namespace nicensus
