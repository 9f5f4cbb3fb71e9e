#include "nicensus/estimate.hpp"

#include "nicensus/embed.hpp"
#include "nicensus/error.hpp"
#include "nicensus/parallel.hpp"
#include "nicensus/quokka.hpp"
#include "nicensus/tower.hpp"

#include <cmath>

namespace nicensus {

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t n, double z)
{
    if (n == 0)
        throw Error(Errc::RangeError, "Wilson interval needs n >= 1");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1 + z2 / nn;
    const double center = (p + z2 / (2 * nn)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
    WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (hits == 0)
        w.low = 0;
    if (hits == n)
        w.high = 1;
    w.low = std::min(w.low, p);
    w.high = std::max(w.high, p);
    return w;
}

Mat sample_matrix(int d, const Field& field, CounterRng& rng)
{
    Mat x(field, d, d);
    const std::uint64_t q = field->size();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            x(i, j) = Elt{static_cast<std::uint32_t>(rng.below(q))};
    return x;
}

Mat sample_gl(int d, const Field& field, CounterRng& rng)
{
    for (;;) {
        Mat x = sample_matrix(d, field, rng);
        if (is_invertible(x))
            return x;
    }
}

bool ProportionReport::exact_in_interval() const
{
    if (!exact)
        return true;
    const double v = exact->get_d();
    return ci_low <= v && v <= ci_high;
}

Verdict ProportionReport::overall() const
{
    Verdict v = Verdict::Holds;
    for (const auto& b : bounds)
        v = combine(v, b.verdict);
    return v;
}

ProportionReport monte_carlo(const Predicate& predicate, int d, const Field& field, const SampleConfig& cfg)
{
    if (cfg.n < 1)
        throw Error(Errc::RangeError, "monte_carlo needs n >= 1");
    if (cfg.n > max_samples)
        throw Error(Errc::BudgetExceeded, "sample count " + std::to_string(cfg.n) + " exceeds the cap of " +
                                              std::to_string(max_samples));
    const bool gl = cfg.target == SampleTarget::GL;
    const std::uint64_t hits = parallel_reduce(
        cfg.n, cfg.streams, std::uint64_t{0},
        [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& acc) {
            for (std::uint64_t j = begin; j < end; ++j) {
                CounterRng rng(cfg.seed, j);
                const Mat x = gl ? sample_gl(d, field, rng) : sample_matrix(d, field, rng);
                if (predicate(x))
                    ++acc;
            }
        },
        [](std::uint64_t& acc, std::uint64_t part) { acc += part; });
    ProportionReport r;
    r.n = cfg.n;
    r.hits = hits;
    r.estimate = static_cast<double>(hits) / static_cast<double>(cfg.n);
    const WilsonInterval w = wilson_interval(hits, cfg.n);
    r.ci_low = w.low;
    r.ci_high = w.high;
    return r;
}

void judge_bounds(ProportionReport& report)
{
    const Rational ci_low(report.ci_low);
    const Rational ci_high(report.ci_high);
    for (auto& b : report.bounds) {
        if (report.exact) {
            const Rational& x = *report.exact;
            if (b.direction == BoundDirection::Lower)
                b.verdict = b.strict ? check_less(b.value, x) : check_less_equal(-x, -b.value);
            else
                b.verdict = b.strict ? check_less(x, b.value) : check_less_equal(x, b.value);
            continue;
        }
        if (b.direction == BoundDirection::Lower)
            b.verdict = b.value.above(ci_high) ? Verdict::Violated : Verdict::Inconclusive;
        else
            b.verdict = b.value.below(ci_low) ? Verdict::Violated : Verdict::Inconclusive;
    }
}

namespace {

std::optional<Rational> exhaustive_proportion(const Predicate& predicate, int d, const Field& field, bool gl,
                                              std::uint64_t budget, unsigned threads)
{
    const Integer total = ipow(Integer(static_cast<unsigned long>(field->size())), static_cast<unsigned long>(d) * d);
    if (total > Integer(static_cast<unsigned long>(budget)))
        return std::nullopt;
    struct Counts {
        std::uint64_t hits = 0;
        std::uint64_t seen = 0;
    };
    const Counts c = parallel_reduce(
        total.get_ui(), threads, Counts{},
        [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                const Mat x = Mat::from_index(field, d, idx);
                if (gl && !is_invertible(x))
                    continue;
                ++acc.seen;
                if (predicate(x))
                    ++acc.hits;
            }
        },
        [](Counts& acc, const Counts& part) {
            acc.hits += part.hits;
            acc.seen += part.seen;
        });
    Rational r(Integer(static_cast<unsigned long>(c.hits)), Integer(static_cast<unsigned long>(c.seen)));
    r.canonicalize();
    return r;
}

std::string field_label(const Field& field)
{
    return "F_" + std::to_string(field->size());
}

void attach_pc_bounds(ProportionReport& r, int c, std::uint64_t q, unsigned b, bool gl)
{
    if (gl) {
        if (c >= 2) {
            const Band band = ngl_band(c, q, b);
            r.bounds.push_back({"gl-band-lower", BoundDirection::Lower, band.lower, true});
            r.bounds.push_back({"gl-band-upper", BoundDirection::Upper, band.upper, false});
        }
        return;
    }
    if (c >= 2 && b >= 2)
        r.bounds.push_back({"theorem-lower", BoundDirection::Lower, thm_pc_m_bound(c, q, b), true});
    const Band band = weighted_pc_m_band(c, q, b);
    r.bounds.push_back({"weighted-band-lower", BoundDirection::Lower, band.lower, false});
    r.bounds.push_back({"weighted-band-upper", BoundDirection::Upper, band.upper, false});
}

} // namespace

ProportionReport monte_carlo(const NISubsetSpec& spec, int d, const Field& field, const SampleConfig& cfg,
                             std::uint64_t budget)
{
    ProportionReport r = monte_carlo(spec.member, d, field, cfg);
    const bool gl = cfg.target == SampleTarget::GL;
    r.instance = spec.name + " on " + (gl ? "GL(" : "M(") + std::to_string(d) + ", " + field_label(field) + ")";
    const Integer Q(static_cast<unsigned long>(field->size()));

    const std::string prefix = "pc-large-degree(";
    if (spec.name.rfind(prefix, 0) == 0) {
        const unsigned b = static_cast<unsigned>(std::stoul(spec.name.substr(prefix.size())));
        const std::uint64_t q = FieldCtx::create(field->p(), field->k() / b)->size();
        r.exact = gl ? ngl_exact(d, q, b) : thm_pc_m_exact(d, q, b);
        r.exact_source = "closed-form";
        attach_pc_bounds(r, d, q, b, gl);
    } else if (gl && spec.closed_form_ni) {
        r.exact = spec.closed_form_ni(d, Q);
        r.exact_source = "closed-form";
    }
    if (auto ex = exhaustive_proportion(spec.member, d, field, gl, budget, cfg.streams)) {
        r.exhaustive = ex;
        if (!r.exact) {
            r.exact = *ex;
            r.exact_source = "exhaustive";
        }
    }
    judge_bounds(r);
    return r;
}

std::vector<ProportionReport> compare(const std::vector<PcInstance>& instances, const SampleConfig& cfg,
                                      std::uint64_t budget)
{
    std::vector<ProportionReport> out;
    for (const auto& inst : instances) {
        Field base = FieldCtx::of_order(inst.q);
        Tower tower = TowerCtx::create(base, inst.b);
        const Field& ext = tower->ext();
        const Predicate member = [&tower](const Mat& x) { return pc_membership(x, *tower).member; };
        SampleConfig c = cfg;
        c.target = SampleTarget::M;
        ProportionReport r = monte_carlo(member, inst.c, ext, c);
        r.instance = "c=" + std::to_string(inst.c) + ",q=" + std::to_string(inst.q) + ",b=" + std::to_string(inst.b);
        r.exact = thm_pc_m_exact(inst.c, inst.q, inst.b);
        r.exact_source = "closed-form";
        r.exhaustive = exhaustive_proportion(member, inst.c, ext, false, budget, cfg.streams);
        attach_pc_bounds(r, inst.c, inst.q, inst.b, false);
        judge_bounds(r);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace nicensus
