#include "manifest.hpp"

#include "nicensus/census.hpp"
#include "nicensus/embed.hpp"
#include "nicensus/error.hpp"
#include "nicensus/estimate.hpp"
#include "nicensus/io.hpp"
#include "nicensus/quokka.hpp"
#include "nicensus/tower.hpp"
#include "nicensus/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace nicensus;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 2;
constexpr int exit_inconclusive = 3;
constexpr int exit_usage = 4;

int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::Holds:
        return exit_ok;
    case Verdict::Violated:
        return exit_violation;
    case Verdict::Inconclusive:
        return exit_inconclusive;
    }
    return exit_inconclusive;
}

std::uint64_t default_budget()
{
    if (const char* env = std::getenv("NICENSUS_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, std::string("NICENSUS_BUDGET is not an integer: ") + env);
        }
    }
    return default_enumeration_budget;
}

struct Globals {
    unsigned threads = 0;
    std::optional<std::uint64_t> budget;
    std::string json_path;
    std::string csv_path;

    std::uint64_t effective_budget() const { return budget ? *budget : default_budget(); }
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::InvalidArgument, "cannot write " + path);
    out << text;
}

int emit(const Globals& g, const RunManifest& manifest, const Json& result, Verdict verdict)
{
    Json doc{{"manifest", manifest.to_json(result)}, {"result", result}, {"verdict", to_string(verdict)}};
    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!g.json_path.empty())
        write_file(g.json_path, text);
    return exit_code(verdict);
}

std::string csv_field(std::string s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string version()
{
#ifdef NICENSUS_VERSION
    return NICENSUS_VERSION;
#else
    return "0.0.0";
#endif
}

Json census_json(const FlagCensus& c)
{
    Json levels = Json::array();
    for (const auto& l : c.per_i) {
        Json j{{"i", l.i},
               {"n_i", l.n_i.get_str()},
               {"gl_i", l.gl_i.get_str()},
               {"n_of_i", l.n_of_i.get_str()},
               {"lemma_prediction", l.lemma_prediction.get_str()},
               {"proportion", to_json(l.proportion())}};
        if (l.n_i_conjugated_flag)
            j["n_i_conjugated_flag"] = l.n_i_conjugated_flag->get_str();
        levels.push_back(std::move(j));
    }
    return Json{{"spec", c.spec},
                {"field", c.field},
                {"d", c.d},
                {"q", c.q},
                {"n_total", c.n_total.get_str()},
                {"gl_d", c.gl_d.get_str()},
                {"m_d", c.m_d.get_str()},
                {"per_i", std::move(levels)},
                {"lhs", to_json(c.lhs)},
                {"rhs", to_json(c.rhs)},
                {"m_proportion", to_json(c.m_proportion())},
                {"identity_holds", c.identity_holds()},
                {"partition_holds", c.partition_holds()},
                {"lemma_holds", c.lemma_holds()},
                {"flag_independent", c.flag_independent()}};
}

Json band_json(const Band& b)
{
    return Json{{"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}};
}

Json sheet_json(const BoundSheet& s)
{
    Json by_r = Json::array();
    for (const auto& [r, v] : s.exact_by_r)
        by_r.push_back(Json{{"r", r}, {"value", to_json(v)}, {"sandwich", to_string(s.sandwich_by_r.at(r))}});
    Json j{{"c", s.c}, {"q", s.q}, {"b", s.b}, {"exact_by_r", std::move(by_r)}, {"exact_total", to_json(s.exact_total)}};
    j["gl_band"] = s.band ? band_json(*s.band) : Json(nullptr);
    j["gl_band_verdict"] = to_string(s.band_verdict);
    j["harmonic_tail"] = s.harmonic ? to_json(*s.harmonic) : Json(nullptr);
    j["harmonic_band"] = s.harmonic_interval ? band_json(*s.harmonic_interval) : Json(nullptr);
    j["harmonic_verdict"] = to_string(s.harmonic_verdict);
    j["exact_in_m"] = to_json(s.exact_m);
    j["thm_bound"] = s.thm_bound ? to_json(*s.thm_bound) : Json(nullptr);
    j["thm_verdict"] = to_string(s.thm_verdict);
    return j;
}

Json report_json(const ProportionReport& r)
{
    Json bounds = Json::array();
    for (const auto& b : r.bounds)
        bounds.push_back(Json{{"name", b.name},
                              {"direction", b.direction == BoundDirection::Lower ? "lower" : "upper"},
                              {"strict", b.strict},
                              {"value", to_json(b.value)},
                              {"verdict", to_string(b.verdict)}});
    Json j{{"instance", r.instance}, {"n", r.n}, {"hits", r.hits}, {"estimate", r.estimate},
           {"ci_low", r.ci_low},     {"ci_high", r.ci_high}};
    j["exact"] = r.exact ? to_json(*r.exact) : Json(nullptr);
    j["exact_source"] = r.exact_source;
    j["exhaustive"] = r.exhaustive ? to_json(*r.exhaustive) : Json(nullptr);
    j["exact_in_interval"] = r.exact_in_interval();
    j["bounds"] = std::move(bounds);
    return j;
}

void write_report_csv(const std::string& path, const std::vector<ProportionReport>& reports)
{
    std::ostringstream out;
    out << "instance,n,estimate,ci_low,ci_high,exact_num,exact_den,bound,verdict\n";
    for (const auto& r : reports) {
        const std::string head = csv_field(r.instance) + "," + std::to_string(r.n) + "," +
                                 std::to_string(r.estimate) + "," + std::to_string(r.ci_low) + "," +
                                 std::to_string(r.ci_high) + "," +
                                 (r.exact ? r.exact->get_num().get_str() + "," + r.exact->get_den().get_str() : ",");
        if (r.bounds.empty())
            out << head << ",,\n";
        for (const auto& b : r.bounds)
            out << head << "," << csv_field(b.name) << "," << to_string(b.verdict) << "\n";
    }
    write_file(path, out.str());
}

Json split_json(const FittingSplit& s)
{
    return Json{{"dim_inv", s.dim_inv()},
                {"dim_nil", s.dim_nil()},
                {"inv_basis", s.dim_inv() ? to_json(s.inv_basis) : Json::array()},
                {"nil_basis", s.dim_nil() ? to_json(s.nil_basis) : Json::array()},
                {"x_inv", s.dim_inv() ? to_json(s.x_inv) : Json::array()},
                {"x_nil", s.dim_nil() ? to_json(s.x_nil) : Json::array()}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact and sampled proportions of nilpotent-independent matrix sets over finite fields"};
    app.require_subcommand(1);
    Globals g;

    auto add_common = [&g](CLI::App* sub) {
        sub->add_option("--threads", g.threads, "worker threads (0 = all cores); never changes results");
        sub->add_option("--budget", g.budget, "enumeration cap in matrices (default 2^24 or NICENSUS_BUDGET)");
        sub->add_option("--json", g.json_path, "also write the JSON report here");
    };

    std::string spec_name;
    int d = 2;
    std::uint64_t q = 2;
    std::optional<unsigned> b_opt;
    std::optional<int> r_opt;
    std::uint64_t n = 100000;
    std::uint64_t seed = 0;
    bool flag_check = false;
    bool table = false;
    std::string target = "M";
    std::string matrix_text;
    std::string tower_text;
    std::string suite;
    std::uint64_t samples = 200000;

    auto* census = app.add_subcommand("census", "exhaustive flag census of a built-in set");
    census->add_option("--spec", spec_name, "set name, e.g. primary-cyclic-some-f-not-t")->required();
    census->add_option("--d", d, "dimension")->required();
    census->add_option("--q", q, "field order")->required();
    census->add_flag("--flag-check", flag_check, "recount N_i against a conjugated flag");
    add_common(census);

    int c = 2;
    unsigned b = 1;
    auto* quokka = app.add_subcommand("quokka", "closed forms and bounds for N(c, q, b)");
    quokka->add_option("--c", c, "dimension over F_{q^b}")->required();
    quokka->add_option("--q", q, "base field order")->required();
    quokka->add_option("--b", b, "extension degree")->required();
    quokka->add_option("--r", r_opt, "report only this r");
    quokka->add_flag("--table", table, "print the per-r table as CSV instead of JSON");
    quokka->add_option("--csv", g.csv_path, "write the per-r table here");
    add_common(quokka);

    auto* estimate = app.add_subcommand("estimate", "Monte Carlo proportion with a 99% Wilson interval");
    estimate->add_option("--spec", spec_name, "set name")->required();
    estimate->add_option("--d", d, "dimension")->required();
    estimate->add_option("--q", q, "field order (the base field when --b is given)")->required();
    estimate->add_option("--b", b_opt, "sample over F_{q^b}; pc-large-degree takes this b");
    estimate->add_option("--n", n, "sample count");
    estimate->add_option("--seed", seed, "RNG seed");
    estimate->add_option("--target", target, "M or GL")->check(CLI::IsMember({"M", "GL"}));
    estimate->add_option("--csv", g.csv_path, "write a CSV row per bound here");
    add_common(estimate);

    auto* decompose = app.add_subcommand("decompose", "Fitting and primary decomposition of a matrix");
    decompose->add_option("matrix", matrix_text, "\"d FIELD : entries\" or a JSON matrix")->required();
    add_common(decompose);

    auto* pc_test = app.add_subcommand("pc-test", "large-degree primary cyclicity of a blown-up matrix");
    pc_test->add_option("matrix", matrix_text, "matrix over the extension field")->required();
    pc_test->add_option("--tower", tower_text, "tower descriptor Q/q, e.g. 4/2")->required();
    add_common(pc_test);

    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", suite, "suite name")->required();
    verify->add_option("--n", samples, "samples for statistical checks");
    verify->add_option("--seed", seed, "RNG seed")->default_val(42);
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        RunManifest m;
        m.version = version();
        const std::uint64_t budget = g.effective_budget();

        if (census->parsed()) {
            const Field field = FieldCtx::of_order(q);
            CensusOptions opt{budget, g.threads, flag_check};
            const FlagCensus fc = census_exact(make_spec(spec_name, field), field, d, opt);
            m.subcommand = "census";
            m.parameters = Json{{"spec", spec_name}, {"d", d}, {"q", q}, {"flag_check", flag_check}, {"budget", budget}};
            m.statement = "flag-sum-identity";
            return emit(g, m, census_json(fc), verdict_of(fc.all_hold()));
        }

        if (quokka->parsed()) {
            const BoundSheet s = bound_sheet(c, q, b);
            m.subcommand = "quokka";
            m.parameters = Json{{"c", c}, {"q", q}, {"b", b}};
            m.statement = "large-degree-primary-cyclic-proportion";
            Json result = sheet_json(s);
            if (r_opt) {
                m.parameters["r"] = *r_opt;
                result["single"] = to_json(quokka_pc_single(c, q, b, *r_opt));
                result["r_value"] = to_json(quokka_pc_r(c, q, b, *r_opt));
            }
            std::ostringstream csv;
            csv << "r,num,den,sandwich\n";
            for (const auto& [r, v] : s.exact_by_r)
                if (!r_opt || *r_opt == r)
                    csv << r << "," << v.get_num().get_str() << "," << v.get_den().get_str() << ","
                        << to_string(s.sandwich_by_r.at(r)) << "\n";
            if (!g.csv_path.empty())
                write_file(g.csv_path, csv.str());
            if (table) {
                std::cout << csv.str();
                return exit_code(s.overall());
            }
            return emit(g, m, result, s.overall());
        }

        if (estimate->parsed()) {
            Field field = FieldCtx::of_order(q);
            std::string name = spec_name;
            if (b_opt) {
                field = FieldCtx::create(field->p(), field->k() * *b_opt);
                if (name == "pc-large-degree")
                    name += "(" + std::to_string(*b_opt) + ")";
            }
            SampleConfig cfg{seed, n, g.threads, target == "GL" ? SampleTarget::GL : SampleTarget::M};
            const ProportionReport r = monte_carlo(make_spec(name, field), d, field, cfg, budget);
            if (!g.csv_path.empty())
                write_report_csv(g.csv_path, {r});
            m.subcommand = "estimate";
            m.parameters = Json{{"spec", name}, {"d", d}, {"q", q}, {"n", n}, {"target", target}, {"budget", budget}};
            if (b_opt)
                m.parameters["b"] = *b_opt;
            m.seed = seed;
            m.statement = "sampled-proportion";
            Verdict v = r.overall();
            if (!r.exact_in_interval())
                v = combine(v, Verdict::Inconclusive);
            return emit(g, m, report_json(r), v);
        }

        if (decompose->parsed()) {
            const Mat x = parse_matrix(matrix_text);
            const FittingSplit split = fitting_decompose(x);
            Json comps = Json::array();
            for (const auto& pc : primary_components(x).components)
                comps.push_back(Json{{"f", to_json(pc.f)},
                                     {"f_text", to_text(pc.f)},
                                     {"charpoly_multiplicity", pc.charpoly_mult},
                                     {"minpoly_multiplicity", pc.minpoly_mult},
                                     {"primary_cyclic", pc.charpoly_mult == pc.minpoly_mult},
                                     {"basis", to_json(pc.basis)}});
            const Poly cp = charpoly(x);
            const Poly mp = minpoly(x);
            Json result{{"matrix", to_json(x)},
                        {"charpoly", to_json(cp)},
                        {"charpoly_text", to_text(cp)},
                        {"minpoly", to_json(mp)},
                        {"minpoly_text", to_text(mp)},
                        {"fitting", split_json(split)},
                        {"primary_components", std::move(comps)}};
            m.subcommand = "decompose";
            m.parameters = Json{{"matrix", to_text(x)}};
            m.statement = "fitting-decomposition";
            return emit(g, m, result, Verdict::Holds);
        }

        if (pc_test->parsed()) {
            const Tower tower = TowerCtx::from_descriptor(tower_text);
            const Mat x = parse_matrix(matrix_text);
            const PCMembership pcm = pc_membership(x, *tower);
            Json result{{"matrix", to_json(x)}, {"tower", tower->descriptor()}, {"member", pcm.member}};
            result["f"] = pcm.f ? to_json(*pcm.f) : Json(nullptr);
            result["f_text"] = pcm.f ? Json(to_text(*pcm.f)) : Json(nullptr);
            result["g"] = pcm.g ? to_json(*pcm.g) : Json(nullptr);
            result["g_text"] = pcm.g ? Json(to_text(*pcm.g)) : Json(nullptr);
            result["r"] = pcm.r ? Json(*pcm.r) : Json(nullptr);
            m.subcommand = "pc-test";
            m.parameters = Json{{"matrix", to_text(x)}, {"tower", tower->descriptor()}};
            m.statement = "blow-up-primary-cyclic-criterion";
            return emit(g, m, result, Verdict::Holds);
        }

        if (verify->parsed()) {
            SuiteOptions opt;
            opt.census.budget = budget;
            opt.census.threads = g.threads;
            opt.samples = samples;
            opt.seed = seed;
            const SuiteReport rep = run_suite(suite, opt);
            Json checks = Json::array();
            for (const auto& ch : rep.checks)
                checks.push_back(Json{{"label", ch.label}, {"verdict", to_string(ch.verdict)}, {"detail", ch.detail}});
            m.subcommand = "verify";
            m.parameters = Json{{"suite", suite}, {"n", samples}, {"budget", budget}};
            m.seed = seed;
            m.statement = "verify:" + suite;
            return emit(g, m, Json{{"suite", rep.suite}, {"checks", std::move(checks)}}, rep.overall());
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::NIViolation ? exit_violation : exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
