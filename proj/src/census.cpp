#include "nicensus/census.hpp"

#include "nicensus/embed.hpp"
#include "nicensus/error.hpp"
#include "nicensus/io.hpp"
#include "nicensus/parallel.hpp"
#include "nicensus/quokka.hpp"
#include "nicensus/rng.hpp"
#include "nicensus/tower.hpp"

#include <algorithm>
#include <charconv>

namespace nicensus {

Rational omega(int j, const Integer& q)
{
    if (j < 0)
        throw Error(Errc::RangeError, "omega needs j >= 0");
    Rational out = 1;
    for (int k = 1; k <= j; ++k)
        out *= 1 - rpow(Rational(q), -k);
    out.canonicalize();
    return out;
}

Integer gaussian_binomial(int d, int i, const Integer& q)
{
    if (i < 0 || d < 0 || i > d)
        throw Error(Errc::IndexOutOfRange,
                    "gaussian binomial needs 0 <= i <= d, got d=" + std::to_string(d) + ", i=" + std::to_string(i));
    Integer num = 1;
    Integer den = 1;
    for (int k = 0; k < i; ++k) {
        num *= ipow(q, static_cast<unsigned long>(d - k)) - 1;
        den *= ipow(q, static_cast<unsigned long>(k + 1)) - 1;
    }
    return num / den;
}

std::uint64_t matrix_count(int d, std::uint64_t q, std::uint64_t budget)
{
    const Integer n = ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(d) * d);
    if (n > Integer(static_cast<unsigned long>(budget)))
        throw Error(Errc::BudgetExceeded, "|M(" + std::to_string(d) + ", " + std::to_string(q) + ")| = " +
                                              n.get_str() + " exceeds the budget of " + std::to_string(budget));
    return n.get_ui();
}

namespace {

bool primary_cyclic_some_f_not_t(const Mat& x)
{
    const Poly c = charpoly(x);
    const Poly m = minpoly(x);
    const Poly t = Poly::t(x.field());
    for (const auto& f : factorize(c).factors)
        if (!(f.poly == t) && multiplicity(m, f.poly) == f.multiplicity)
            return true;
    return false;
}

std::pair<std::string, std::optional<std::string>> split_name(std::string_view name)
{
    const auto open = name.find('(');
    if (open == std::string_view::npos)
        return {std::string(name), std::nullopt};
    if (name.back() != ')')
        throw Error(Errc::InvalidArgument, "unbalanced parentheses in spec name '" + std::string(name) + "'");
    return {std::string(name.substr(0, open)), std::string(name.substr(open + 1, name.size() - open - 2))};
}

std::uint64_t parse_arg(const std::string& base, const std::optional<std::string>& arg)
{
    if (!arg)
        throw Error(Errc::InvalidArgument, "spec '" + base + "' needs an argument, e.g. " + base + "(1)");
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(arg->data(), arg->data() + arg->size(), v);
    if (ec != std::errc() || ptr != arg->data() + arg->size())
        throw Error(Errc::InvalidArgument, "bad argument '" + *arg + "' for spec '" + base + "'");
    return v;
}

} // namespace

NISubsetSpec make_spec(std::string_view name, const Field& field)
{
    const auto [base, arg] = split_name(name);
    NISubsetSpec s;
    s.name = std::string(name);
    auto no_arg = [&, &base = base, &arg = arg] {
        if (arg)
            throw Error(Errc::InvalidArgument, "spec '" + base + "' takes no argument");
    };
    if (base == "all") {
        no_arg();
        s.member = [](const Mat&) { return true; };
        s.closed_form_ni = [](int, const Integer&) { return Rational(1); };
        s.contains_nilpotents = true;
    } else if (base == "invertible") {
        no_arg();
        s.member = [](const Mat& x) { return is_invertible(x); };
        s.contains_nilpotents = false;
    } else if (base == "nilpotent-complement") {
        no_arg();
        s.member = [](const Mat& x) { return !is_nilpotent(x); };
        s.closed_form_ni = [](int i, const Integer&) { return Rational(i == 0 ? 0 : 1); };
        s.contains_nilpotents = false;
    } else if (base == "primary-cyclic-some-f-not-t") {
        no_arg();
        s.member = primary_cyclic_some_f_not_t;
        s.contains_nilpotents = false;
    } else if (base == "pc-large-degree") {
        const std::uint64_t b = parse_arg(base, arg);
        if (b == 0 || field->k() % b != 0)
            throw Error(Errc::InvalidArgument, "pc-large-degree(" + std::to_string(b) + ") needs b dividing " +
                                                   std::to_string(field->k()) + " for F_" +
                                                   std::to_string(field->size()));
        const unsigned bb = static_cast<unsigned>(b);
        Field small = FieldCtx::create(field->p(), field->k() / bb);
        Tower tower = TowerCtx::create(small, field);
        const std::uint64_t q = small->size();
        s.member = [tower](const Mat& x) { return pc_membership(x, *tower).member; };
        s.closed_form_ni = [q, bb](int i, const Integer&) { return i == 0 ? Rational(0) : ngl_exact(i, q, bb); };
        s.contains_nilpotents = false;
    } else if (base == "separable") {
        no_arg();
        s.member = [](const Mat& x) {
            const Poly c = charpoly(x);
            return gcd(c, derivative(c)).degree() == 0;
        };
    } else if (base == "has-eigenvalue") {
        const std::uint64_t a = parse_arg(base, arg);
        if (a >= field->size())
            throw Error(Errc::InvalidArgument, "has-eigenvalue(" + std::to_string(a) + ") is not an element of F_" +
                                                   std::to_string(field->size()));
        const Elt alpha{static_cast<std::uint32_t>(a)};
        s.member = [alpha](const Mat& x) { return charpoly(x).eval(alpha) == Elt{0}; };
        s.contains_nilpotents = (a == 0);
    } else if (base == "unipotent") {
        no_arg();
        s.member = [](const Mat& x) {
            const Poly t_minus_1 = Poly::t(x.field()) - Poly::constant(x.field(), Elt{1});
            return charpoly(x) == pow(t_minus_1, static_cast<unsigned>(x.rows()));
        };
        s.contains_nilpotents = false;
    } else {
        throw Error(Errc::InvalidArgument, "unknown spec '" + std::string(name) + "'");
    }
    return s;
}

std::vector<std::string> builtin_spec_instances(const Field& field)
{
    std::vector<std::string> out{"all", "invertible", "nilpotent-complement", "primary-cyclic-some-f-not-t"};
    for (unsigned b = 1; b <= field->k(); ++b)
        if (field->k() % b == 0)
            out.push_back("pc-large-degree(" + std::to_string(b) + ")");
    out.push_back("separable");
    for (std::uint32_t a = 0; a < field->size(); ++a)
        out.push_back("has-eigenvalue(" + std::to_string(a) + ")");
    out.push_back("unipotent");
    return out;
}

bool FlagCensus::partition_holds() const
{
    Integer sum = 0;
    for (const auto& l : per_i)
        sum += l.n_of_i;
    return sum == n_total;
}

bool FlagCensus::lemma_holds() const
{
    return std::all_of(per_i.begin(), per_i.end(), [](const FlagLevel& l) { return l.n_of_i == l.lemma_prediction; });
}

bool FlagCensus::flag_independent() const
{
    return std::all_of(per_i.begin(), per_i.end(), [](const FlagLevel& l) {
        return !l.n_i_conjugated_flag || *l.n_i_conjugated_flag == l.n_i;
    });
}

bool FlagCensus::zeroth_level_consistent(bool contains_nilpotents) const
{
    return per_i.front().n_i == (contains_nilpotents ? 1 : 0);
}

bool FlagCensus::all_hold() const
{
    return identity_holds() && partition_holds() && lemma_holds() && flag_independent();
}

namespace {

/// Reverses the standard flag and then shears it, so no V_i is preserved.
Mat flag_conjugator(const Field& field, int d)
{
    Mat u = Mat::identity(field, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            u(i, j) = Elt{1};
    Mat rev(field, d, d);
    for (int i = 0; i < d; ++i)
        rev(i, d - 1 - i) = Elt{1};
    return rev * u;
}

Mat pad_with_zero(const Mat& y, int d)
{
    if (y.rows() == d)
        return y;
    if (y.rows() == 0)
        return Mat::zero(y.field(), d);
    return direct_sum(y, Mat::zero(y.field(), d - y.rows()));
}

struct LevelCount {
    std::uint64_t invertible = 0;
    std::uint64_t members = 0;
    std::uint64_t members_conjugated = 0;
};

} // namespace

FlagCensus census_exact(const NISubsetSpec& spec, const Field& field, int d, const CensusOptions& options)
{
    if (d < 1)
        throw Error(Errc::RangeError, "census needs d >= 1");
    const std::uint64_t q = field->size();
    const Integer Q(static_cast<unsigned long>(q));
    const std::uint64_t total = matrix_count(d, q, options.budget);
    {
        Integer work = Integer(static_cast<unsigned long>(total));
        for (int i = 1; i <= d; ++i)
            work += ipow(Q, static_cast<unsigned long>(i) * i) * (options.flag_check ? 2 : 1);
        if (work > Integer(static_cast<unsigned long>(options.budget)))
            throw Error(Errc::BudgetExceeded, "census of M(" + std::to_string(d) + ", " + std::to_string(q) +
                                                  ") needs " + work.get_str() + " evaluations");
    }

    using Buckets = std::vector<std::uint64_t>;
    const Buckets by_dim = parallel_reduce(
        total, options.threads, Buckets(static_cast<std::size_t>(d) + 2, 0),
        [&](std::uint64_t begin, std::uint64_t end, Buckets& acc) {
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                const Mat x = Mat::from_index(field, d, idx);
                const FittingSplit split = fitting_decompose(x);
                const Mat reduced = invertible_part_embedded(x, split);
                const bool in = spec.member(x);
                if (in != spec.member(reduced))
                    throw Error(Errc::NIViolation, "spec '" + spec.name + "': member(X) = " + (in ? "true" : "false") +
                                                       " but member(X_inv + 0) differs, X = " + to_text(x));
                if (in) {
                    ++acc[static_cast<std::size_t>(split.dim_inv())];
                    ++acc.back();
                }
            }
        },
        [](Buckets& acc, const Buckets& part) {
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += part[i];
        });

    FlagCensus out;
    out.spec = spec.name;
    out.field = field->descriptor();
    out.d = d;
    out.q = q;
    out.n_total = Integer(static_cast<unsigned long>(by_dim.back()));
    out.gl_d = gl_order(d, Q);
    out.m_d = Integer(static_cast<unsigned long>(total));

    const Mat g = flag_conjugator(field, d);
    for (int i = 0; i <= d; ++i) {
        FlagLevel level;
        level.i = i;
        level.gl_i = gl_order(i, Q);
        LevelCount count;
        if (i == 0) {
            const Mat zero = Mat::zero(field, d);
            count.invertible = 1;
            count.members = spec.member(zero) ? 1 : 0;
            count.members_conjugated = count.members;
        } else {
            const std::uint64_t n = matrix_count(i, q, options.budget);
            count = parallel_reduce(
                n, options.threads, LevelCount{},
                [&](std::uint64_t begin, std::uint64_t end, LevelCount& acc) {
                    for (std::uint64_t idx = begin; idx < end; ++idx) {
                        const Mat y = Mat::from_index(field, i, idx);
                        if (!is_invertible(y))
                            continue;
                        ++acc.invertible;
                        const Mat padded = pad_with_zero(y, d);
                        if (spec.member(padded))
                            ++acc.members;
                        if (options.flag_check && spec.member(conjugate(padded, g)))
                            ++acc.members_conjugated;
                    }
                },
                [](LevelCount& acc, const LevelCount& part) {
                    acc.invertible += part.invertible;
                    acc.members += part.members;
                    acc.members_conjugated += part.members_conjugated;
                });
        }
        if (Integer(static_cast<unsigned long>(count.invertible)) != level.gl_i)
            throw Error(Errc::InvalidArgument, "enumerated |GL(" + std::to_string(i) + ")| disagrees with its order");
        level.n_i = Integer(static_cast<unsigned long>(count.members));
        if (options.flag_check)
            level.n_i_conjugated_flag = Integer(static_cast<unsigned long>(count.members_conjugated));
        level.n_of_i = Integer(static_cast<unsigned long>(by_dim[static_cast<std::size_t>(i)]));
        level.lemma_prediction = gaussian_binomial(d, i, Q) *
                                 ipow(Q, static_cast<unsigned long>((d - i) * (d - 1))) * level.n_i;
        out.per_i.push_back(std::move(level));
    }

    out.lhs = Rational(out.n_total, out.gl_d);
    out.lhs.canonicalize();
    Rational rhs = 0;
    for (const auto& l : out.per_i)
        rhs += rpow(Rational(Q), -(d - l.i)) / omega(d - l.i, Q) * l.proportion();
    rhs.canonicalize();
    out.rhs = rhs;
    return out;
}

CorollarySums corollary_sum_check(int d, const Integer& q)
{
    if (d < 0)
        throw Error(Errc::RangeError, "corollary sums need d >= 0");
    CorollarySums s;
    s.full_lhs = 0;
    s.truncated_lhs = 0;
    for (int i = 0; i <= d; ++i) {
        const Rational term = rpow(Rational(q), -(d - i)) / omega(d - i, q);
        s.full_lhs += term;
        if (i >= 1)
            s.truncated_lhs += term;
    }
    s.full_rhs = 1 / omega(d, q);
    s.truncated_rhs = (1 - rpow(Rational(q), -d)) / omega(d, q);
    s.full_lhs.canonicalize();
    s.truncated_lhs.canonicalize();
    s.full_rhs.canonicalize();
    s.truncated_rhs.canonicalize();
    return s;
}

namespace {

void require_positive(const Rational& a, const Rational& k, int d)
{
    if (a <= 0 || k <= 0)
        throw Error(Errc::NonPositiveConstants, "transfer bounds need a, k > 0");
    if (d < 1)
        throw Error(Errc::RangeError, "transfer bounds need d >= 1");
}

Rational exp_main(const Rational& a, const Rational& k, int d, const Integer& q)
{
    return a - (a + k) * d * rpow(Rational(q), -d);
}

Rational exp_relaxed(const Rational& a, const Rational& k, int d, const Integer& q)
{
    return a - (a + k) * rpow(ratio(2 * q, 3), -d);
}

LinearTransfer linear(const Rational& a, const Rational& k, int d, const Integer& q)
{
    LinearTransfer t;
    t.main = (a - 3 * k / d) * (1 - rpow(Rational(q), -d));
    t.relaxed = a - (a + 3 * k) / d;
    t.main.canonicalize();
    t.relaxed.canonicalize();
    return t;
}

} // namespace

Rational transfer_bound_exp(const Rational& a, const Rational& k, int d, const Integer& q)
{
    require_positive(a, k, d);
    return exp_main(a, k, d, q);
}

Rational transfer_bound_exp_relaxed(const Rational& a, const Rational& k, int d, const Integer& q)
{
    require_positive(a, k, d);
    return exp_relaxed(a, k, d, q);
}

LinearTransfer transfer_bound_linear(const Rational& a, const Rational& k, int d, const Integer& q)
{
    require_positive(a, k, d);
    return linear(a, k, d, q);
}

bool TransferFit::holds() const
{
    return actual >= exp_main && exp_main >= exp_relaxed && actual >= linear.main && linear.main > linear.relaxed;
}

TransferFit fit_transfer(const FlagCensus& census, const Rational& a)
{
    if (a <= 0)
        throw Error(Errc::NonPositiveConstants, "transfer fit needs a > 0");
    const Integer Q(static_cast<unsigned long>(census.q));
    TransferFit f;
    f.a = a;
    f.k_exp = 0;
    f.k_linear = 0;
    for (const auto& l : census.per_i) {
        if (l.i == 0)
            continue;
        const Rational gap = a - l.proportion();
        f.k_linear = std::max(f.k_linear, Rational(gap * l.i));
        f.k_exp = std::max(f.k_exp, Rational(gap * ipow(Q, static_cast<unsigned long>(l.i))));
    }
    f.k_linear.canonicalize();
    f.k_exp.canonicalize();
    f.exp_main = exp_main(a, f.k_exp, census.d, Q);
    f.exp_relaxed = exp_relaxed(a, f.k_exp, census.d, Q);
    f.linear = linear(a, f.k_linear, census.d, Q);
    f.actual = census.m_proportion();
    f.actual.canonicalize();
    return f;
}

SumBound sum_bound_check(int d, const Integer& q)
{
    if (d < 1)
        throw Error(Errc::RangeError, "sum bound needs d >= 1");
    SumBound s;
    s.lhs = 0;
    for (int i = 1; i <= d; ++i)
        s.lhs += ratio(ipow(q, static_cast<unsigned long>(i)), i);
    s.lhs *= d;
    s.lhs.canonicalize();
    s.rhs = 3 * Rational(ipow(q, static_cast<unsigned long>(d)));
    return s;
}

Integer count_nilpotent(int n, const Field& field, std::uint64_t budget)
{
    const std::uint64_t total = matrix_count(n, field->size(), budget);
    std::uint64_t count = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx)
        if (is_nilpotent(Mat::from_index(field, n, idx)))
            ++count;
    return Integer(static_cast<unsigned long>(count));
}

namespace {

constexpr std::size_t max_witnesses = 8;

struct AuditAcc {
    std::uint64_t matrices = 0;
    std::uint64_t conjugations = 0;
    std::uint64_t violations = 0;
    std::vector<NIWitness> witnesses;

    void record(NIWitness w)
    {
        ++violations;
        if (witnesses.size() < max_witnesses)
            witnesses.push_back(std::move(w));
    }
};

void merge_audit(AuditAcc& acc, const AuditAcc& part)
{
    acc.matrices += part.matrices;
    acc.conjugations += part.conjugations;
    acc.violations += part.violations;
    for (const auto& w : part.witnesses)
        if (acc.witnesses.size() < max_witnesses)
            acc.witnesses.push_back(w);
}

Mat random_matrix(const Field& field, int d, CounterRng& rng)
{
    Mat x(field, d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            x(i, j) = Elt{static_cast<std::uint32_t>(rng.below(field->size()))};
    return x;
}

} // namespace

NIReport ni_verify(const NISubsetSpec& spec, const Field& field, int d, std::uint64_t trials, std::uint64_t seed,
                   const CensusOptions& options)
{
    if (trials < 1)
        throw Error(Errc::RangeError, "ni_verify needs at least one trial");
    if (d < 1)
        throw Error(Errc::RangeError, "ni_verify needs d >= 1");
    const std::uint64_t q = field->size();
    NIReport report;
    report.spec = spec.name;
    report.field = field->descriptor();
    report.d = d;

    const Integer Q(static_cast<unsigned long>(q));
    const Integer pairs = ipow(Q, static_cast<unsigned long>(d) * d) * gl_order(d, Q);
    report.exhaustive = pairs <= Integer(static_cast<unsigned long>(options.budget));

    AuditAcc acc;
    const Mat zero = Mat::zero(field, d);
    if (spec.contains_nilpotents && spec.member(zero) != *spec.contains_nilpotents)
        acc.record({"nilpotent-flag", zero, zero, std::nullopt, spec.member(zero), *spec.contains_nilpotents});

    if (report.exhaustive) {
        const std::uint64_t total = pairs == 0 ? 0 : ipow(Q, static_cast<unsigned long>(d) * d).get_ui();
        using Table = std::vector<char>;
        Table table(total, 0);
        parallel_reduce(
            total, options.threads, 0,
            [&](std::uint64_t begin, std::uint64_t end, int&) {
                for (std::uint64_t idx = begin; idx < end; ++idx)
                    table[idx] = spec.member(Mat::from_index(field, d, idx)) ? 1 : 0;
            },
            [](int&, int) {});
        std::vector<std::pair<Mat, Mat>> group; // (g, g^-1)
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Mat g = Mat::from_index(field, d, idx);
            if (auto gi = inverse(g))
                group.emplace_back(std::move(g), std::move(*gi));
        }
        const AuditAcc part = parallel_reduce(
            total, options.threads, AuditAcc{},
            [&](std::uint64_t begin, std::uint64_t end, AuditAcc& a) {
                for (std::uint64_t idx = begin; idx < end; ++idx) {
                    const Mat x = Mat::from_index(field, d, idx);
                    const bool in = table[idx] != 0;
                    ++a.matrices;
                    const Mat reduced = invertible_part_embedded(x);
                    if ((table[reduced.index()] != 0) != in)
                        a.record({"nilpotent-part", x, reduced, std::nullopt, in, !in});
                    for (const auto& [g, gi] : group) {
                        const Mat y = gi * x * g;
                        ++a.conjugations;
                        if ((table[y.index()] != 0) != in)
                            a.record({"conjugation", x, y, g, in, !in});
                    }
                }
            },
            merge_audit);
        merge_audit(acc, part);
    } else {
        const AuditAcc part = parallel_reduce(
            trials, options.threads, AuditAcc{},
            [&](std::uint64_t begin, std::uint64_t end, AuditAcc& a) {
                for (std::uint64_t t = begin; t < end; ++t) {
                    CounterRng rng(seed, t);
                    const Mat x = random_matrix(field, d, rng);
                    Mat g = random_matrix(field, d, rng);
                    std::optional<Mat> gi = inverse(g);
                    while (!gi) {
                        g = random_matrix(field, d, rng);
                        gi = inverse(g);
                    }
                    const bool in = spec.member(x);
                    ++a.matrices;
                    const Mat reduced = invertible_part_embedded(x);
                    const bool in_reduced = spec.member(reduced);
                    if (in_reduced != in)
                        a.record({"nilpotent-part", x, reduced, std::nullopt, in, in_reduced});
                    const Mat y = *gi * x * g;
                    ++a.conjugations;
                    const bool in_y = spec.member(y);
                    if (in_y != in)
                        a.record({"conjugation", x, y, g, in, in_y});
                }
            },
            merge_audit);
        merge_audit(acc, part);
    }
    report.matrices_checked = acc.matrices;
    report.conjugations_checked = acc.conjugations;
    report.violation_count = acc.violations;
    report.witnesses = std::move(acc.witnesses);
    return report;
}

} // namespace nicensus
