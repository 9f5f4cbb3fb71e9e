#include "nicensus/poly.hpp"

#include "nicensus/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace nicensus {

namespace {

void require_same(const Poly& a, const Poly& b)
{
    if (a.field() != b.field() && !a.ctx().same_as(b.ctx()))
        throw Error(Errc::FieldMismatch, "polynomials over different fields");
}

} // namespace

Poly::Poly(Field field) : field_(std::move(field)) {}

Poly::Poly(Field field, std::vector<Elt> coeffs) : field_(std::move(field)), c_(std::move(coeffs))
{
    normalize();
}

void Poly::normalize()
{
    while (!c_.empty() && c_.back() == Elt{0})
        c_.pop_back();
}

Poly Poly::constant(Field field, Elt c)
{
    return Poly(std::move(field), {c});
}

Poly Poly::monomial(Field field, Elt c, int degree)
{
    std::vector<Elt> v(static_cast<std::size_t>(degree) + 1, Elt{0});
    v.back() = c;
    return Poly(std::move(field), std::move(v));
}

Poly Poly::from_encodings(Field field, const std::vector<std::uint32_t>& coeffs)
{
    std::vector<Elt> v;
    v.reserve(coeffs.size());
    for (auto c : coeffs)
        v.push_back(field->element(c));
    return Poly(std::move(field), std::move(v));
}

std::vector<std::uint32_t> Poly::encodings() const
{
    std::vector<std::uint32_t> out;
    out.reserve(c_.size());
    for (auto c : c_)
        out.push_back(c.v);
    return out;
}

Elt Poly::eval(Elt x) const
{
    const FieldCtx& F = *field_;
    Elt acc{0};
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = F.add(F.mul(acc, x), c_[i]);
    return acc;
}

bool operator==(const Poly& a, const Poly& b)
{
    return a.ctx().same_as(b.ctx()) && a.c_ == b.c_;
}

Poly operator+(const Poly& a, const Poly& b)
{
    require_same(a, b);
    const FieldCtx& F = a.ctx();
    std::vector<Elt> out(std::max(a.coeffs().size(), b.coeffs().size()), Elt{0});
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = F.add(a[static_cast<int>(i)], b[static_cast<int>(i)]);
    return Poly(a.field(), std::move(out));
}

Poly operator-(const Poly& a)
{
    const FieldCtx& F = a.ctx();
    std::vector<Elt> out(a.coeffs());
    for (auto& c : out)
        c = F.neg(c);
    return Poly(a.field(), std::move(out));
}

Poly operator-(const Poly& a, const Poly& b)
{
    return a + (-b);
}

Poly operator*(const Poly& a, const Poly& b)
{
    require_same(a, b);
    if (a.is_zero() || b.is_zero())
        return Poly(a.field());
    const FieldCtx& F = a.ctx();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elt> out(x.size() + y.size() - 1, Elt{0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == Elt{0})
            continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(x[i], y[j]));
    }
    return Poly(a.field(), std::move(out));
}

Poly operator*(Elt c, const Poly& a)
{
    const FieldCtx& F = a.ctx();
    std::vector<Elt> out(a.coeffs());
    for (auto& x : out)
        x = F.mul(c, x);
    return Poly(a.field(), std::move(out));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    require_same(a, b);
    if (b.is_zero())
        throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
    const FieldCtx& F = a.ctx();
    std::vector<Elt> r(a.coeffs());
    const auto& d = b.coeffs();
    const int db = b.degree();
    if (a.degree() < db)
        return {Poly(a.field()), a};
    std::vector<Elt> q(static_cast<std::size_t>(a.degree() - db) + 1, Elt{0});
    const Elt lead_inv = F.inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        const Elt c = F.mul(r[static_cast<std::size_t>(i)], lead_inv);
        if (c == Elt{0})
            continue;
        q[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(i - db + j)];
            slot = F.sub(slot, F.mul(c, d[static_cast<std::size_t>(j)]));
        }
    }
    return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly monic(const Poly& a)
{
    if (a.is_zero() || a.is_monic())
        return a;
    return a.ctx().inv(a.lead()) * a;
}

Poly gcd(const Poly& a_in, const Poly& b_in)
{
    Poly a = a_in, b = b_in;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Poly lcm(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly(a.field());
    return monic((a / gcd(a, b)) * b);
}

Poly derivative(const Poly& a)
{
    const FieldCtx& F = a.ctx();
    if (a.degree() < 1)
        return Poly(a.field());
    std::vector<Elt> out(static_cast<std::size_t>(a.degree()), Elt{0});
    for (int i = 1; i <= a.degree(); ++i) {
        // i * c_i, with i reduced into the prime field.
        const Elt n{static_cast<std::uint32_t>(i % static_cast<int>(F.p()))};
        out[static_cast<std::size_t>(i - 1)] = F.mul(n, a[i]);
    }
    return Poly(a.field(), std::move(out));
}

Poly pow(const Poly& base, unsigned exponent)
{
    Poly result = Poly::constant(base.field(), Elt{1});
    Poly b = base;
    while (exponent) {
        if (exponent & 1u)
            result = result * b;
        exponent >>= 1;
        if (exponent)
            b = b * b;
    }
    return result;
}

Poly pow_mod(const Poly& base, const Integer& exponent, const Poly& modulus)
{
    Poly result = Poly::constant(base.field(), Elt{1}) % modulus;
    Poly b = base % modulus;
    const std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % modulus;
        if (mpz_tstbit(exponent.get_mpz_t(), i))
            result = (result * b) % modulus;
    }
    return result;
}

bool divides(const Poly& d, const Poly& a)
{
    return (a % d).is_zero();
}

int multiplicity(const Poly& f, const Poly& g)
{
    if (f.is_zero())
        throw Error(Errc::ZeroPolynomial, "multiplicity in the zero polynomial");
    if (g.degree() < 1)
        throw Error(Errc::InvalidArgument, "multiplicity of a constant");
    int m = 0;
    Poly cur = f;
    for (;;) {
        auto [q, r] = divmod(cur, g);
        if (!r.is_zero())
            return m;
        ++m;
        cur = std::move(q);
    }
}

bool canonical_less(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i)
        if (a[i] != b[i])
            return a[i].v < b[i].v;
    return false;
}

bool is_irreducible(const Poly& f)
{
    const int n = f.degree();
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    const Poly g = monic(f);
    const Integer q = f.ctx().size();
    const Poly t = Poly::t(f.field()) % g;
    // Rabin's test with iterated q-th powers of t.
    std::vector<Poly> frob;
    frob.reserve(static_cast<std::size_t>(n) + 1);
    frob.push_back(t);
    for (int i = 1; i <= n; ++i)
        frob.push_back(pow_mod(frob.back(), q, g));
    if (!(frob.back() == t))
        return false;
    for (auto l : prime_divisors(static_cast<std::uint64_t>(n)))
        if (gcd(frob[static_cast<std::size_t>(n / static_cast<int>(l))] - t, g).degree() != 0)
            return false;
    return true;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f)
{
    const FieldCtx& F = f.ctx();
    const std::uint64_t root_exp = F.size() / F.p(); // x^(q/p) inverts x -> x^p
    std::vector<Elt> out(static_cast<std::size_t>(f.degree()) / F.p() + 1, Elt{0});
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = F.pow(f[static_cast<int>(i * F.p())], root_exp);
    return Poly(f.field(), std::move(out));
}

void squarefree_parts(const Poly& f, int scale, std::vector<std::pair<Poly, int>>& out)
{
    const Poly one = Poly::constant(f.field(), Elt{1});
    if (f.degree() < 1)
        return;
    const Poly df = derivative(f);
    if (df.is_zero()) {
        squarefree_parts(pth_root(f), scale * static_cast<int>(f.ctx().p()), out);
        return;
    }
    Poly c = gcd(f, df);
    Poly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0)
            out.emplace_back(monic(z), i * scale);
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (c.degree() > 0)
        squarefree_parts(pth_root(monic(c)), scale * static_cast<int>(f.ctx().p()), out);
}

// Splits a squarefree monic polynomial into (product of all degree-i factors, i).
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f)
{
    std::vector<std::pair<Poly, int>> out;
    Poly rest = f;
    const Integer q = f.ctx().size();
    const Poly t = Poly::t(f.field());
    Poly h = t % rest;
    for (int i = 1; rest.degree() >= 2 * i; ++i) {
        h = pow_mod(h, q, rest);
        Poly g = gcd(h - t, rest);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0)
        out.emplace_back(rest, rest.degree());
    return out;
}

struct IrrKey {
    std::uint32_t p;
    unsigned k;
    std::uint64_t modulus;
    int m;
    auto operator<=>(const IrrKey&) const = default;
};

std::mutex& irr_mutex()
{
    static std::mutex m;
    return m;
}

std::map<IrrKey, std::unique_ptr<const std::vector<Poly>>>& irr_cache()
{
    static std::map<IrrKey, std::unique_ptr<const std::vector<Poly>>> cache;
    return cache;
}

} // namespace

const std::vector<Poly>& irr_enumerate(int m, const Field& field, std::uint64_t budget)
{
    if (m < 1)
        throw Error(Errc::InvalidArgument, "degree must be at least 1");
    const std::uint64_t q = field->size();
    std::uint64_t candidates = 1;
    for (int i = 0; i < m; ++i) {
        if (candidates > budget / q)
            throw Error(Errc::BudgetExceeded, "enumerating Irr_" + std::to_string(m) + "(" +
                                                  std::to_string(q) + ") exceeds the budget");
        candidates *= q;
    }
    const IrrKey key{field->p(), field->k(), field->modulus_int(), m};
    std::lock_guard lock(irr_mutex());
    auto& cache = irr_cache();
    if (auto it = cache.find(key); it != cache.end())
        return *it->second;

    auto list = std::make_unique<std::vector<Poly>>();
    std::vector<Elt> c(static_cast<std::size_t>(m) + 1, Elt{0});
    c.back() = Elt{1};
    for (std::uint64_t idx = 0; idx < candidates; ++idx) {
        std::uint64_t rest = idx;
        for (int i = m; i-- > 0;) {
            c[static_cast<std::size_t>(i)] = Elt{static_cast<std::uint32_t>(rest % q)};
            rest /= q;
        }
        if (m > 1 && c[0] == Elt{0})
            continue;
        Poly f(field, c);
        if (is_irreducible(f))
            list->push_back(std::move(f));
    }
    const auto& ref = *list;
    cache.emplace(key, std::move(list));
    return ref;
}

Poly Factorization::expand(const Field& field) const
{
    Poly out = Poly::constant(field, unit);
    for (const auto& [f, m] : factors)
        out = out * pow(f, static_cast<unsigned>(m));
    return out;
}

Factorization factorize(const Poly& f, std::uint64_t budget)
{
    if (f.is_zero())
        throw Error(Errc::ZeroPolynomial, "cannot factor the zero polynomial");
    Factorization result{f.lead(), {}};
    const Poly g = monic(f);
    std::vector<std::pair<Poly, int>> parts;
    squarefree_parts(g, 1, parts);

    std::vector<Factor> found;
    const std::uint64_t q = f.ctx().size();
    for (const auto& [part, mult] : parts) {
        for (const auto& [block, deg] : distinct_degree(part)) {
            if (block.degree() == deg) {
                found.push_back({block, mult});
                continue;
            }
            // Equal-degree split by trial division.
            std::uint64_t candidates = 1;
            for (int i = 0; i < deg; ++i) {
                if (candidates > budget / q)
                    throw Error(Errc::BudgetExceeded, "equal-degree split of degree " +
                                                          std::to_string(deg) + " exceeds the budget");
                candidates *= q;
            }
            Poly rest = block;
            for (const auto& h : irr_enumerate(deg, f.field(), budget)) {
                if (rest.degree() == deg) {
                    found.push_back({rest, mult});
                    rest = Poly::constant(f.field(), Elt{1});
                    break;
                }
                auto [quot, rem] = divmod(rest, h);
                if (rem.is_zero()) {
                    found.push_back({h, mult});
                    rest = std::move(quot);
                }
            }
            if (rest.degree() > 0)
                found.push_back({rest, mult});
        }
    }

    std::sort(found.begin(), found.end(),
              [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
    for (auto& fac : found) {
        if (!result.factors.empty() && result.factors.back().poly == fac.poly)
            result.factors.back().multiplicity += fac.multiplicity;
        else
            result.factors.push_back(std::move(fac));
    }
    return result;
}

int mobius(int n)
{
    int result = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0)
                return 0;
            result = -result;
        }
    }
    if (n > 1)
        result = -result;
    return result;
}

Integer irr_count(int m, const Integer& q)
{
    if (m < 1)
        throw Error(Errc::InvalidArgument, "degree must be at least 1");
    Integer total = 0;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0)
            total += mobius(d) * ipow(q, static_cast<unsigned long>(m / d));
    return total / m;
}

std::string to_text(const Poly& f)
{
    if (f.is_zero())
        return "0";
    std::string out;
    for (int i = 0; i <= f.degree(); ++i) {
        if (i)
            out += '+';
        out += std::to_string(f[i].v);
        if (i == 1)
            out += "*t";
        else if (i > 1)
            out += "*t^" + std::to_string(i);
    }
    return out;
}

Poly parse_poly(const Field& field, std::string_view text)
{
    std::vector<Elt> c;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw Error(Errc::ParseError, why + " at position " + std::to_string(pos));
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto read_uint = [&]() -> std::uint64_t {
        skip_ws();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc())
            fail("expected an integer");
        pos = static_cast<std::size_t>(ptr - text.data());
        return v;
    };
    skip_ws();
    if (pos == text.size())
        fail("empty polynomial");
    for (;;) {
        skip_ws();
        std::uint64_t coeff = 1;
        int power = 0;
        bool have_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = read_uint();
            have_coeff = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
                if (pos >= text.size() || text[pos] != 't')
                    fail("expected 't'");
            }
        }
        if (pos < text.size() && text[pos] == 't') {
            ++pos;
            power = 1;
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                power = static_cast<int>(read_uint());
            }
        } else if (!have_coeff) {
            fail("expected a term");
        }
        if (coeff >= field->size())
            fail("coefficient outside the field");
        if (c.size() <= static_cast<std::size_t>(power))
            c.resize(static_cast<std::size_t>(power) + 1, Elt{0});
        c[static_cast<std::size_t>(power)] = field->add(c[static_cast<std::size_t>(power)],
                                                        Elt{static_cast<std::uint32_t>(coeff)});
        skip_ws();
        if (pos == text.size())
            break;
        if (text[pos] != '+')
            fail("expected '+'");
        ++pos;
    }
    return Poly(field, std::move(c));
}

} // namespace nicensus
