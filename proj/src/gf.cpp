#include "nicensus/gf.hpp"

#include "nicensus/error.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>

namespace nicensus {

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q) noexcept
{
    if (q < 2)
        return std::nullopt;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0)
        p = q;
    unsigned k = 0;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    if (q != 1 || p > UINT32_MAX)
        return std::nullopt;
    return std::make_pair(static_cast<std::uint32_t>(p), k);
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

namespace {

// Dense polynomials over F_p as coefficient vectors, low degree first.
using PVec = std::vector<std::uint32_t>;

void trim(PVec& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

PVec pmod(PVec a, const PVec& m, std::uint32_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
        trim(a);
    }
    return a;
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& m, std::uint32_t p)
{
    if (a.empty() || b.empty())
        return {};
    PVec out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    return pmod(std::move(out), m, p);
}

PVec ppowmod(PVec base, std::uint64_t e, const PVec& m, std::uint32_t p)
{
    PVec result{1};
    result = pmod(result, m, p);
    base = pmod(std::move(base), m, p);
    while (e) {
        if (e & 1)
            result = pmulmod(result, base, m, p);
        e >>= 1;
        if (e)
            base = pmulmod(base, base, m, p);
    }
    return result;
}

PVec pgcd(PVec a, PVec b, std::uint32_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        PVec r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

PVec psub(PVec a, const PVec& b, std::uint32_t p)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

std::mutex& canonical_mutex()
{
    static std::mutex m;
    return m;
}

std::map<std::pair<std::uint32_t, unsigned>, Field>& canonical_cache()
{
    static std::map<std::pair<std::uint32_t, unsigned>, Field> cache;
    return cache;
}

} // namespace

bool is_irreducible_mod_p(std::span<const std::uint32_t> f_in, std::uint32_t p)
{
    PVec f(f_in.begin(), f_in.end());
    trim(f);
    if (f.size() < 2)
        return false;
    const std::size_t n = f.size() - 1;
    if (n == 1)
        return true;
    // Rabin: t^(p^n) = t mod f, and gcd(t^(p^(n/l)) - t, f) = 1 for primes l | n.
    std::vector<PVec> frob(n + 1);
    frob[0] = pmod(PVec{0, 1}, f, p);
    for (std::size_t i = 1; i <= n; ++i)
        frob[i] = ppowmod(frob[i - 1], p, f, p);
    const PVec t = pmod(PVec{0, 1}, f, p);
    if (frob[n] != t)
        return false;
    for (std::uint64_t l : prime_divisors(n)) {
        PVec g = pgcd(psub(frob[n / l], t, p), f, p);
        if (g.size() != 1)
            return false;
    }
    return true;
}

Field FieldCtx::create(std::uint32_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus)
{
    if (!is_prime(p))
        throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    if (k == 0)
        throw Error(Errc::DegreeMismatch, "extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > max_field_size)
            throw Error(Errc::BudgetExceeded, "field order exceeds 2^20");
    }

    if (modulus) {
        auto& m = *modulus;
        if (m.size() != k + 1 || m.back() != 1)
            throw Error(Errc::DegreeMismatch, "modulus must be monic of degree " + std::to_string(k));
        for (auto c : m)
            if (c >= p)
                throw Error(Errc::InvalidArgument, "modulus coefficient out of range");
        if (!is_irreducible_mod_p(m, p))
            throw Error(Errc::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
        return Field(new FieldCtx(p, k, m));
    }

    std::lock_guard lock(canonical_mutex());
    auto& cache = canonical_cache();
    if (auto it = cache.find({p, k}); it != cache.end())
        return it->second;

    // Lexicographic search with c0 as the most significant coordinate.
    PVec candidate(k + 1, 0);
    candidate[k] = 1;
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        std::uint64_t rest = idx;
        for (unsigned i = k; i-- > 0;) {
            candidate[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        if (is_irreducible_mod_p(candidate, p)) {
            Field f(new FieldCtx(p, k, candidate));
            cache.emplace(std::make_pair(p, k), f);
            return f;
        }
    }
    throw Error(Errc::ReducibleModulus, "no irreducible polynomial found");
}

Field FieldCtx::of_order(std::uint64_t q)
{
    auto pk = prime_power(q);
    if (!pk)
        throw Error(Errc::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
    return create(pk->first, pk->second);
}

Field FieldCtx::from_descriptor(std::string_view text)
{
    auto parse_u64 = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw Error(Errc::ParseError, "bad field descriptor '" + std::string(text) + "'");
        return v;
    };
    std::string_view head = text;
    std::optional<std::uint64_t> modulus_int;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        head = text.substr(0, slash);
        modulus_int = parse_u64(text.substr(slash + 1));
    }
    std::uint64_t p = 0, k = 1;
    if (auto caret = head.find('^'); caret != std::string_view::npos) {
        p = parse_u64(head.substr(0, caret));
        k = parse_u64(head.substr(caret + 1));
    } else {
        auto pk = prime_power(parse_u64(head));
        if (!pk)
            throw Error(Errc::NonPrimeCharacteristic, "'" + std::string(head) + "' is not a prime power");
        p = pk->first;
        k = pk->second;
    }
    if (p > UINT32_MAX || k > 64)
        throw Error(Errc::ParseError, "field descriptor out of range");
    if (!modulus_int)
        return create(static_cast<std::uint32_t>(p), static_cast<unsigned>(k));
    std::vector<std::uint32_t> m;
    std::uint64_t rest = *modulus_int;
    while (rest) {
        m.push_back(static_cast<std::uint32_t>(rest % p));
        rest /= p;
    }
    return create(static_cast<std::uint32_t>(p), static_cast<unsigned>(k), m);
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus))
{
    for (unsigned i = 0; i < k_; ++i)
        q_ *= p_;

    auto to_vec = [&](std::uint32_t v) {
        PVec c(k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            c[i] = v % p_;
            v /= p_;
        }
        trim(c);
        return c;
    };
    auto from_vec = [&](const PVec& c) {
        std::uint32_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            v = v * p_ + c[i];
        return v;
    };

    // Primitive element: first g whose order is exactly q - 1.
    const std::uint64_t order = q_ - 1;
    const auto primes = prime_divisors(order);
    std::uint32_t gen = 1;
    if (order > 1) {
        for (std::uint32_t g = 1; g < q_; ++g) {
            const PVec gv = to_vec(g);
            bool ok = true;
            for (auto l : primes) {
                if (ppowmod(gv, order / l, modulus_, p_) == PVec{1}) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen = g;
                break;
            }
        }
    }

    exp_.assign(2 * order, 0);
    log_.assign(q_, 0);
    const PVec gv = to_vec(gen);
    PVec cur{1};
    for (std::uint64_t i = 0; i < order; ++i) {
        const std::uint32_t v = from_vec(cur);
        exp_[i] = v;
        exp_[i + order] = v;
        log_[v] = static_cast<std::uint32_t>(i);
        cur = pmulmod(cur, gv, modulus_, p_);
    }

    neg_.assign(q_, 0);
    for (std::uint32_t v = 0; v < q_; ++v) {
        PVec c = to_vec(v);
        for (auto& x : c)
            x = (p_ - x) % p_;
        neg_[v] = from_vec(c);
    }

    if (p_ != 2 && k_ > 1 && q_ <= 243) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b)
                add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(Elt{a}, Elt{b}).v;
    }
}

Elt FieldCtx::add_digits(Elt a, Elt b) const noexcept
{
    std::uint32_t x = a.v, y = b.v, out = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return Elt{out};
}

std::uint64_t FieldCtx::modulus_int() const noexcept
{
    std::uint64_t v = 0;
    for (std::size_t i = modulus_.size(); i-- > 0;)
        v = v * p_ + modulus_[i];
    return v;
}

std::string FieldCtx::descriptor() const
{
    return std::to_string(p_) + "^" + std::to_string(k_) + "/" + std::to_string(modulus_int());
}

Elt FieldCtx::element(std::uint32_t encoding) const
{
    if (encoding >= q_)
        throw Error(Errc::IndexOutOfRange,
                    "element " + std::to_string(encoding) + " outside F_" + std::to_string(q_));
    return Elt{encoding};
}

Elt FieldCtx::inv(Elt a) const
{
    if (a.v == 0)
        throw Error(Errc::RangeError, "inverse of zero");
    const std::uint32_t order = q_ - 1;
    return Elt{exp_[(order - log_[a.v]) % order]};
}

Elt FieldCtx::pow(Elt a, std::uint64_t e) const noexcept
{
    if (e == 0)
        return one();
    if (a.v == 0)
        return zero();
    const std::uint64_t order = q_ - 1;
    const std::uint64_t l = (std::uint64_t{log_[a.v]} * (e % order)) % order;
    return Elt{exp_[l]};
}

bool FieldCtx::has_subfield_of_order(std::uint64_t q) const noexcept
{
    std::uint64_t s = 1;
    for (unsigned j = 1; j <= k_; ++j) {
        s *= p_;
        if (s == q)
            return k_ % j == 0;
    }
    return false;
}

Elt FieldCtx::frobenius(Elt x, std::uint64_t q) const
{
    if (!has_subfield_of_order(q))
        throw Error(Errc::NotASubfield,
                    "F_" + std::to_string(q) + " is not a subfield of F_" + std::to_string(q_));
    return pow(x, q);
}

unsigned FieldCtx::degree_over_subfield(Elt x, std::uint64_t q) const
{
    Elt y = frobenius(x, q);
    unsigned e = 1;
    while (y != x) {
        y = pow(y, q);
        ++e;
    }
    return e;
}

std::vector<std::uint32_t> FieldCtx::coeffs(Elt x) const
{
    std::vector<std::uint32_t> c(k_, 0);
    std::uint32_t v = x.v;
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

Elt FieldCtx::from_coeffs(std::span<const std::uint32_t> c) const
{
    if (c.size() > k_)
        throw Error(Errc::DegreeMismatch, "too many coefficients for field element");
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= p_)
            throw Error(Errc::InvalidArgument, "coefficient out of range");
        v = v * p_ + c[i];
    }
    return Elt{v};
}

std::vector<Elt> FieldCtx::elements() const
{
    std::vector<Elt> out(q_);
    for (std::uint32_t v = 0; v < q_; ++v)
        out[v] = Elt{v};
    return out;
}

} // namespace nicensus
