#ifndef NICENSUS_GF_HPP
#define NICENSUS_GF_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nicensus {

/// Element of a finite field, stored as its integer encoding: the base-p
/// evaluation of the coefficient vector over the prime subfield.
struct Elt {
    std::uint32_t v = 0;

    friend constexpr auto operator<=>(Elt, Elt) = default;
};

class FieldCtx;
using Field = std::shared_ptr<const FieldCtx>;

/// Largest field cardinality the enumeration-backed routines accept.
inline constexpr std::uint64_t max_field_size = std::uint64_t{1} << 20;

/// The finite field F_{p^k} = F_p[t]/(modulus).
///
/// Contexts are immutable once built and shared by handle; elements carry no
/// back-pointer, so every operation goes through the context. Multiplication
/// uses discrete log tables, addition is XOR in characteristic two, modular in
/// prime fields, and a lookup table (or digitwise sum) otherwise.
class FieldCtx {
public:
    /// Builds F_{p^k}. Without a modulus, the smallest monic irreducible of
    /// degree k over F_p is used, comparing coefficients low degree first.
    /// `modulus` lists the F_p coefficients low degree first, including the
    /// leading 1.
    static Field create(std::uint32_t p, unsigned k,
                        std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    /// Parses "p^k", "p^k/modulus-int", or a bare prime power "q".
    static Field from_descriptor(std::string_view descriptor);

    /// Canonical field of the given prime-power order.
    static Field of_order(std::uint64_t q);

    std::uint32_t p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint32_t size() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    std::uint64_t modulus_int() const noexcept;
    /// "p^k/modulus-int"; round-trips through from_descriptor.
    std::string descriptor() const;

    bool same_as(const FieldCtx& other) const noexcept
    {
        return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
    }

    Elt zero() const noexcept { return Elt{0}; }
    Elt one() const noexcept { return Elt{1}; }
    Elt element(std::uint32_t encoding) const;
    /// Generator of the multiplicative group chosen during construction.
    Elt primitive() const noexcept { return Elt{exp_[1]}; }

    Elt add(Elt a, Elt b) const noexcept
    {
        if (p_ == 2)
            return Elt{a.v ^ b.v};
        if (k_ == 1) {
            std::uint32_t s = a.v + b.v;
            return Elt{s >= p_ ? s - p_ : s};
        }
        if (!add_table_.empty())
            return Elt{add_table_[static_cast<std::size_t>(a.v) * q_ + b.v]};
        return add_digits(a, b);
    }
    Elt neg(Elt a) const noexcept { return Elt{neg_[a.v]}; }
    Elt sub(Elt a, Elt b) const noexcept { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const noexcept
    {
        if (a.v == 0 || b.v == 0)
            return Elt{0};
        return Elt{exp_[log_[a.v] + log_[b.v]]};
    }
    /// Throws RangeError on zero.
    Elt inv(Elt a) const;
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, std::uint64_t e) const noexcept;

    /// x^q where q must be the order of a subfield.
    Elt frobenius(Elt x, std::uint64_t q) const;
    /// Smallest e >= 1 with x^(q^e) = x.
    unsigned degree_over_subfield(Elt x, std::uint64_t q) const;
    bool has_subfield_of_order(std::uint64_t q) const noexcept;

    /// Coefficients over F_p, low degree first, length k.
    std::vector<std::uint32_t> coeffs(Elt x) const;
    Elt from_coeffs(std::span<const std::uint32_t> c) const;

    std::vector<Elt> elements() const;

private:
    FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);

    Elt add_digits(Elt a, Elt b) const noexcept;

    std::uint32_t p_;
    unsigned k_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_; // length 2(q-1)
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> add_table_;
};

bool is_prime(std::uint64_t n) noexcept;
/// Returns (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q) noexcept;
/// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Monic irreducibility over F_p of a coefficient vector (low degree first).
bool is_irreducible_mod_p(std::span<const std::uint32_t> f, std::uint32_t p);

} // namespace nicensus

#endif
