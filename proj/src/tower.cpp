#include "nicensus/tower.hpp"

#include "nicensus/error.hpp"

#include <charconv>

namespace nicensus {

namespace {

// Smallest root in `field` of a polynomial with coefficients given by `coeff_in_field`.
Elt smallest_root(const Field& field, const std::vector<Elt>& coeffs)
{
    const FieldCtx& K = *field;
    for (std::uint32_t v = 0; v < K.size(); ++v) {
        Elt acc{0};
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = K.add(K.mul(acc, Elt{v}), coeffs[i]);
        if (acc == Elt{0})
            return Elt{v};
    }
    throw Error(Errc::NotASubfield, "polynomial has no root in F_" + std::to_string(K.size()));
}

} // namespace

Tower TowerCtx::create(Field base, unsigned b)
{
    if (b == 0)
        throw Error(Errc::DegreeMismatch, "tower degree must be at least 1");
    std::uint64_t order = 1;
    for (unsigned i = 0; i < base->k() * b; ++i) {
        order *= base->p();
        if (order > max_field_size)
            throw Error(Errc::BudgetExceeded, "extension field exceeds 2^20 elements");
    }
    return create(base, FieldCtx::create(base->p(), base->k() * b));
}

Tower TowerCtx::create(Field base, Field ext)
{
    if (base->p() != ext->p() || ext->k() % base->k() != 0)
        throw Error(Errc::NotASubfield, "F_" + std::to_string(base->size()) + " is not a subfield of F_" +
                                            std::to_string(ext->size()));
    std::shared_ptr<TowerCtx> t(new TowerCtx());
    t->base_ = base;
    t->ext_ = ext;
    t->b_ = ext->k() / base->k();
    const FieldCtx& F = *base;
    const FieldCtx& K = *ext;

    // Embedding: image of t is the smallest root of F's modulus (an F_p polynomial).
    std::vector<Elt> mod_in_k;
    for (auto c : F.modulus())
        mod_in_k.push_back(Elt{c});
    const Elt gamma = smallest_root(ext, mod_in_k);
    t->embed_.resize(F.size());
    t->restrict_.assign(K.size(), -1);
    for (std::uint32_t v = 0; v < F.size(); ++v) {
        const auto c = F.coeffs(Elt{v});
        Elt acc{0};
        for (std::size_t i = c.size(); i-- > 0;)
            acc = K.add(K.mul(acc, gamma), Elt{c[i]});
        t->embed_[v] = acc;
        t->restrict_[acc.v] = v;
    }

    // Power basis from the first irreducible of degree b over F.
    t->basis_modulus_ = t->b_ == 1 ? Poly::t(base) : irr_enumerate(static_cast<int>(t->b_), base).front();
    std::vector<Elt> lifted;
    for (auto c : t->basis_modulus_.coeffs())
        lifted.push_back(t->embed_[c.v]);
    const Elt beta = t->b_ == 1 ? K.one() : smallest_root(ext, lifted);
    t->basis_.resize(t->b_);
    Elt power = K.one();
    for (unsigned j = 0; j < t->b_; ++j) {
        t->basis_[j] = power;
        power = K.mul(power, beta);
    }

    t->coord_index_.assign(K.size(), 0);
    const std::uint64_t q = F.size();
    for (std::uint32_t idx = 0; idx < K.size(); ++idx) {
        std::uint32_t rest = idx;
        Elt acc{0};
        for (unsigned j = 0; j < t->b_; ++j) {
            acc = K.add(acc, K.mul(t->embed_[rest % q], t->basis_[j]));
            rest /= static_cast<std::uint32_t>(q);
        }
        t->coord_index_[acc.v] = idx;
    }
    return t;
}

Tower TowerCtx::from_descriptor(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        throw Error(Errc::ParseError, "tower descriptor must look like Q/q");
    auto parse = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw Error(Errc::ParseError, "bad tower descriptor '" + std::string(text) + "'");
        return v;
    };
    const std::uint64_t big = parse(text.substr(0, slash));
    const std::uint64_t small = parse(text.substr(slash + 1));
    const Field base = FieldCtx::of_order(small);
    const Field ext = FieldCtx::of_order(big);
    return create(base, ext);
}

std::string TowerCtx::descriptor() const
{
    return std::to_string(ext_->size()) + "/" + std::to_string(base_->size());
}

Elt TowerCtx::restrict(Elt y) const
{
    const auto v = restrict_[y.v];
    if (v < 0)
        throw Error(Errc::NotASubfield, "element " + std::to_string(y.v) + " is not in the base field");
    return Elt{static_cast<std::uint32_t>(v)};
}

std::vector<Elt> TowerCtx::coords(Elt y) const
{
    std::vector<Elt> out(b_);
    std::uint32_t rest = coord_index_[y.v];
    const auto q = static_cast<std::uint32_t>(base_->size());
    for (unsigned j = 0; j < b_; ++j) {
        out[j] = Elt{rest % q};
        rest /= q;
    }
    return out;
}

Elt TowerCtx::from_coords(const std::vector<Elt>& c) const
{
    const FieldCtx& K = *ext_;
    Elt acc{0};
    for (std::size_t j = 0; j < c.size() && j < b_; ++j)
        acc = K.add(acc, K.mul(embed(c[j]), basis_[j]));
    return acc;
}

Elt TowerCtx::sigma(Elt y, unsigned i) const
{
    Elt out = y;
    for (unsigned s = 0; s < i % b_; ++s)
        out = ext_->pow(out, base_->size());
    return out;
}

Poly TowerCtx::lift(const Poly& f) const
{
    if (!f.ctx().same_as(*base_))
        throw Error(Errc::FieldMismatch, "polynomial is not over the base field");
    std::vector<Elt> c;
    for (auto x : f.coeffs())
        c.push_back(embed(x));
    return Poly(ext_, std::move(c));
}

Poly TowerCtx::descend(const Poly& g) const
{
    if (!g.ctx().same_as(*ext_))
        throw Error(Errc::FieldMismatch, "polynomial is not over the extension field");
    std::vector<Elt> c;
    for (auto y : g.coeffs())
        c.push_back(restrict(y));
    return Poly(base_, std::move(c));
}

} // namespace nicensus
