#ifndef NICENSUS_TOWER_HPP
#define NICENSUS_TOWER_HPP

#include "nicensus/gf.hpp"
#include "nicensus/poly.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nicensus {

class TowerCtx;
using Tower = std::shared_ptr<const TowerCtx>;

/// The extension K = F_{q^b} viewed over F = F_q.
///
/// F is embedded in K by sending the generator t of F to the smallest root
/// (by encoding) of F's modulus in K. The F-basis of K is the power basis
/// 1, beta, ..., beta^(b-1), beta the smallest root in K of the first monic
/// irreducible of degree b over F.
class TowerCtx {
public:
    /// base = F_q; ext = F_{q^b} with its canonical modulus.
    static Tower create(Field base, unsigned b);
    static Tower create(Field base, Field ext);
    /// "Q/q", e.g. "4/2" or "16/4".
    static Tower from_descriptor(std::string_view text);

    const Field& base() const noexcept { return base_; }
    const Field& ext() const noexcept { return ext_; }
    unsigned degree() const noexcept { return b_; }
    std::uint64_t q() const noexcept { return base_->size(); }
    std::string descriptor() const;

    const std::vector<Elt>& basis() const noexcept { return basis_; }
    const Poly& basis_modulus() const noexcept { return basis_modulus_; }

    Elt embed(Elt x) const { return embed_[x.v]; }
    bool in_base(Elt y) const { return restrict_[y.v] >= 0; }
    /// Inverse of embed; throws NotASubfield when y lies outside the image.
    Elt restrict(Elt y) const;

    /// Coordinates over F in the power basis.
    std::vector<Elt> coords(Elt y) const;
    Elt from_coords(const std::vector<Elt>& c) const;

    /// sigma^i: y -> y^(q^i), the generator of Gal(K/F) raised to i.
    Elt sigma(Elt y, unsigned i) const;

    /// Lifts a polynomial over F to K.
    Poly lift(const Poly& f) const;
    /// Re-expresses a polynomial over K with coefficients in F as one over F.
    Poly descend(const Poly& g) const;

private:
    TowerCtx() = default;

    Field base_;
    Field ext_;
    unsigned b_ = 1;
    Poly basis_modulus_{nullptr};
    std::vector<Elt> basis_;
    std::vector<Elt> embed_;
    std::vector<std::int64_t> restrict_;
    std::vector<std::uint32_t> coord_index_; // packed base-q digits, coordinate 0 least significant
};

} // namespace nicensus

#endif
