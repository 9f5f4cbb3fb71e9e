#ifndef NICENSUS_EMBED_HPP
#define NICENSUS_EMBED_HPP

#include "nicensus/matrix.hpp"
#include "nicensus/tower.hpp"

#include <optional>

namespace nicensus {

/// Matrix over F of multiplication by alpha in K, in the tower's power basis
/// (row j holds the coordinates of basis_j * alpha).
Mat regular_rep(Elt alpha, const TowerCtx& tower);

/// M(c, q^b) -> M(bc, q): each entry replaced by its regular representation.
/// Throws FieldMismatch unless x is over the tower's extension field.
Mat blow_up(const Mat& x, const TowerCtx& tower);

/// Which dimension the "large degree" condition r > dim/2 is measured against.
enum class DegreeThreshold {
    /// dim over K of V_inv(X); the set used for singular matrices.
    InvertiblePart,
    /// c itself; only differs from the above on singular matrices.
    FullDimension,
};

struct PCMembership {
    bool member = false;
    std::optional<Poly> f; // over F, degree b*r
    std::optional<Poly> g; // over K, the Galois representative dividing charpoly(X)
    std::optional<int> r;
};

/// Is blow_up(X) f-primary cyclic for some f != t of degree b*r with r above
/// the threshold? Candidates are tried from the largest degree down.
PCMembership pc_membership(const Mat& x, const TowerCtx& tower,
                           DegreeThreshold threshold = DegreeThreshold::InvertiblePart);

/// X_{bc,q} is f-primary cyclic (the defining test of N(c,q,b;f)).
bool in_pc_set(const Mat& x, const Poly& f, const TowerCtx& tower);

/// Both sides of the blow-up primary cyclicity criterion for one (X, f).
struct PropositionCheck {
    bool direct;     // blow_up(X) is f-primary cyclic
    bool conditions; // some g | f over K of degree deg f / b meets (i) and (ii)
    std::optional<Poly> g;

    bool agree() const noexcept { return direct == conditions; }
};

/// Throws NotIrreducible when f is not monic irreducible over F and
/// NotADivisor when f does not divide charpoly(blow_up(X)).
PropositionCheck proposition_check(const Mat& x, const Poly& f, const TowerCtx& tower);

} // namespace nicensus

#endif
