#ifndef NICENSUS_GALOIS_HPP
#define NICENSUS_GALOIS_HPP

#include "nicensus/poly.hpp"
#include "nicensus/tower.hpp"

namespace nicensus {

/// Applies x -> x^(q^i) to every coefficient of g. Throws NotASubfield when
/// F_q is not a subfield of g's field.
Poly galois_conjugate(const Poly& g, std::uint64_t q, unsigned i);
Poly galois_conjugate(const Poly& g, const TowerCtx& tower, unsigned i);

/// Length of the Gal(K/F)-orbit of g (a divisor of the tower degree).
unsigned orbit_length(const Poly& g, const TowerCtx& tower);

struct OrbitProduct {
    Poly product;          // over F, via the tower's embedding
    unsigned orbit_length; // b when the orbit is regular
    bool irreducible;      // over F
};

/// Product of g^tau over all tau in Gal(K/F), descended to F.
/// Throws NotIrreducible when g is not monic irreducible over K.
OrbitProduct galois_orbit_product(const Poly& g, const TowerCtx& tower);

/// Number of g in Irr_r(q^b) whose Galois orbit over F_q has full length b,
/// counted by enumeration.
Integer count_regular_orbit_irr(int r, unsigned b, std::uint64_t q,
                                std::uint64_t budget = default_enumeration_budget);

/// Enumerated regular-orbit count next to the two candidate closed forms
/// b*|Irr_br(q)| and r*|Irr_br(q)|.
struct RegularOrbitReport {
    int r;
    unsigned b;
    std::uint64_t q;
    Integer enumerated;
    Integer b_times_irr;
    Integer r_times_irr;

    bool supports_b_form() const { return enumerated == b_times_irr; }
    bool supports_r_form() const { return enumerated == r_times_irr; }
};

RegularOrbitReport regular_orbit_report(int r, unsigned b, std::uint64_t q,
                                        std::uint64_t budget = default_enumeration_budget);

} // namespace nicensus

#endif
