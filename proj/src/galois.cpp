#include "nicensus/galois.hpp"

#include "nicensus/error.hpp"

namespace nicensus {

Poly galois_conjugate(const Poly& g, std::uint64_t q, unsigned i)
{
    const FieldCtx& K = g.ctx();
    if (!K.has_subfield_of_order(q))
        throw Error(Errc::NotASubfield,
                    "F_" + std::to_string(q) + " is not a subfield of F_" + std::to_string(K.size()));
    std::vector<Elt> c(g.coeffs());
    for (auto& x : c)
        for (unsigned s = 0; s < i; ++s)
            x = K.pow(x, q);
    return Poly(g.field(), std::move(c));
}

Poly galois_conjugate(const Poly& g, const TowerCtx& tower, unsigned i)
{
    if (!g.ctx().same_as(*tower.ext()))
        throw Error(Errc::NotASubfield, "polynomial is not over the tower's extension field");
    return galois_conjugate(g, tower.q(), i % tower.degree());
}

unsigned orbit_length(const Poly& g, const TowerCtx& tower)
{
    for (unsigned i = 1; i < tower.degree(); ++i)
        if (galois_conjugate(g, tower, i) == g)
            return i;
    return tower.degree();
}

OrbitProduct galois_orbit_product(const Poly& g, const TowerCtx& tower)
{
    if (!g.is_monic() || !is_irreducible(g))
        throw Error(Errc::NotIrreducible, to_text(g) + " is not monic irreducible");
    Poly prod = Poly::constant(g.field(), Elt{1});
    for (unsigned i = 0; i < tower.degree(); ++i)
        prod = prod * galois_conjugate(g, tower, i);
    Poly f = tower.descend(prod);
    const unsigned len = orbit_length(g, tower);
    return {f, len, is_irreducible(f)};
}

Integer count_regular_orbit_irr(int r, unsigned b, std::uint64_t q, std::uint64_t budget)
{
    const Field base = FieldCtx::of_order(q);
    const Tower tower = TowerCtx::create(base, b);
    Integer count = 0;
    for (const auto& g : irr_enumerate(r, tower->ext(), budget))
        if (orbit_length(g, *tower) == b)
            ++count;
    return count;
}

RegularOrbitReport regular_orbit_report(int r, unsigned b, std::uint64_t q, std::uint64_t budget)
{
    const Integer irr = irr_count(r * static_cast<int>(b), Integer(static_cast<unsigned long>(q)));
    return {r, b, q, count_regular_orbit_irr(r, b, q, budget), irr * b, irr * r};
}

} // namespace nicensus
