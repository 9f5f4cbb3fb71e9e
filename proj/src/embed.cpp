#include "nicensus/embed.hpp"

#include "nicensus/error.hpp"
#include "nicensus/galois.hpp"

#include <algorithm>

namespace nicensus {

Mat regular_rep(Elt alpha, const TowerCtx& tower)
{
    const FieldCtx& K = *tower.ext();
    const int b = static_cast<int>(tower.degree());
    Mat out(tower.base(), b, b);
    for (int j = 0; j < b; ++j) {
        const auto c = tower.coords(K.mul(tower.basis()[static_cast<std::size_t>(j)], alpha));
        for (int i = 0; i < b; ++i)
            out(j, i) = c[static_cast<std::size_t>(i)];
    }
    return out;
}

Mat blow_up(const Mat& x, const TowerCtx& tower)
{
    if (!x.ctx().same_as(*tower.ext()))
        throw Error(Errc::FieldMismatch, "matrix over F_" + std::to_string(x.ctx().size()) +
                                             " but tower extension is F_" + std::to_string(tower.ext()->size()));
    const int c = x.rows();
    const int b = static_cast<int>(tower.degree());
    Mat out(tower.base(), b * c, b * c);
    for (int i = 0; i < c; ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            if (x(i, j) == Elt{0})
                continue;
            const Mat block = regular_rep(x(i, j), tower);
            for (int u = 0; u < b; ++u)
                for (int v = 0; v < b; ++v)
                    out(i * b + u, j * b + v) = block(u, v);
        }
    }
    return out;
}

namespace {

int t_multiplicity(const Poly& c)
{
    int m = 0;
    while (m <= c.degree() && c[m] == Elt{0})
        ++m;
    return m;
}

} // namespace

PCMembership pc_membership(const Mat& x, const TowerCtx& tower, DegreeThreshold threshold)
{
    const Mat big = blow_up(x, tower);
    const Poly cb = charpoly(big);
    const int b = static_cast<int>(tower.degree());
    const int c = x.rows();
    const int dim_inv = (cb.degree() - t_multiplicity(cb)) / b;
    const int bound = threshold == DegreeThreshold::InvertiblePart ? dim_inv : c;

    auto factors = factorize(cb).factors;
    std::stable_sort(factors.begin(), factors.end(),
                     [](const Factor& a, const Factor& b2) { return a.poly.degree() > b2.poly.degree(); });
    for (const auto& [f, mult] : factors) {
        const int deg = f.degree();
        if (deg % b != 0)
            continue;
        const int r = deg / b;
        if (2 * r <= bound)
            break;
        if (deg == 1 && f[0] == Elt{0})
            continue; // f = t
        if (!is_primary_cyclic(big, f, cb))
            continue;
        PCMembership out;
        out.member = true;
        out.f = f;
        out.r = r;
        // With r above half the invertible dimension only one conjugate of g
        // can divide charpoly(X), so the gcd is that conjugate.
        out.g = gcd(tower.lift(f), charpoly(x));
        return out;
    }
    return {};
}

bool in_pc_set(const Mat& x, const Poly& f, const TowerCtx& tower)
{
    const Mat big = blow_up(x, tower);
    return is_primary_cyclic(big, f);
}

PropositionCheck proposition_check(const Mat& x, const Poly& f, const TowerCtx& tower)
{
    if (!f.ctx().same_as(*tower.base()))
        throw Error(Errc::FieldMismatch, "f must be over the base field");
    if (!f.is_monic() || !is_irreducible(f))
        throw Error(Errc::NotIrreducible, to_text(f) + " is not monic irreducible");
    const Mat big = blow_up(x, tower);
    const Poly cb = charpoly(big);
    if (!divides(f, cb))
        throw Error(Errc::NotADivisor, to_text(f) + " does not divide the blown-up charpoly");

    PropositionCheck out{is_primary_cyclic(big, f, cb), false, std::nullopt};
    const int b = static_cast<int>(tower.degree());
    if (f.degree() % b != 0)
        return out;
    const Poly cx = charpoly(x);
    for (const auto& [g, mult] : factorize(tower.lift(f)).factors) {
        if (g.degree() != f.degree() / b)
            continue;
        if (!is_primary_cyclic(x, g, cx))
            continue;
        bool ok = true;
        for (unsigned tau = 1; tau < tower.degree() && ok; ++tau) {
            const Poly gt = galois_conjugate(g, tower, tau);
            if (gt == g || divides(gt, cx))
                ok = false;
        }
        if (ok) {
            out.conditions = true;
            out.g = g;
            break;
        }
    }
    return out;
}

} // namespace nicensus
