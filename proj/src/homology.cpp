#include "bendlocus/homology.hpp"

namespace bendlocus {

long HomologyResult::euler_characteristic() const
{
    long chi = 0;
    for (std::size_t k = 0; k < betti.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(betti[k]);
    return chi;
}

HomologyResult homology_groups(const ChainComplex& cc)
{
    const std::size_t levels = cc.cells_by_dim.size();
    std::vector<std::size_t> rk(levels + 1, 0);   // rk[k] = rank of boundary k
    HomologyResult h;
    h.betti.assign(levels, 0);
    h.torsion.assign(levels, {});
    for (std::size_t k = 1; k < levels; ++k)
    {
        for (const auto& f : invariant_factors(cc.boundary[k]))
        {
            ++rk[k];
            if (f > 1)
                h.torsion[k - 1].push_back(f);
        }
    }
    for (std::size_t k = 0; k < levels; ++k)
        h.betti[k] = cc.cells_by_dim[k].size() - rk[k] - rk[k + 1];
    return h;
}

HomologyResult homology(const PolyComplex& c)
{
    return homology_groups(boundary_matrices(c));
}

HomologyResult relative_homology(const PolyComplex& c, const std::vector<bool>& in_a)
{
    if (in_a.size() != c.cells.size())
        throw std::invalid_argument("relative_homology: selector has the wrong size");
    for (const auto& p : c.face_pairs)
        if (in_a[p.cell] && !in_a[p.facet])
            throw NotSubcomplex("cell " + std::to_string(p.cell) + " is selected but its facet " +
                                std::to_string(p.facet) + " is not");
    std::vector<bool> keep(in_a.size());
    for (std::size_t i = 0; i < in_a.size(); ++i)
        keep[i] = !in_a[i];
    return homology_groups(boundary_matrices(c, keep));
}

std::string ConnectivityLevel::to_string() const
{
    return is_infinite() ? std::string("inf") : std::to_string(level);
}

namespace {

bool vanishes(const HomologyResult& h, std::size_t k, std::size_t reduce)
{
    return h.betti_at(k) == reduce && h.torsion_free_at(k);
}

}   // namespace

ConnectivityLevel connectivity_level(const HomologyResult& h, bool nonempty)
{
    if (!nonempty)
        return {-2};
    if (!vanishes(h, 0, 1))
        return {-1};
    for (std::size_t k = 1; k < h.betti.size(); ++k)
        if (!vanishes(h, k, 0))
            return {static_cast<int>(k) - 1};
    return {ConnectivityLevel::infinite};
}

ConnectivityLevel relative_connectivity_level(const HomologyResult& h)
{
    for (std::size_t k = 0; k < h.betti.size(); ++k)
        if (!vanishes(h, k, 0))
            return {static_cast<int>(k) - 1};
    return {ConnectivityLevel::infinite};
}

std::string to_string(Pi1Verdict v)
{
    return v == Pi1Verdict::Trivial ? "trivial" : "inconclusive";
}

}   // namespace bendlocus
