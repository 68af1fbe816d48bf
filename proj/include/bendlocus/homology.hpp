/**
 * Integral cellular homology of chain complexes built from PolyComplex,
 * homological connectivity levels, and a fundamental group heuristic.
 */
#ifndef BENDLOCUS_HOMOLOGY_HPP
#define BENDLOCUS_HOMOLOGY_HPP

#include <climits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bendlocus/complex.hpp"

namespace bendlocus {

class NotSubcomplex : public std::invalid_argument
{
    public:
        explicit NotSubcomplex(const std::string& what) : std::invalid_argument(what) {}
};

class PreconditionFailed : public std::runtime_error
{
    public:
        explicit PreconditionFailed(const std::string& what) : std::runtime_error(what) {}
};

struct HomologyResult
{
    std::vector<std::size_t> betti;                // betti[k], k = 0..top
    std::vector<std::vector<Integer>> torsion;     // invariant factors > 1 of H_k

    std::size_t betti_at(std::size_t k) const { return k < betti.size() ? betti[k] : 0; }
    bool torsion_free_at(std::size_t k) const { return k >= torsion.size() || torsion[k].empty(); }
    long euler_characteristic() const;

    friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
};

HomologyResult homology_groups(const ChainComplex& cc);

/// homology_groups(boundary_matrices(c))
HomologyResult homology(const PolyComplex& c);

/// Homology of c relative to the cells with in_a[id] true.
/// Throws NotSubcomplex if that set is not closed under faces.
HomologyResult relative_homology(const PolyComplex& c, const std::vector<bool>& in_a);

/// -2 empty; -1 nonempty with nonzero reduced H_0; k when reduced H_i = 0
/// for i <= k and H_{k+1} != 0; infinite when all reduced homology vanishes.
struct ConnectivityLevel
{
    static constexpr int infinite = INT_MAX;
    int level = -2;

    bool is_infinite() const { return level == infinite; }
    bool at_least(int k) const { return level >= k; }
    std::string to_string() const;

    friend auto operator<=>(const ConnectivityLevel&, const ConnectivityLevel&) = default;
};

ConnectivityLevel connectivity_level(const HomologyResult& h, bool nonempty);

/// For pairs: (first degree with nonzero relative homology) - 1.
ConnectivityLevel relative_connectivity_level(const HomologyResult& h);

enum class Pi1Verdict { Trivial, Inconclusive };

std::string to_string(Pi1Verdict v);

/**
 * Edge-path presentation of pi_1 from a breadth-first spanning tree of the
 * 1-skeleton, one relation per 2-cell, simplified by Tietze moves (at most
 * 10^4 rewriting steps). Never reports a nontrivial group.
 * Throws PreconditionFailed unless c is bounded, connected and H_1(c) = 0.
 */
Pi1Verdict pi1_trivial_heuristic(const PolyComplex& c);

}   // namespace bendlocus

#endif
