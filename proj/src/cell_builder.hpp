// Internal helpers shared by the complex constructors.
#ifndef BENDLOCUS_SRC_CELL_BUILDER_HPP
#define BENDLOCUS_SRC_CELL_BUILDER_HPP

#include <optional>
#include <vector>

#include "bendlocus/complex.hpp"

namespace bendlocus::detail {

struct OpenCell
{
    RatVector point;
    int dim = 0;
    std::vector<RatVector> basis;
};

/// Optimal (eps, x) of: max eps with the equalities of g, every inequality
/// >= eps, eps <= 1. nullopt when the equalities are inconsistent.
std::optional<std::pair<Rational, RatVector>> epsilon_lp(const Polyhedron& g);

/// Nonemptiness of the open cell of g, with its dimension and span basis.
/// Optionally reports whether the closed polyhedron g is nonempty.
std::optional<OpenCell> probe(const Polyhedron& g, bool* closed_nonempty = nullptr);

/// Closed geometry of an argmax tuple (no clip facets).
Polyhedron label_geometry(const std::vector<ConvexPLFunction>& fs, const std::vector<ArgmaxLabel>& labels);

/// Adds clip facets: tight ones as equalities, the rest as inequalities.
Polyhedron with_clip(const Polyhedron& g, const std::vector<AffineForm>& clip, const std::vector<std::size_t>& tight);

Cell make_cell(CellLabel label, Polyhedron geometry, OpenCell open);

/**
 * Sort cells by (dimension, label), assign ids, check the dimension formula,
 * decide boundedness, and compute the face lattice.
 */
void finalize(PolyComplex& c);

int incidence_sign(const Cell& cell, const Cell& facet);

}   // namespace bendlocus::detail

#endif
