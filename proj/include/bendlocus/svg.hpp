/**
 * Static pictures of planar instances.
 */
#ifndef BENDLOCUS_SVG_HPP
#define BENDLOCUS_SVG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bendlocus/morse.hpp"

namespace bendlocus {

class UnsupportedDimension : public std::invalid_argument
{
    public:
        explicit UnsupportedDimension(const std::string& what) : std::invalid_argument(what) {}
};

struct SvgOverlay
{
    std::optional<Polyhedron> polytope;
    std::vector<CriticalPoint> critical_points;
};

/// The bend loci of fs inside [-m, m]^2. Edges are colored by function,
/// vertices by the total label size sum |S_k| - 1 (a crossing of two loci
/// and a triple point of one locus differ). Output depends only on the input.
/// Throws UnsupportedDimension unless d = 2, BoxTooSmall if a vertex lies
/// outside the box.
std::string render_svg(const std::vector<ConvexPLFunction>& fs, const Rational& m, const SvgOverlay& overlay = {});

void render_svg_file(const std::vector<ConvexPLFunction>& fs, const Rational& m, const std::string& path,
                     const SvgOverlay& overlay = {});

}   // namespace bendlocus

#endif
