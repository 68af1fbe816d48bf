// Small hand-built instances shared by the tests.
#ifndef BENDLOCUS_TESTS_FIXTURES_HPP
#define BENDLOCUS_TESTS_FIXTURES_HPP

#include <vector>

#include "bendlocus/complex.hpp"
#include "bendlocus/homology.hpp"

namespace fixture {

using namespace bendlocus;

inline RatVector vec(std::initializer_list<long> xs)
{
    RatVector v;
    for (long x : xs)
        v.push_back(Rational(x));
    return v;
}

inline AffineForm form(std::initializer_list<long> b, long a)
{
    return {vec(b), Rational(a)};
}

/// max(x, y, 0)
inline ConvexPLFunction tropical_line()
{
    return ConvexPLFunction(2, {form({1, 0}, 0), form({0, 1}, 0), form({0, 0}, 0)});
}

/// max(x, y, z, 0)
inline ConvexPLFunction tropical_plane()
{
    return ConvexPLFunction(3, {form({1, 0, 0}, 0), form({0, 1, 0}, 0), form({0, 0, 1}, 0), form({0, 0, 0}, 0)});
}

/// A triangle around the origin whose normals avoid the line's edge directions.
inline Polyhedron generic_triangle()
{
    return Polyhedron(2, {}, {form({2, 1}, 7), form({-1, 3}, 9), form({-1, -4}, 11)});
}

/// The symmetric triangle x >= -3, y >= -3, x + y <= 3.
inline Polyhedron symmetric_triangle()
{
    return Polyhedron(2, {}, {form({1, 0}, 3), form({0, 1}, 3), form({-1, -1}, 3)});
}

inline bool boundary_squares_to_zero(const ChainComplex& cc)
{
    for (std::size_t k = 2; k < cc.boundary.size(); ++k)
        if (!(cc.boundary[k - 1] * cc.boundary[k]).is_zero())
            return false;
    return true;
}

inline std::vector<bool> boundary_selector(const PolyComplex& c)
{
    std::vector<bool> sel(c.cells.size());
    for (const auto& cell : c.cells)
        sel[cell.id] = cell.boundary_marker;
    return sel;
}

inline std::vector<std::size_t> betti(const HomologyResult& h)
{
    return h.betti;
}

}   // namespace fixture

#endif
