/**
 * The distance-product function f(x) = prod_H d(x, H) over the facet
 * hyperplanes of a simplex-like polytope P, restricted to a complete
 * intersection X inside P: critical points, critical values, and the
 * connectivity of the descending links.
 *
 * Critical points on higher-dimensional cells are found in floating point
 * by maximizing log f on the cell's affine hull. Links are rebuilt exactly
 * from the tangent fan with a rational gradient.
 */
#ifndef BENDLOCUS_MORSE_HPP
#define BENDLOCUS_MORSE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bendlocus/complex.hpp"
#include "bendlocus/homology.hpp"

namespace bendlocus {

class NewtonDivergence : public std::runtime_error
{
    public:
        explicit NewtonDivergence(const std::string& what) : std::runtime_error(what) {}
};

/// A maximizer too close to the boundary of its cell to decide membership.
class AmbiguousCriticalPoint : public std::runtime_error
{
    public:
        explicit AmbiguousCriticalPoint(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateGradient : public std::runtime_error
{
    public:
        explicit DegenerateGradient(const std::string& what) : std::runtime_error(what) {}
};

struct MorseSetup
{
    std::vector<ConvexPLFunction> functions;
    Polyhedron p;          // bounded, full-dimensional, inequalities only
    PolyComplex x_in_p;    // X refined by the facets of P

    const std::vector<AffineForm>& hyperplanes() const { return p.inequalities; }
};

/// Builds X (or uses `x` when given) and clips it to p.
/// Throws std::invalid_argument unless p is bounded and full-dimensional.
MorseSetup make_morse_setup(const std::vector<ConvexPLFunction>& fs, const Polyhedron& p,
                            const PolyComplex* x = nullptr);

enum class CriticalKind { Vertex, FaceInterior };

std::string to_string(CriticalKind k);

struct CriticalPoint
{
    std::vector<double> location;
    double value = 0;
    std::size_t host_cell = 0;
    int host_dim = 0;
    CriticalKind kind = CriticalKind::Vertex;
    double residual = 0;
};

/// f at x (product of Euclidean distances to the facet hyperplanes of p).
double morse_value(const Polyhedron& p, const std::vector<double>& x);

/// Vertices of X in int P, then at most one interior maximizer of log f per
/// higher-dimensional cell, ordered by cell id.
/// Throws NewtonDivergence or AmbiguousCriticalPoint.
std::vector<CriticalPoint> critical_points(const MorseSetup& s);

/// True iff all pairwise gaps exceed rel_gap * max |value|.
bool distinct_critical_values(const std::vector<CriticalPoint>& pts, double rel_gap = 1e-6);

struct LinkComplex
{
    PolyComplex complex;              // in dimension d - k - 1
    int expected_connectivity = -2;   // d - k - n - 2
    bool built = false;               // false when the check is vacuous
    std::size_t fan_rays = 0;
    std::size_t descending_rays = 0;
    Rational delta;                   // slice offset
    RatVector gradient;               // rational normal-space gradient
};

/// Tangent fan at cp (normal slice for interior points) cut by the shifted
/// level hyperplane. Throws DegenerateGradient.
LinkComplex link_complex(const MorseSetup& s, const CriticalPoint& cp);

struct LinkCheck
{
    std::size_t cell = 0;
    int host_dim = 0;
    CriticalKind kind = CriticalKind::Vertex;
    int expected = -2;
    ConnectivityLevel observed;
    bool vacuous = true;
    bool pass = true;
    std::size_t descending_rays = 0;
    std::size_t link_vertices = 0;
};

ConnectivityLevel link_connectivity(const LinkComplex& link);

std::vector<LinkCheck> verify_links(const MorseSetup& s, const std::vector<CriticalPoint>& pts);

struct MorseReport
{
    std::vector<CriticalPoint> points;
    bool distinct_values = true;
    std::vector<LinkCheck> links;
    bool overall = false;
    /// Set when the instance is rejected as non-generic.
    std::optional<std::string> rejection;
};

MorseReport morse_report(const MorseSetup& s, double rel_gap = 1e-6);

}   // namespace bendlocus

#endif
