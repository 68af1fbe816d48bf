/**
 * Labeled polyhedral cell complexes.
 *
 * A geometric cell is the relatively open set of points whose argmax labels
 * (one per hypersurface) and tight clip facets (box or polyhedron facets)
 * are exactly the cell's label. Its `geometry` is the closed polyhedron of
 * that label; the open cell is recovered by making every inequality strict.
 * Faces correspond exactly to componentwise label containment.
 *
 * Complexes can also carry abstract cells (a cone apex, cones over boundary
 * cells, simplices of a triangulation) whose incidences are combinatorial.
 */
#ifndef BENDLOCUS_COMPLEX_HPP
#define BENDLOCUS_COMPLEX_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bendlocus/linalg.hpp"
#include "bendlocus/plfun.hpp"
#include "bendlocus/polyhedron.hpp"

namespace bendlocus {

class DimensionMismatch : public std::invalid_argument
{
    public:
        explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class UnboundedCell : public std::runtime_error
{
    public:
        explicit UnboundedCell(const std::string& what) : std::runtime_error(what) {}
};

class BoxTooSmall : public std::runtime_error
{
    public:
        explicit BoxTooSmall(const std::string& what) : std::runtime_error(what) {}
};

class NotTruncated : public std::runtime_error
{
    public:
        explicit NotTruncated(const std::string& what) : std::runtime_error(what) {}
};

struct CellLabel
{
    std::vector<ArgmaxLabel> argmax;   // S_1 .. S_n
    std::vector<std::size_t> facets;   // sorted clip facet ids the cell lies on

    /// Componentwise superset: every S_k and the facet set contain `other`'s.
    bool contains(const CellLabel& other) const;
    /// sum_k (|S_k| - 1) + |facets|
    std::size_t codimension_count() const;

    friend auto operator<=>(const CellLabel&, const CellLabel&) = default;
};

enum class CellKind { Geometric, Apex, Cone, Simplex };
enum class ClipKind { None, Box, Polyhedron };

struct Cell
{
    std::size_t id = 0;
    CellKind kind = CellKind::Geometric;
    CellLabel label;
    std::optional<Polyhedron> geometry;
    int dim = 0;
    bool bounded = true;
    bool boundary_marker = false;
    std::optional<RatVector> interior_point;
    std::vector<RatVector> orientation;   // ordered basis of the linear span
    std::vector<std::size_t> vertices;    // simplices: input vertex ids in pulling order
    std::optional<std::size_t> cone_base;
};

/// `facet` is a codimension-one face of `cell`; `sign` is the incidence number.
struct FacePair
{
    std::size_t cell = 0;
    std::size_t facet = 0;
    int sign = 0;

    friend auto operator<=>(const FacePair&, const FacePair&) = default;
};

class PolyComplex
{
    public:
        std::size_t ambient_dim = 0;
        std::size_t n = 0;
        ClipKind clip = ClipKind::None;
        std::vector<AffineForm> clip_facets;   // g_j(x) >= 0
        std::vector<Cell> cells;
        std::vector<FacePair> face_pairs;
        /// Cells whose dimension disagrees with d - sum(|S_k|-1) - |facets|.
        std::vector<std::string> genericity_violations;

        bool empty() const { return cells.empty(); }
        int top_dim() const;
        std::size_t count(int dim) const;
        std::vector<std::size_t> cells_of_dim(int dim) const;
        long euler_characteristic() const;
        bool all_bounded() const;

        /// facets[c] = {(facet id, sign)} for every cell.
        std::vector<std::vector<std::pair<std::size_t, int>>> facet_lists() const;
};

/// Integer boundary matrices. boundary[k] maps k-chains to (k-1)-chains:
/// rows index cells_by_dim[k-1], columns index cells_by_dim[k].
struct ChainComplex
{
    std::vector<std::vector<std::size_t>> cells_by_dim;
    std::vector<IntMatrix> boundary;

    int top_dim() const { return static_cast<int>(cells_by_dim.size()) - 1; }
};

/// Intersection of the bend loci of n functions in R^d, 1 <= n < d.
PolyComplex complete_intersection(const std::vector<ConvexPLFunction>& fs);

/// All nonempty cells with every |S_k| >= 1: the subdivision of R^d induced
/// by the hypersurfaces (the complete intersection is the part with every
/// |S_k| >= 2).
PolyComplex common_refinement(const std::vector<ConvexPLFunction>& fs);

/// Cells of the complete intersection with no restriction on n relative to
/// d (used for bend loci in R^1 and for links).
PolyComplex intersection_complex(const std::vector<ConvexPLFunction>& fs);

/// Incidences by label containment and dimension, with orientation signs.
std::vector<FacePair> face_lattice(const PolyComplex& c);

/// Checks by LP that the closed geometry of every recorded facet lies in the
/// closure of its cell. Incidences involving abstract cells are skipped.
bool verify_face_inclusions(const PolyComplex& c);

/// Throws UnboundedCell if any cell is unbounded.
ChainComplex boundary_matrices(const PolyComplex& c);

/// Same, restricted to cells with keep[id] true (a quotient by the rest).
ChainComplex boundary_matrices(const PolyComplex& c, const std::vector<bool>& keep);

/// Cells with keep[id] true, renumbered in order, with the incidences among
/// them. The selection should be closed under faces.
PolyComplex subcomplex(const PolyComplex& c, const std::vector<bool>& keep);

PolyComplex compact_subcomplex(const PolyComplex& c);

/// Box facets: 2i is x_i + M >= 0 and 2i+1 is M - x_i >= 0.
std::vector<AffineForm> box_facets(std::size_t d, const Rational& m);

/// Intersect every cell with [-M, M]^d; cells on the box boundary get
/// their box facets in the label and boundary_marker set.
/// Throws BoxTooSmall if some 0-cell has a coordinate of absolute value >= M.
PolyComplex truncate_to_box(const PolyComplex& c, const Rational& m);

/// Refine by the facets of a full-dimensional polyhedron p (given by
/// inequalities only) and keep the part inside p.
PolyComplex clip_to_polyhedron(const PolyComplex& c, const Polyhedron& p);

/// Adds an apex and a cone over every boundary-marked cell.
/// Throws NotTruncated if the complex has unbounded cells.
PolyComplex cone_off(const PolyComplex& c);

/// Pulling triangulation using the lexicographically smallest vertex of
/// each cell. Throws UnboundedCell on unbounded input.
PolyComplex triangulate(const PolyComplex& c);

/// Largest over cells of the least infinity-norm of a point in the closed
/// cell (1 for an empty complex). A box [-M, M]^d with M > this meets
/// every cell.
Rational box_radius(const PolyComplex& c);

/// Open-cell nonemptiness probe: equalities of g hold and all inequalities
/// of g strictly. Returns the witness point when nonempty.
std::optional<RatVector> open_cell_point(const Polyhedron& g);

}   // namespace bendlocus

#endif
