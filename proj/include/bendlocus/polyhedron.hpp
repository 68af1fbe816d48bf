/**
 * H-representation polyhedra over the rationals and an exact simplex-based
 * LP oracle for feasibility, optimization, dimension, and recession cones.
 */
#ifndef BENDLOCUS_POLYHEDRON_HPP
#define BENDLOCUS_POLYHEDRON_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "bendlocus/linalg.hpp"
#include "bendlocus/rational.hpp"

namespace bendlocus {

/// x -> <x, b> + a
struct AffineForm
{
    RatVector b;
    Rational a;

    Rational operator()(const RatVector& x) const { return dot(b, x) + a; }
    std::size_t dim() const { return b.size(); }

    AffineForm operator-(const AffineForm& other) const { return {b - other.b, a - other.a}; }
    AffineForm operator-() const { return {Rational(-1) * b, -a}; }
    friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// {x : <x, b> + a = 0}; b must be nonzero.
struct Hyperplane
{
    AffineForm form;

    explicit Hyperplane(AffineForm f) : form(std::move(f))
    {
        if (is_zero(form.b))
            throw std::invalid_argument("hyperplane with zero normal");
    }
};

/// {x : e(x) = 0 for e in equalities, g(x) >= 0 for g in inequalities}
struct Polyhedron
{
    std::size_t ambient_dim = 0;
    std::vector<AffineForm> equalities;
    std::vector<AffineForm> inequalities;

    Polyhedron() = default;
    Polyhedron(std::size_t dim, std::vector<AffineForm> eq, std::vector<AffineForm> ineq);

    bool contains(const RatVector& x) const;

    /// Rows are the gradients of the equalities.
    RatMatrix equality_matrix() const;
};

class EmptyPolyhedron : public std::runtime_error
{
    public:
        explicit EmptyPolyhedron(const std::string& what = "empty polyhedron") : std::runtime_error(what) {}
};

enum class LPStatus { Optimal, Infeasible, Unbounded };
enum class Sense { Maximize, Minimize };

struct LPOutcome
{
    LPStatus status = LPStatus::Infeasible;
    std::optional<Rational> value;
    std::optional<RatVector> witness;
};

/**
 * Exact linear optimization of <objective, x> over p.
 *
 * The problem is solved through its dual in standard form by a two-phase
 * tableau simplex with Bland's rule, so it always terminates. A returned
 * witness satisfies every constraint of p exactly.
 */
LPOutcome lp_optimize(const RatVector& objective, const Polyhedron& p, Sense sense);

/// Affine dimension; -1 when empty.
int dimension(const Polyhedron& p);

/// Indices of inequalities that hold with equality on all of p.
/// Throws EmptyPolyhedron when p is empty.
std::vector<std::size_t> implied_equalities(const Polyhedron& p);

/// A point satisfying all non-implied inequalities strictly.
/// Throws EmptyPolyhedron when p is empty.
RatVector relative_interior_point(const Polyhedron& p);

/// {v : E v = 0, G v >= 0}. Throws EmptyPolyhedron when p is empty.
Polyhedron recession_cone(const Polyhedron& p);

/// True iff the recession cone is {0}. Throws EmptyPolyhedron when empty.
bool is_bounded(const Polyhedron& p);

namespace lp {

/**
 * Low-level entry point: maximize <c, z> subject to <rows[i], z> <= rhs[i].
 * z is free. This is what the cell enumerator calls in its inner loop.
 */
LPOutcome maximize(const std::vector<RatVector>& rows, const RatVector& rhs, const RatVector& c);

/// Number of LP solves performed by this thread (for profiling).
std::size_t solve_count();

}   // namespace lp

}   // namespace bendlocus

#endif
