/**
 * Seeded random instances on a rational grid and exact genericity checks.
 */
#ifndef BENDLOCUS_GENERATOR_HPP
#define BENDLOCUS_GENERATOR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bendlocus/complex.hpp"

namespace bendlocus {

/// Counter-based generator: the i-th draw of a stream is a SplitMix64
/// finalizer applied to key + i * golden, so draws do not depend on the
/// platform or on how many other streams were used.
class Rng
{
    public:
        explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

        std::uint64_t next();
        /// Uniform on [0, n) by rejection; n > 0.
        std::uint64_t below(std::uint64_t n);
        /// Uniform on [lo, hi].
        std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
        /// Independent stream derived from this one's key.
        Rng split(std::uint64_t stream) const;

    private:
        std::uint64_t key_;
        std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

struct InstanceSpec
{
    std::size_t d = 2;
    std::size_t n = 1;
    std::size_t r = 3;
    std::uint64_t seed = 0;
    std::uint64_t coeff_bound = 100;
    std::uint64_t denominator = std::uint64_t{1} << 20;

    /// Throws std::invalid_argument unless d >= 2, 1 <= n < d, r >= 2.
    void validate() const;
    friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

class RejectionLimitExceeded : public std::runtime_error
{
    public:
        explicit RejectionLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct GenericityReport
{
    bool transversal = true;
    bool no_parallel_faces = true;
    bool dimension_formula_ok = true;
    /// Alternating cell count of the refinement equals (-1)^d.
    bool euler_ok = true;
    std::vector<std::string> details;

    bool ok() const { return transversal && no_parallel_faces && dimension_formula_ok && euler_ok; }
};

/// Pairwise differences b_i - b_j of different hypersurfaces, and of each
/// hypersurface against the facet normals of p, must not be parallel; every
/// cell of the common refinement (and of its clip by p) must have the
/// dimension its label predicts.
GenericityReport check_genericity(const std::vector<ConvexPLFunction>& fs,
                                  const std::optional<Polyhedron>& p = std::nullopt);

/// Same, reusing an already built common refinement of fs.
GenericityReport check_genericity(const std::vector<ConvexPLFunction>& fs, const PolyComplex& refinement,
                                  const std::optional<Polyhedron>& p = std::nullopt);

struct Instance
{
    InstanceSpec spec;
    std::vector<ConvexPLFunction> functions;
    std::size_t attempts = 0;   // draws used, including the accepted one
    GenericityReport genericity;
    PolyComplex refinement;     // common refinement of the functions
};

/// Draws until check_genericity passes (at most 100 draws).
/// Throws RejectionLimitExceeded after that.
Instance generate(const InstanceSpec& spec);

std::vector<ConvexPLFunction> random_instance(const InstanceSpec& spec);

/// Uniform grid rational k / denominator with |k| <= bound * denominator.
Rational random_coefficient(Rng& rng, std::uint64_t bound, std::uint64_t denominator);

/// A simplex {<c_j, x> + e_j >= 0, j = 0..d} with d + 1 positively spanning
/// random normals, containing the cube of half-width `radius` around a
/// random centre within `radius / 2` of the origin.
Polyhedron random_simplex(std::size_t d, const Rational& radius, Rng& rng, std::uint64_t denominator);

/// Uniform grid rational in [2v + 1, 3v + 1].
Rational random_box_half_width(const Rational& v, Rng& rng, std::uint64_t denominator);

/// The subcomplex of the refinement with every |S_k| >= 2.
PolyComplex intersection_part(const PolyComplex& refinement);

}   // namespace bendlocus

#endif
