/**
 * Convex piecewise-linear functions f(x) = max_i <x, b_i> + a_i and the
 * argmax combinatorics of their bend loci.
 *
 * Form indices are 0-based throughout the library and in JSON.
 */
#ifndef BENDLOCUS_PLFUN_HPP
#define BENDLOCUS_PLFUN_HPP

#include <compare>
#include <utility>
#include <vector>

#include "bendlocus/polyhedron.hpp"

namespace bendlocus {

class PolyComplex;

class ConvexPLFunction
{
    public:
        ConvexPLFunction(std::size_t d, std::vector<AffineForm> forms);

        std::size_t dim() const { return d_; }
        std::size_t size() const { return forms_.size(); }
        const std::vector<AffineForm>& forms() const { return forms_; }
        const AffineForm& form(std::size_t i) const { return forms_.at(i); }

        friend bool operator==(const ConvexPLFunction&, const ConvexPLFunction&) = default;

    private:
        std::size_t d_;
        std::vector<AffineForm> forms_;
};

/// Sorted, nonempty set of form indices attaining the maximum.
class ArgmaxLabel
{
    public:
        ArgmaxLabel() = default;
        explicit ArgmaxLabel(std::vector<std::size_t> indices);

        const std::vector<std::size_t>& indices() const { return indices_; }
        std::size_t size() const { return indices_.size(); }
        bool contains(std::size_t i) const;
        /// Superset test.
        bool contains(const ArgmaxLabel& other) const;

        ArgmaxLabel with(std::size_t i) const;
        ArgmaxLabel without(std::size_t i) const;

        friend auto operator<=>(const ArgmaxLabel&, const ArgmaxLabel&) = default;

    private:
        std::vector<std::size_t> indices_;
};

std::pair<Rational, ArgmaxLabel> evaluate_with_argmax(const ConvexPLFunction& f, const RatVector& x);

/**
 * Closed cell of the subdivision induced by f for label S:
 * {x : form_i(x) = form_j(x) for i, j in S; form_i(x) >= form_k(x) for
 * i in S, k not in S}. May be empty. Equalities are stored relative to the
 * smallest index of S, one per other member; inequalities one per k not in S.
 */
Polyhedron cell_of_label(const ConvexPLFunction& f, const ArgmaxLabel& s);

/// All labels with |S| >= 2 realized by some point, as a face-closed complex.
PolyComplex bend_locus(const ConvexPLFunction& f);

/// Labels S (|S| >= 1) whose relatively open cell is nonempty, restricted to
/// |S| <= d + 1. Breadth-first over single-index additions and removals,
/// seeded from the labels of sample points.
std::vector<ArgmaxLabel> realized_labels(const ConvexPLFunction& f);

/// Same set by testing every subset of size <= d + 1. Requires r <= 12.
std::vector<ArgmaxLabel> realized_labels_brute_force(const ConvexPLFunction& f);

}   // namespace bendlocus

#endif
