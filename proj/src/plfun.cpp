#include "bendlocus/plfun.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "bendlocus/complex.hpp"

namespace bendlocus {

ConvexPLFunction::ConvexPLFunction(std::size_t d, std::vector<AffineForm> forms)
    : d_(d), forms_(std::move(forms))
{
    if (forms_.empty())
        throw std::invalid_argument("ConvexPLFunction needs at least one affine form");
    for (const auto& f : forms_)
        if (f.dim() != d_)
            throw DimensionMismatch("ConvexPLFunction: form of dimension " + std::to_string(f.dim()) +
                                    " in R^" + std::to_string(d_));
}

ArgmaxLabel::ArgmaxLabel(std::vector<std::size_t> indices) : indices_(std::move(indices))
{
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (indices_.empty())
        throw std::invalid_argument("ArgmaxLabel must be nonempty");
}

bool ArgmaxLabel::contains(std::size_t i) const
{
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool ArgmaxLabel::contains(const ArgmaxLabel& other) const
{
    return std::includes(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end());
}

ArgmaxLabel ArgmaxLabel::with(std::size_t i) const
{
    auto v = indices_;
    v.push_back(i);
    return ArgmaxLabel(std::move(v));
}

ArgmaxLabel ArgmaxLabel::without(std::size_t i) const
{
    auto v = indices_;
    v.erase(std::remove(v.begin(), v.end(), i), v.end());
    return ArgmaxLabel(std::move(v));
}

std::pair<Rational, ArgmaxLabel> evaluate_with_argmax(const ConvexPLFunction& f, const RatVector& x)
{
    if (x.size() != f.dim())
        throw DimensionMismatch("evaluate_with_argmax: point dimension mismatch");
    std::vector<Rational> values;
    values.reserve(f.size());
    for (const auto& form : f.forms())
        values.push_back(form(x));
    Rational best = *std::max_element(values.begin(), values.end());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == best)
            idx.push_back(i);
    return {best, ArgmaxLabel(std::move(idx))};
}

Polyhedron cell_of_label(const ConvexPLFunction& f, const ArgmaxLabel& s)
{
    for (auto i : s.indices())
        if (i >= f.size())
            throw std::out_of_range("cell_of_label: index beyond the number of forms");
    Polyhedron p;
    p.ambient_dim = f.dim();
    const std::size_t s0 = s.indices().front();
    for (auto i : s.indices())
        if (i != s0)
            p.equalities.push_back(f.form(i) - f.form(s0));
    for (std::size_t k = 0; k < f.size(); ++k)
        if (!s.contains(k))
            p.inequalities.push_back(f.form(s0) - f.form(k));
    return p;
}

PolyComplex bend_locus(const ConvexPLFunction& f)
{
    return intersection_complex({f});
}

std::vector<ArgmaxLabel> realized_labels(const ConvexPLFunction& f)
{
    const std::size_t d = f.dim();
    std::set<ArgmaxLabel> seen, found;
    std::deque<ArgmaxLabel> queue;
    auto visit = [&](const ArgmaxLabel& s) {
        if (!seen.insert(s).second)
            return;
        if (open_cell_point(cell_of_label(f, s)))
        {
            found.insert(s);
            queue.push_back(s);
        }
    };

    // Seeds: the labels of the origin and of the coordinate directions.
    std::vector<RatVector> samples{zero_vector(d)};
    for (std::size_t i = 0; i < d; ++i)
    {
        RatVector e = zero_vector(d);
        e[i] = 1;
        samples.push_back(e);
        samples.push_back(Rational(-1) * e);
    }
    for (const auto& x : samples)
    {
        ArgmaxLabel s = evaluate_with_argmax(f, x).second;
        if (s.size() <= d + 1 && seen.insert(s).second)
        {
            found.insert(s);
            queue.push_back(s);
        }
    }

    while (!queue.empty())
    {
        ArgmaxLabel s = queue.front();
        queue.pop_front();
        if (s.size() <= d)
            for (std::size_t i = 0; i < f.size(); ++i)
                if (!s.contains(i))
                    visit(s.with(i));
        if (s.size() >= 2)
            for (auto i : s.indices())
                visit(s.without(i));
    }
    return {found.begin(), found.end()};
}

std::vector<ArgmaxLabel> realized_labels_brute_force(const ConvexPLFunction& f)
{
    const std::size_t r = f.size();
    if (r > 12)
        throw std::invalid_argument("brute-force label enumeration needs r <= 12");
    std::vector<ArgmaxLabel> out;
    for (unsigned mask = 1; mask < (1u << r); ++mask)
    {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (1u << i))
                idx.push_back(i);
        if (idx.size() > f.dim() + 1)
            continue;
        ArgmaxLabel s(std::move(idx));
        if (open_cell_point(cell_of_label(f, s)))
            out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}   // namespace bendlocus
