/**
 * Cell enumeration for complete intersections.
 *
 * Each hypersurface's realized labels are enumerated on their own (see
 * realized_labels); the cells of the intersection are then the nonempty
 * open cells among label tuples, one exact LP probe per tuple. Tuples whose
 * codimension count exceeds d are skipped: they are empty for generic data.
 */
#include <algorithm>
#include <functional>

#include "cell_builder.hpp"

namespace bendlocus {

namespace detail {

std::optional<std::pair<Rational, RatVector>> epsilon_lp(const Polyhedron& g)
{
    // max eps  s.t.  equalities,  g_i(x) >= eps,  eps <= 1
    const std::size_t d = g.ambient_dim;
    std::vector<RatVector> rows;
    RatVector rhs;
    rows.reserve(2 * g.equalities.size() + g.inequalities.size() + 1);
    for (const auto& e : g.equalities)
    {
        RatVector r(e.b);
        r.push_back(Rational(0));
        rows.push_back(r);
        rhs.push_back(-e.a);
        for (auto& x : r)
            x = -x;
        rows.push_back(std::move(r));
        rhs.push_back(e.a);
    }
    for (const auto& f : g.inequalities)
    {
        RatVector r(d + 1);
        for (std::size_t j = 0; j < d; ++j)
            r[j] = -f.b[j];
        r[d] = 1;
        rows.push_back(std::move(r));
        rhs.push_back(f.a);
    }
    RatVector eps(d + 1, Rational(0));
    eps[d] = 1;
    rows.push_back(eps);
    rhs.push_back(Rational(1));
    LPOutcome o = lp::maximize(rows, rhs, eps);
    if (o.status != LPStatus::Optimal)
        return std::nullopt;
    RatVector x(o.witness->begin(), o.witness->begin() + static_cast<std::ptrdiff_t>(d));
    return std::make_pair(*o.value, std::move(x));
}

}   // namespace detail

std::optional<RatVector> open_cell_point(const Polyhedron& g)
{
    auto r = detail::epsilon_lp(g);
    if (!r || r->first <= 0)
        return std::nullopt;
    return std::move(r->second);
}

namespace detail {

std::optional<OpenCell> probe(const Polyhedron& g, bool* closed_nonempty)
{
    auto r = epsilon_lp(g);
    if (closed_nonempty)
        *closed_nonempty = r && r->first >= 0;
    if (!r || r->first <= 0)
        return std::nullopt;
    OpenCell oc;
    oc.point = std::move(r->second);
    RatMatrix eq = g.equality_matrix();
    oc.basis = kernel_basis(eq);
    oc.dim = static_cast<int>(oc.basis.size());
    return oc;
}

Polyhedron label_geometry(const std::vector<ConvexPLFunction>& fs, const std::vector<ArgmaxLabel>& labels)
{
    Polyhedron g;
    g.ambient_dim = fs.front().dim();
    for (std::size_t k = 0; k < fs.size(); ++k)
    {
        Polyhedron part = cell_of_label(fs[k], labels[k]);
        g.equalities.insert(g.equalities.end(), part.equalities.begin(), part.equalities.end());
        g.inequalities.insert(g.inequalities.end(), part.inequalities.begin(), part.inequalities.end());
    }
    return g;
}

Polyhedron with_clip(const Polyhedron& g, const std::vector<AffineForm>& clip, const std::vector<std::size_t>& tight)
{
    Polyhedron out = g;
    for (std::size_t j = 0; j < clip.size(); ++j)
    {
        if (std::binary_search(tight.begin(), tight.end(), j))
            out.equalities.push_back(clip[j]);
        else
            out.inequalities.push_back(clip[j]);
    }
    return out;
}

Cell make_cell(CellLabel label, Polyhedron geometry, OpenCell open)
{
    Cell c;
    c.label = std::move(label);
    c.geometry = std::move(geometry);
    c.dim = open.dim;
    c.interior_point = std::move(open.point);
    c.orientation = std::move(open.basis);
    return c;
}

}   // namespace detail

namespace {

PolyComplex build_intersection(const std::vector<ConvexPLFunction>& fs, std::size_t min_label)
{
    if (fs.empty())
        throw std::invalid_argument("intersection of zero hypersurfaces");
    const std::size_t d = fs.front().dim();
    for (const auto& f : fs)
        if (f.dim() != d)
            throw DimensionMismatch("hypersurfaces live in different ambient dimensions");

    PolyComplex out;
    out.ambient_dim = d;
    out.n = fs.size();

    std::vector<std::vector<ArgmaxLabel>> choices(fs.size());
    for (std::size_t k = 0; k < fs.size(); ++k)
    {
        for (auto& s : realized_labels(fs[k]))
            if (s.size() >= min_label)
                choices[k].push_back(std::move(s));
        if (choices[k].empty())
        {
            detail::finalize(out);
            return out;
        }
    }

    std::vector<ArgmaxLabel> current(fs.size());
    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t k, std::size_t codim) {
        if (k == fs.size())
        {
            Polyhedron g = detail::label_geometry(fs, current);
            if (auto oc = detail::probe(g))
                out.cells.push_back(detail::make_cell(CellLabel{current, {}}, std::move(g), std::move(*oc)));
            return;
        }
        for (const auto& s : choices[k])
        {
            const std::size_t c = codim + s.size() - 1;
            if (c > d)
                continue;
            current[k] = s;
            recurse(k + 1, c);
        }
    };
    recurse(0, 0);
    detail::finalize(out);
    return out;
}

}   // namespace

PolyComplex intersection_complex(const std::vector<ConvexPLFunction>& fs)
{
    return build_intersection(fs, 2);
}

PolyComplex complete_intersection(const std::vector<ConvexPLFunction>& fs)
{
    if (fs.empty())
        throw std::invalid_argument("complete_intersection needs 1 <= n < d");
    for (const auto& f : fs)
        if (f.dim() != fs.front().dim())
            throw DimensionMismatch("hypersurfaces live in different ambient dimensions");
    if (fs.size() >= fs.front().dim())
        throw std::invalid_argument("complete_intersection needs 1 <= n < d");
    return build_intersection(fs, 2);
}

PolyComplex common_refinement(const std::vector<ConvexPLFunction>& fs)
{
    return build_intersection(fs, 1);
}

}   // namespace bendlocus
