#include "bendlocus/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cell_builder.hpp"

namespace bendlocus {

bool CellLabel::contains(const CellLabel& other) const
{
    if (argmax.size() != other.argmax.size())
        return false;
    for (std::size_t k = 0; k < argmax.size(); ++k)
        if (!argmax[k].contains(other.argmax[k]))
            return false;
    return std::includes(facets.begin(), facets.end(), other.facets.begin(), other.facets.end());
}

std::size_t CellLabel::codimension_count() const
{
    std::size_t c = facets.size();
    for (const auto& s : argmax)
        c += s.size() - 1;
    return c;
}

int PolyComplex::top_dim() const
{
    int t = -1;
    for (const auto& c : cells)
        t = std::max(t, c.dim);
    return t;
}

std::size_t PolyComplex::count(int dim) const
{
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [dim](const Cell& c) { return c.dim == dim; }));
}

std::vector<std::size_t> PolyComplex::cells_of_dim(int dim) const
{
    std::vector<std::size_t> out;
    for (const auto& c : cells)
        if (c.dim == dim)
            out.push_back(c.id);
    return out;
}

long PolyComplex::euler_characteristic() const
{
    long chi = 0;
    for (const auto& c : cells)
        chi += (c.dim % 2 == 0) ? 1 : -1;
    return chi;
}

bool PolyComplex::all_bounded() const
{
    return std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.bounded; });
}

std::vector<std::vector<std::pair<std::size_t, int>>> PolyComplex::facet_lists() const
{
    std::vector<std::vector<std::pair<std::size_t, int>>> out(cells.size());
    for (const auto& p : face_pairs)
        out[p.cell].emplace_back(p.facet, p.sign);
    return out;
}

namespace detail {

int incidence_sign(const Cell& cell, const Cell& facet)
{
    const std::size_t d = cell.interior_point->size();
    const std::size_t k = cell.orientation.size();
    RatMatrix basis(d, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < d; ++i)
            basis(i, j) = cell.orientation[j][i];
    auto coords = [&](const RatVector& v) {
        auto x = solve(basis, v);
        if (!x)
            throw std::logic_error("facet direction outside the span of its cell");
        return *x;
    };
    RatMatrix m(k, k);
    RatVector w = coords(*facet.interior_point - *cell.interior_point);
    for (std::size_t i = 0; i < k; ++i)
        m(i, 0) = w[i];
    for (std::size_t j = 1; j < k; ++j)
    {
        RatVector v = coords(facet.orientation[j - 1]);
        for (std::size_t i = 0; i < k; ++i)
            m(i, j) = v[i];
    }
    const int s = sign(determinant(m));
    if (s == 0)
        throw std::logic_error("degenerate facet orientation");
    return s;
}

void finalize(PolyComplex& c)
{
    std::sort(c.cells.begin(), c.cells.end(), [](const Cell& x, const Cell& y) {
        if (x.dim != y.dim)
            return x.dim < y.dim;
        return x.label < y.label;
    });
    for (std::size_t i = 0; i < c.cells.size(); ++i)
        c.cells[i].id = i;

    const long d = static_cast<long>(c.ambient_dim);
    for (const auto& cell : c.cells)
    {
        const long expected = d - static_cast<long>(cell.label.codimension_count());
        if (cell.dim != expected)
        {
            std::string s = "cell " + std::to_string(cell.id) + " has dimension " + std::to_string(cell.dim) +
                            ", expected " + std::to_string(expected);
            c.genericity_violations.push_back(std::move(s));
        }
    }

    c.face_pairs = face_lattice(c);

    // A cell of dimension >= 1 is bounded iff it has a facet and all facets
    // are bounded; an edge additionally needs both endpoints.
    auto facets = c.facet_lists();
    for (auto& cell : c.cells)
    {
        if (cell.dim == 0)
        {
            cell.bounded = true;
            continue;
        }
        const auto& fl = facets[cell.id];
        bool b = !fl.empty();
        if (cell.dim == 1 && fl.size() != 2)
            b = false;
        for (const auto& [f, s] : fl)
            b = b && c.cells[f].bounded;
        cell.bounded = b;
    }
}

}   // namespace detail

std::vector<FacePair> face_lattice(const PolyComplex& c)
{
    std::map<int, std::vector<std::size_t>> by_dim;
    for (const auto& cell : c.cells)
        if (cell.kind == CellKind::Geometric)
            by_dim[cell.dim].push_back(cell.id);

    std::vector<FacePair> out;
    for (const auto& [dim, ids] : by_dim)
    {
        auto lower = by_dim.find(dim - 1);
        if (lower == by_dim.end())
            continue;
        for (auto ci : ids)
            for (auto fi : lower->second)
            {
                const Cell& cell = c.cells[ci];
                const Cell& facet = c.cells[fi];
                if (facet.label.contains(cell.label))
                    out.push_back({ci, fi, detail::incidence_sign(cell, facet)});
            }
    }
    for (const auto& p : c.face_pairs)
        if (c.cells[p.cell].kind != CellKind::Geometric || c.cells[p.facet].kind != CellKind::Geometric)
            out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

bool verify_face_inclusions(const PolyComplex& c)
{
    for (const auto& p : c.face_pairs)
    {
        const Cell& cell = c.cells[p.cell];
        const Cell& facet = c.cells[p.facet];
        if (!cell.geometry || !facet.geometry)
            continue;
        if (facet.dim != cell.dim - 1)
            return false;
        const Polyhedron& g = *facet.geometry;
        auto bounded_by = [&](const AffineForm& form, Sense sense, bool equality) {
            LPOutcome o = lp_optimize(form.b, g, sense);
            if (o.status != LPStatus::Optimal)
                return false;
            const Rational v = *o.value + form.a;
            return equality ? v == 0 : v >= 0;
        };
        for (const auto& e : cell.geometry->equalities)
            if (!bounded_by(e, Sense::Minimize, true) || !bounded_by(e, Sense::Maximize, true))
                return false;
        for (const auto& q : cell.geometry->inequalities)
        {
            LPOutcome o = lp_optimize(q.b, g, Sense::Minimize);
            if (o.status == LPStatus::Unbounded)
                return false;
            if (o.status == LPStatus::Optimal && *o.value + q.a < 0)
                return false;
        }
    }
    return true;
}

ChainComplex boundary_matrices(const PolyComplex& c)
{
    return boundary_matrices(c, std::vector<bool>(c.cells.size(), true));
}

ChainComplex boundary_matrices(const PolyComplex& c, const std::vector<bool>& keep)
{
    if (keep.size() != c.cells.size())
        throw std::invalid_argument("boundary_matrices: keep mask has the wrong size");
    ChainComplex out;
    std::vector<std::size_t> index(c.cells.size(), 0);
    for (const auto& cell : c.cells)
    {
        if (!keep[cell.id])
            continue;
        if (!cell.bounded)
            throw UnboundedCell("cell " + std::to_string(cell.id) + " is unbounded");
        const auto k = static_cast<std::size_t>(cell.dim);
        if (out.cells_by_dim.size() <= k)
            out.cells_by_dim.resize(k + 1);
        index[cell.id] = out.cells_by_dim[k].size();
        out.cells_by_dim[k].push_back(cell.id);
    }
    const std::size_t top = out.cells_by_dim.size();
    out.boundary.resize(top);
    for (std::size_t k = 0; k < top; ++k)
        out.boundary[k] = IntMatrix(k == 0 ? 0 : out.cells_by_dim[k - 1].size(), out.cells_by_dim[k].size());
    for (const auto& p : c.face_pairs)
    {
        if (!keep[p.cell] || !keep[p.facet])
            continue;
        const auto k = static_cast<std::size_t>(c.cells[p.cell].dim);
        out.boundary[k](index[p.facet], index[p.cell]) += p.sign;
    }
    return out;
}

PolyComplex subcomplex(const PolyComplex& c, const std::vector<bool>& keep)
{
    PolyComplex out;
    out.ambient_dim = c.ambient_dim;
    out.n = c.n;
    out.clip = c.clip;
    out.clip_facets = c.clip_facets;
    out.genericity_violations = c.genericity_violations;
    std::vector<std::size_t> remap(c.cells.size(), 0);
    for (const auto& cell : c.cells)
        if (keep[cell.id])
        {
            remap[cell.id] = out.cells.size();
            out.cells.push_back(cell);
            out.cells.back().id = remap[cell.id];
        }
    for (const auto& p : c.face_pairs)
        if (keep[p.cell] && keep[p.facet])
            out.face_pairs.push_back({remap[p.cell], remap[p.facet], p.sign});
    for (auto& cell : out.cells)
        if (cell.cone_base)
            cell.cone_base = remap[*cell.cone_base];
    return out;
}

PolyComplex compact_subcomplex(const PolyComplex& c)
{
    std::vector<bool> keep(c.cells.size());
    for (const auto& cell : c.cells)
        keep[cell.id] = cell.bounded;
    return subcomplex(c, keep);
}

std::vector<AffineForm> box_facets(std::size_t d, const Rational& m)
{
    std::vector<AffineForm> out;
    for (std::size_t i = 0; i < d; ++i)
    {
        RatVector e = zero_vector(d);
        e[i] = 1;
        out.push_back({e, m});
        out.push_back({Rational(-1) * e, m});
    }
    return out;
}

namespace {

PolyComplex clip_complex(const PolyComplex& src, std::vector<AffineForm> clip, ClipKind kind)
{
    if (src.clip != ClipKind::None)
        throw std::invalid_argument("complex is already clipped");
    PolyComplex out;
    out.ambient_dim = src.ambient_dim;
    out.n = src.n;
    out.clip = kind;
    out.clip_facets = std::move(clip);
    const std::size_t m = out.clip_facets.size();

    auto compatible = [&](const std::vector<std::size_t>& t, std::size_t j) {
        if (kind != ClipKind::Box)
            return true;
        return !std::binary_search(t.begin(), t.end(), j ^ 1u);
    };

    for (const auto& s : src.cells)
    {
        if (s.kind != CellKind::Geometric || !s.geometry)
            throw std::invalid_argument("clipping needs geometric cells");
        std::set<std::vector<std::size_t>> seen{{}};
        std::deque<std::vector<std::size_t>> queue{{}};
        while (!queue.empty())
        {
            auto t = std::move(queue.front());
            queue.pop_front();
            Polyhedron g = detail::with_clip(*s.geometry, out.clip_facets, t);
            bool closed = false;
            auto oc = detail::probe(g, &closed);
            // Supersets of t can only be nonempty if the closed cell is.
            if (!closed)
                continue;
            if (oc)
            {
                const int dim = oc->dim;
                Cell cell = detail::make_cell(CellLabel{s.label.argmax, t}, std::move(g), std::move(*oc));
                cell.boundary_marker = !t.empty();
                out.cells.push_back(std::move(cell));
                if (dim == 0)
                    continue;
            }
            for (std::size_t j = 0; j < m; ++j)
            {
                if (std::binary_search(t.begin(), t.end(), j) || !compatible(t, j))
                    continue;
                auto next = t;
                next.insert(std::upper_bound(next.begin(), next.end(), j), j);
                if (seen.insert(next).second)
                    queue.push_back(std::move(next));
            }
        }
    }
    detail::finalize(out);
    return out;
}

}   // namespace

PolyComplex truncate_to_box(const PolyComplex& c, const Rational& m)
{
    if (m <= 0)
        throw std::invalid_argument("box half-width must be positive");
    for (const auto& cell : c.cells)
        if (cell.dim == 0 && cell.interior_point && max_abs(*cell.interior_point) >= m)
            throw BoxTooSmall("vertex " + std::to_string(cell.id) + " lies outside the open box");
    return clip_complex(c, box_facets(c.ambient_dim, m), ClipKind::Box);
}

PolyComplex clip_to_polyhedron(const PolyComplex& c, const Polyhedron& p)
{
    if (p.ambient_dim != c.ambient_dim)
        throw DimensionMismatch("clip polyhedron dimension mismatch");
    if (!p.equalities.empty())
        throw std::invalid_argument("clip polyhedron must be full-dimensional");
    return clip_complex(c, p.inequalities, ClipKind::Polyhedron);
}

PolyComplex cone_off(const PolyComplex& c)
{
    if (!c.all_bounded())
        throw NotTruncated("cone_off needs a complex of bounded cells");
    PolyComplex out = c;
    const std::size_t apex = out.cells.size();
    Cell a;
    a.id = apex;
    a.kind = CellKind::Apex;
    a.dim = 0;
    out.cells.push_back(a);

    std::vector<std::size_t> cone_of(c.cells.size(), 0);
    for (const auto& cell : c.cells)
    {
        if (!cell.boundary_marker)
            continue;
        Cell k;
        k.id = out.cells.size();
        k.kind = CellKind::Cone;
        k.dim = cell.dim + 1;
        k.cone_base = cell.id;
        k.label = cell.label;
        cone_of[cell.id] = k.id;
        out.cells.push_back(std::move(k));
    }
    for (const auto& cell : c.cells)
    {
        if (!cell.boundary_marker)
            continue;
        out.face_pairs.push_back({cone_of[cell.id], cell.id, 1});
        if (cell.dim == 0)
            out.face_pairs.push_back({cone_of[cell.id], apex, -1});
    }
    for (const auto& p : c.face_pairs)
    {
        if (!c.cells[p.cell].boundary_marker)
            continue;
        if (!c.cells[p.facet].boundary_marker)
            throw std::logic_error("face of a boundary cell is not on the boundary");
        out.face_pairs.push_back({cone_of[p.cell], cone_of[p.facet], -p.sign});
    }
    std::sort(out.face_pairs.begin(), out.face_pairs.end());
    return out;
}

Rational box_radius(const PolyComplex& c)
{
    std::vector<bool> has_facet(c.cells.size(), false);
    for (const auto& p : c.face_pairs)
        has_facet[p.cell] = true;
    bool any = false;
    Rational best(0);
    for (const auto& cell : c.cells)
    {
        if (has_facet[cell.id] || cell.kind != CellKind::Geometric)
            continue;
        any = true;
        if (cell.dim == 0)
        {
            best = std::max(best, max_abs(*cell.interior_point));
            continue;
        }
        // min t  s.t.  x in the closed cell,  -t <= x_i <= t
        const Polyhedron& g = *cell.geometry;
        const std::size_t d = g.ambient_dim;
        std::vector<RatVector> rows;
        RatVector rhs;
        auto pad = [d](const RatVector& b, const Rational& tcoef) {
            RatVector r(b);
            r.resize(d + 1);
            r[d] = tcoef;
            return r;
        };
        for (const auto& e : g.equalities)
        {
            rows.push_back(pad(e.b, 0));
            rhs.push_back(-e.a);
            rows.push_back(pad(Rational(-1) * e.b, 0));
            rhs.push_back(e.a);
        }
        for (const auto& f : g.inequalities)
        {
            rows.push_back(pad(Rational(-1) * f.b, 0));
            rhs.push_back(f.a);
        }
        for (std::size_t i = 0; i < d; ++i)
        {
            RatVector e = zero_vector(d);
            e[i] = 1;
            rows.push_back(pad(e, -1));
            rhs.push_back(Rational(0));
            rows.push_back(pad(Rational(-1) * e, -1));
            rhs.push_back(Rational(0));
        }
        RatVector obj(d + 1, Rational(0));
        obj[d] = -1;
        LPOutcome o = lp::maximize(rows, rhs, obj);
        if (o.status != LPStatus::Optimal)
            throw std::logic_error("box_radius: LP on a nonempty cell failed");
        best = std::max(best, Rational(-*o.value));
    }
    return any ? best : Rational(1);
}

}   // namespace bendlocus
