#include <algorithm>
#include <map>

#include "bendlocus/complex.hpp"

namespace bendlocus {

namespace {

using Simplex = std::vector<std::size_t>;   // vertex ranks, increasing

}   // namespace

PolyComplex triangulate(const PolyComplex& c)
{
    for (const auto& cell : c.cells)
        if (!cell.bounded)
            throw UnboundedCell("cannot triangulate unbounded cell " + std::to_string(cell.id));

    // Global vertex order: geometric vertices lexicographically, then
    // abstract ones by id.
    std::vector<std::size_t> verts = c.cells_of_dim(0);
    std::stable_sort(verts.begin(), verts.end(), [&](std::size_t a, std::size_t b) {
        const Cell& x = c.cells[a];
        const Cell& y = c.cells[b];
        const bool gx = x.interior_point.has_value(), gy = y.interior_point.has_value();
        if (gx != gy)
            return gx;
        if (gx)
            return *x.interior_point < *y.interior_point;
        return a < b;
    });
    std::vector<std::size_t> rank_of(c.cells.size(), 0);
    for (std::size_t r = 0; r < verts.size(); ++r)
        rank_of[verts[r]] = r;

    auto facets = c.facet_lists();
    std::vector<std::vector<std::size_t>> vertex_ranks(c.cells.size());
    std::vector<std::vector<Simplex>> tri(c.cells.size());
    std::vector<std::size_t> order(c.cells.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c.cells[a].dim < c.cells[b].dim; });

    std::map<Simplex, std::size_t> carrier;
    for (auto id : order)
    {
        const Cell& cell = c.cells[id];
        if (cell.dim == 0)
        {
            vertex_ranks[id] = {rank_of[id]};
            tri[id] = {{rank_of[id]}};
        }
        else
        {
            std::vector<std::size_t> vs;
            for (const auto& [f, s] : facets[id])
                vs.insert(vs.end(), vertex_ranks[f].begin(), vertex_ranks[f].end());
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            if (vs.empty())
                throw std::logic_error("cell without vertices");
            vertex_ranks[id] = vs;
            const std::size_t v = vs.front();
            for (const auto& [f, s] : facets[id])
            {
                if (std::binary_search(vertex_ranks[f].begin(), vertex_ranks[f].end(), v))
                    continue;
                for (const auto& sigma : tri[f])
                {
                    Simplex t{v};
                    t.insert(t.end(), sigma.begin(), sigma.end());
                    tri[id].push_back(std::move(t));
                }
            }
        }
        // Interior faces of the new simplices belong to this cell as well.
        for (const auto& s : tri[id])
        {
            const std::size_t m = s.size();
            for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask)
            {
                Simplex face;
                for (std::size_t i = 0; i < m; ++i)
                    if (mask & (std::size_t{1} << i))
                        face.push_back(s[i]);
                carrier.emplace(std::move(face), id);
            }
        }
    }

    PolyComplex out;
    out.ambient_dim = c.ambient_dim;
    out.n = c.n;
    out.clip = c.clip;
    out.clip_facets = c.clip_facets;
    out.genericity_violations = c.genericity_violations;

    std::vector<std::pair<Simplex, std::size_t>> all(carrier.begin(), carrier.end());
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
    std::map<Simplex, std::size_t> id_of;
    for (const auto& [s, car] : all)
    {
        Cell cell;
        cell.id = out.cells.size();
        cell.kind = CellKind::Simplex;
        cell.dim = static_cast<int>(s.size()) - 1;
        cell.label = c.cells[car].label;
        cell.boundary_marker = c.cells[car].boundary_marker;
        bool geometric = true;
        RatVector centre = zero_vector(c.ambient_dim);
        for (auto r : s)
        {
            cell.vertices.push_back(verts[r]);
            const auto& p = c.cells[verts[r]].interior_point;
            if (p)
                centre = centre + *p;
            else
                geometric = false;
        }
        if (geometric)
            cell.interior_point = Rational(1, static_cast<long>(s.size())) * centre;
        id_of[s] = cell.id;
        out.cells.push_back(std::move(cell));
    }
    for (const auto& [s, car] : all)
    {
        if (s.size() < 2)
            continue;
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            Simplex f = s;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            out.face_pairs.push_back({id_of.at(s), id_of.at(f), i % 2 == 0 ? 1 : -1});
        }
    }
    std::sort(out.face_pairs.begin(), out.face_pairs.end());
    return out;
}

}   // namespace bendlocus
