#include <algorithm>
#include <deque>
#include <map>
#include <optional>

#include "bendlocus/homology.hpp"

namespace bendlocus {

namespace {

// Letters are +-(g + 1) for generator g.
using Word = std::vector<int>;

constexpr std::size_t kStepLimit = 10000;
constexpr std::size_t kWordLimit = 100000;

void reduce(Word& w)
{
    Word out;
    out.reserve(w.size());
    for (int x : w)
    {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    // cyclic reduction
    std::size_t lo = 0, hi = out.size();
    while (hi - lo >= 2 && out[lo] == -out[hi - 1])
    {
        ++lo;
        --hi;
    }
    w.assign(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (auto& x : out)
        x = -x;
    return out;
}

struct Edge
{
    std::size_t tail = 0, head = 0;
};

}   // namespace

Pi1Verdict pi1_trivial_heuristic(const PolyComplex& c)
{
    if (!c.all_bounded())
        throw PreconditionFailed("pi1 heuristic needs a bounded complex");
    if (c.empty())
        throw PreconditionFailed("pi1 heuristic needs a nonempty complex");
    HomologyResult h = homology(c);
    if (h.betti_at(0) != 1 || !h.torsion_free_at(0))
        throw PreconditionFailed("pi1 heuristic needs a connected complex");
    if (h.betti_at(1) != 0 || !h.torsion_free_at(1))
        throw PreconditionFailed("pi1 heuristic needs H_1 = 0");

    auto facets = c.facet_lists();
    std::map<std::size_t, Edge> edges;
    std::map<std::size_t, std::vector<std::size_t>> incident;
    for (const auto& cell : c.cells)
    {
        if (cell.dim != 1)
            continue;
        Edge e;
        bool has_head = false, has_tail = false;
        for (const auto& [f, s] : facets[cell.id])
        {
            if (s > 0)
            {
                e.head = f;
                has_head = true;
            }
            else
            {
                e.tail = f;
                has_tail = true;
            }
        }
        if (!has_head || !has_tail || facets[cell.id].size() != 2)
            return Pi1Verdict::Inconclusive;   // not a regular edge
        edges[cell.id] = e;
        incident[e.tail].push_back(cell.id);
        incident[e.head].push_back(cell.id);
    }

    // Breadth-first spanning tree from the first vertex.
    std::vector<std::size_t> verts = c.cells_of_dim(0);
    std::map<std::size_t, bool> reached;
    std::map<std::size_t, bool> tree_edge;
    std::deque<std::size_t> queue{verts.front()};
    reached[verts.front()] = true;
    while (!queue.empty())
    {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (auto eid : incident[v])
        {
            const Edge& e = edges[eid];
            const std::size_t w = e.tail == v ? e.head : e.tail;
            if (reached[w])
                continue;
            reached[w] = true;
            tree_edge[eid] = true;
            queue.push_back(w);
        }
    }

    std::map<std::size_t, int> generator;
    for (const auto& [eid, e] : edges)
        if (!tree_edge[eid])
        {
            const int g = static_cast<int>(generator.size());
            generator[eid] = g;
        }
    const int num_gens = static_cast<int>(generator.size());
    if (num_gens == 0)
        return Pi1Verdict::Trivial;

    // One relation per 2-cell: walk its boundary cycle.
    std::vector<Word> relations;
    for (const auto& cell : c.cells)
    {
        if (cell.dim != 2)
            continue;
        struct Step
        {
            std::size_t eid, from, to;
            int sign;
        };
        std::vector<Step> steps;
        for (const auto& [f, s] : facets[cell.id])
        {
            const Edge& e = edges.at(f);
            steps.push_back(s > 0 ? Step{f, e.tail, e.head, 1} : Step{f, e.head, e.tail, -1});
        }
        if (steps.empty())
            return Pi1Verdict::Inconclusive;
        std::vector<bool> used(steps.size(), false);
        Word w;
        std::size_t at = steps.front().from;
        for (std::size_t count = 0; count < steps.size(); ++count)
        {
            std::optional<std::size_t> next;
            for (std::size_t i = 0; i < steps.size(); ++i)
                if (!used[i] && steps[i].from == at)
                {
                    next = i;
                    break;
                }
            if (!next)
                return Pi1Verdict::Inconclusive;   // boundary is not a single cycle
            used[*next] = true;
            const Step& st = steps[*next];
            auto g = generator.find(st.eid);
            if (g != generator.end())
                w.push_back(st.sign * (g->second + 1));
            at = st.to;
        }
        reduce(w);
        if (!w.empty())
            relations.push_back(std::move(w));
    }

    // Tietze elimination: a generator occurring exactly once in a relation
    // is expressed through the others and substituted away.
    int remaining = num_gens;
    std::size_t steps = 0;
    while (remaining > 0 && steps < kStepLimit)
    {
        for (auto& r : relations)
            reduce(r);
        relations.erase(std::remove_if(relations.begin(), relations.end(), [](const Word& r) { return r.empty(); }),
                        relations.end());
        std::sort(relations.begin(), relations.end(), [](const Word& a, const Word& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });

        std::optional<std::pair<std::size_t, std::size_t>> pick;   // (relation, position)
        for (std::size_t ri = 0; ri < relations.size() && !pick; ++ri)
        {
            std::map<int, int> occurrences;
            for (int x : relations[ri])
                ++occurrences[std::abs(x)];
            for (std::size_t pos = 0; pos < relations[ri].size(); ++pos)
                if (occurrences[std::abs(relations[ri][pos])] == 1)
                {
                    pick = std::make_pair(ri, pos);
                    break;
                }
        }
        if (!pick)
            break;

        Word r = relations[pick->first];
        std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pick->second), r.end());
        const int x = r.front();
        const int g = std::abs(x);
        Word rest(r.begin() + 1, r.end());
        // x rest = 1  =>  x = rest^-1
        Word value = inverse(rest);
        Word value_inv = rest;
        if (x < 0)
            std::swap(value, value_inv);   // g = value

        relations.erase(relations.begin() + static_cast<std::ptrdiff_t>(pick->first));
        for (auto& rel : relations)
        {
            Word out;
            for (int y : rel)
            {
                if (y == g)
                    out.insert(out.end(), value.begin(), value.end());
                else if (y == -g)
                    out.insert(out.end(), value_inv.begin(), value_inv.end());
                else
                    out.push_back(y);
                if (std::abs(y) == g)
                    ++steps;
            }
            if (out.size() > kWordLimit)
                return Pi1Verdict::Inconclusive;
            rel = std::move(out);
        }
        --remaining;
        ++steps;
    }
    return remaining == 0 ? Pi1Verdict::Trivial : Pi1Verdict::Inconclusive;
}

}   // namespace bendlocus
