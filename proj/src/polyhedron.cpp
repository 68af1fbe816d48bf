#include "bendlocus/polyhedron.hpp"

#include <algorithm>

namespace bendlocus {

Polyhedron::Polyhedron(std::size_t dim, std::vector<AffineForm> eq, std::vector<AffineForm> ineq)
    : ambient_dim(dim), equalities(std::move(eq)), inequalities(std::move(ineq))
{
    for (const auto& f : equalities)
        if (f.dim() != ambient_dim)
            throw std::invalid_argument("Polyhedron: equality of wrong dimension");
    for (const auto& f : inequalities)
        if (f.dim() != ambient_dim)
            throw std::invalid_argument("Polyhedron: inequality of wrong dimension");
}

bool Polyhedron::contains(const RatVector& x) const
{
    for (const auto& f : equalities)
        if (!f(x).is_zero())
            return false;
    for (const auto& f : inequalities)
        if (f(x) < 0)
            return false;
    return true;
}

RatMatrix Polyhedron::equality_matrix() const
{
    RatMatrix m(equalities.size(), ambient_dim);
    for (std::size_t i = 0; i < equalities.size(); ++i)
        for (std::size_t j = 0; j < ambient_dim; ++j)
            m(i, j) = equalities[i].b[j];
    return m;
}

namespace {

/// Rows/rhs in <row, z> <= rhs form, with `extra` trailing variables.
struct ConstraintSystem
{
    std::vector<RatVector> rows;
    RatVector rhs;
};

RatVector padded(const RatVector& b, std::size_t extra, const Rational& scale = 1)
{
    RatVector r;
    r.reserve(b.size() + extra);
    for (const auto& x : b)
        r.push_back(scale * x);
    r.resize(b.size() + extra, Rational(0));
    return r;
}

ConstraintSystem to_system(const Polyhedron& p, std::size_t extra)
{
    ConstraintSystem s;
    for (const auto& e : p.equalities)
    {
        s.rows.push_back(padded(e.b, extra));
        s.rhs.push_back(-e.a);
        s.rows.push_back(padded(e.b, extra, Rational(-1)));
        s.rhs.push_back(e.a);
    }
    for (const auto& g : p.inequalities)
    {
        s.rows.push_back(padded(g.b, extra, Rational(-1)));
        s.rhs.push_back(g.a);
    }
    return s;
}

std::optional<RatVector> feasible_point(const Polyhedron& p)
{
    ConstraintSystem s = to_system(p, 0);
    LPOutcome o = lp::maximize(s.rows, s.rhs, zero_vector(p.ambient_dim));
    if (o.status != LPStatus::Optimal)
        return std::nullopt;
    return o.witness;
}

struct InteriorAnalysis
{
    std::vector<std::size_t> implied;
    RatVector point;
};

InteriorAnalysis analyze(const Polyhedron& p)
{
    const std::size_t d = p.ambient_dim;
    auto start = feasible_point(p);
    if (!start)
        throw EmptyPolyhedron();
    InteriorAnalysis out;
    if (p.inequalities.empty())
    {
        out.point = *start;
        return out;
    }

    // Fast path: one common slack for every inequality.
    {
        ConstraintSystem s = to_system(p, 1);
        for (std::size_t i = 0; i < p.inequalities.size(); ++i)
            s.rows[2 * p.equalities.size() + i][d] = 1;   // -g(x) + eps <= a
        RatVector cap(d + 1, Rational(0));
        cap[d] = 1;
        s.rows.push_back(cap);
        s.rhs.push_back(Rational(1));
        LPOutcome o = lp::maximize(s.rows, s.rhs, cap);
        if (o.status == LPStatus::Optimal && *o.value > 0)
        {
            out.point.assign(o.witness->begin(), o.witness->begin() + static_cast<std::ptrdiff_t>(d));
            return out;
        }
    }

    // Maximize each undecided slack separately; optimum zero means implied.
    std::vector<int> state(p.inequalities.size(), 0);   // 0 undecided, 1 strict, 2 implied
    std::vector<RatVector> witnesses;
    for (std::size_t i = 0; i < p.inequalities.size(); ++i)
    {
        if (state[i] != 0)
            continue;
        ConstraintSystem s = to_system(p, 0);
        s.rows.push_back(p.inequalities[i].b);   // g_i(x) <= 1 keeps the LP bounded
        s.rhs.push_back(1 - p.inequalities[i].a);
        LPOutcome o = lp::maximize(s.rows, s.rhs, p.inequalities[i].b);
        const Rational best = *o.value + p.inequalities[i].a;
        if (best.is_zero())
        {
            state[i] = 2;
            continue;
        }
        for (std::size_t j = 0; j < p.inequalities.size(); ++j)
            if (state[j] == 0 && p.inequalities[j](*o.witness) > 0)
                state[j] = 1;
        witnesses.push_back(*o.witness);
    }
    for (std::size_t i = 0; i < state.size(); ++i)
        if (state[i] == 2)
            out.implied.push_back(i);
    if (witnesses.empty())
        out.point = *start;
    else
    {
        out.point = zero_vector(d);
        for (const auto& w : witnesses)
            out.point = out.point + w;
        out.point = Rational(1, static_cast<long>(witnesses.size())) * out.point;
    }
    return out;
}

}   // namespace

LPOutcome lp_optimize(const RatVector& objective, const Polyhedron& p, Sense sense)
{
    if (objective.size() != p.ambient_dim)
        throw std::invalid_argument("lp_optimize: objective dimension mismatch");
    ConstraintSystem s = to_system(p, 0);
    const bool flip = sense == Sense::Minimize;
    RatVector c = flip ? Rational(-1) * objective : objective;
    LPOutcome o = lp::maximize(s.rows, s.rhs, c);
    if (o.status == LPStatus::Optimal && flip)
        o.value = -*o.value;
    return o;
}

int dimension(const Polyhedron& p)
{
    if (!feasible_point(p))
        return -1;
    InteriorAnalysis a = analyze(p);
    RatMatrix m(p.equalities.size() + a.implied.size(), p.ambient_dim);
    std::size_t r = 0;
    for (const auto& e : p.equalities)
    {
        for (std::size_t j = 0; j < p.ambient_dim; ++j)
            m(r, j) = e.b[j];
        ++r;
    }
    for (auto i : a.implied)
    {
        for (std::size_t j = 0; j < p.ambient_dim; ++j)
            m(r, j) = p.inequalities[i].b[j];
        ++r;
    }
    return static_cast<int>(p.ambient_dim) - static_cast<int>(rank(m));
}

std::vector<std::size_t> implied_equalities(const Polyhedron& p)
{
    return analyze(p).implied;
}

RatVector relative_interior_point(const Polyhedron& p)
{
    return analyze(p).point;
}

Polyhedron recession_cone(const Polyhedron& p)
{
    if (!feasible_point(p))
        throw EmptyPolyhedron("recession_cone: empty polyhedron");
    Polyhedron cone;
    cone.ambient_dim = p.ambient_dim;
    for (const auto& e : p.equalities)
        cone.equalities.push_back({e.b, Rational(0)});
    for (const auto& g : p.inequalities)
        cone.inequalities.push_back({g.b, Rational(0)});
    return cone;
}

bool is_bounded(const Polyhedron& p)
{
    Polyhedron cone = recession_cone(p);
    const std::size_t d = p.ambient_dim;
    RatMatrix all(cone.equalities.size() + cone.inequalities.size(), d);
    std::size_t r = 0;
    for (const auto* list : {&cone.equalities, &cone.inequalities})
        for (const auto& f : *list)
        {
            for (std::size_t j = 0; j < d; ++j)
                all(r, j) = f.b[j];
            ++r;
        }
    if (rank(all) < d)
        return false;   // nontrivial lineality space
    if (cone.inequalities.empty())
        return true;
    // With trivial lineality, the cone is {0} iff sum(Gv) is zero on it.
    RatVector sum = zero_vector(d);
    for (const auto& g : cone.inequalities)
        sum = sum + g.b;
    Polyhedron capped = cone;
    for (const auto& g : cone.inequalities)
        capped.inequalities.push_back({Rational(-1) * g.b, Rational(1)});
    LPOutcome o = lp_optimize(sum, capped, Sense::Maximize);
    return o.status == LPStatus::Optimal && o.value->is_zero();
}

}   // namespace bendlocus
