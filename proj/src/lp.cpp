/**
 * Exact LP via the dual in standard form.
 *
 * The primal  max <c, z>  s.t.  A z <= beta  (z free)  has the dual
 * min <beta, lambda>  s.t.  A^T lambda = c,  lambda >= 0,  which is already
 * in standard form and has only dim(z) rows. For the cell probes this code
 * serves (a handful of variables, a few dozen constraints) the dual tableau
 * is tiny. Bland's rule on both phases guarantees termination.
 */
#include "bendlocus/polyhedron.hpp"

#include <cstddef>
#include <utility>

namespace bendlocus::lp {

namespace {

thread_local std::size_t g_solves = 0;

enum class DualStatus { Optimal, Infeasible, Unbounded };

struct DualResult
{
    DualStatus status = DualStatus::Infeasible;
    Rational value;
    std::vector<std::size_t> basis;   // constraint indices of A in the final basis
};

class Tableau
{
    public:
        Tableau(std::size_t rows, std::size_t cols)
            : rows_(rows), cols_(cols), t_(rows, std::vector<Rational>(cols + 1, Rational(0))),
              obj_(cols + 1, Rational(0)), basis_(rows) {}

        Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
        Rational& rhs(std::size_t i) { return t_[i][cols_]; }
        std::vector<Rational>& objective() { return obj_; }
        std::vector<std::size_t>& basis() { return basis_; }
        std::size_t rows() const { return t_.size(); }

        void pivot(std::size_t r, std::size_t k)
        {
            Rational inv = 1 / t_[r][k];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (!t_[r][j].is_zero())
                    t_[r][j] *= inv;
            for (std::size_t i = 0; i < t_.size(); ++i)
            {
                if (i == r || t_[i][k].is_zero())
                    continue;
                Rational f = t_[i][k];
                for (std::size_t j = 0; j <= cols_; ++j)
                    if (!t_[r][j].is_zero())
                        t_[i][j] -= f * t_[r][j];
            }
            if (!obj_[k].is_zero())
            {
                Rational f = obj_[k];
                for (std::size_t j = 0; j <= cols_; ++j)
                    if (!t_[r][j].is_zero())
                        obj_[j] -= f * t_[r][j];
            }
            basis_[r] = k;
        }

        void drop_row(std::size_t r)
        {
            t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
            basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        }

        /**
         * Minimize with Bland's rule over columns [0, usable). Returns false
         * when the objective is unbounded below.
         */
        bool run(std::size_t usable)
        {
            for (;;)
            {
                std::size_t enter = usable;
                for (std::size_t k = 0; k < usable; ++k)
                    if (obj_[k] < 0)
                    {
                        enter = k;
                        break;
                    }
                if (enter == usable)
                    return true;
                std::size_t leave = t_.size();
                Rational best;
                for (std::size_t i = 0; i < t_.size(); ++i)
                {
                    if (t_[i][enter] <= 0)
                        continue;
                    Rational ratio = t_[i][cols_] / t_[i][enter];
                    if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave]))
                    {
                        leave = i;
                        best = ratio;
                    }
                }
                if (leave == t_.size())
                    return false;
                pivot(leave, enter);
            }
        }

    private:
        std::size_t rows_;
        std::size_t cols_;
        std::vector<std::vector<Rational>> t_;
        std::vector<Rational> obj_;   // reduced costs; obj_[cols_] = -(objective value)
        std::vector<std::size_t> basis_;
};

/// min <beta, lambda> s.t. A^T lambda = c, lambda >= 0.
DualResult solve_dual(const std::vector<RatVector>& rows, const RatVector& beta, const RatVector& c)
{
    ++g_solves;
    const std::size_t m = rows.size();
    const std::size_t p = c.size();
    const std::size_t cols = m + p;   // lambda then artificials
    Tableau tab(p, cols);
    for (std::size_t j = 0; j < p; ++j)
    {
        bool flip = c[j] < 0;
        for (std::size_t i = 0; i < m; ++i)
            tab.at(j, i) = flip ? Rational(-rows[i][j]) : rows[i][j];
        tab.at(j, m + j) = 1;
        tab.rhs(j) = flip ? Rational(-c[j]) : c[j];
        tab.basis()[j] = m + j;
    }

    // Phase 1: minimize the sum of artificials.
    auto& obj = tab.objective();
    for (std::size_t k = 0; k <= cols; ++k)
        obj[k] = 0;
    for (std::size_t j = 0; j < p; ++j)
    {
        for (std::size_t i = 0; i < m; ++i)
            obj[i] -= tab.at(j, i);
        obj[cols] -= tab.rhs(j);
    }
    tab.run(m);   // bounded below by zero
    DualResult out;
    if (obj[cols] != 0)
    {
        out.status = DualStatus::Infeasible;
        return out;
    }

    // Drive artificials out of the basis; drop rows that cannot be pivoted.
    for (std::size_t r = 0; r < tab.rows();)
    {
        if (tab.basis()[r] < m)
        {
            ++r;
            continue;
        }
        std::size_t k = m;
        for (std::size_t i = 0; i < m; ++i)
            if (!tab.at(r, i).is_zero())
            {
                k = i;
                break;
            }
        if (k == m)
            tab.drop_row(r);
        else
        {
            tab.pivot(r, k);
            ++r;
        }
    }

    // Phase 2 with the true costs.
    for (std::size_t k = 0; k <= cols; ++k)
        obj[k] = 0;
    for (std::size_t i = 0; i < m; ++i)
        obj[i] = beta[i];
    for (std::size_t r = 0; r < tab.rows(); ++r)
    {
        const std::size_t b = tab.basis()[r];
        const Rational cb = beta[b];
        if (cb.is_zero())
            continue;
        for (std::size_t k = 0; k < m; ++k)
            obj[k] -= cb * tab.at(r, k);
        obj[cols] -= cb * tab.rhs(r);
    }
    if (!tab.run(m))
    {
        out.status = DualStatus::Unbounded;
        return out;
    }
    out.status = DualStatus::Optimal;
    out.value = -obj[cols];
    out.basis = tab.basis();
    return out;
}

bool satisfies(const std::vector<RatVector>& rows, const RatVector& rhs, const RatVector& z)
{
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (dot(rows[i], z) > rhs[i])
            return false;
    return true;
}

}   // namespace

std::size_t solve_count()
{
    return g_solves;
}

LPOutcome maximize(const std::vector<RatVector>& rows, const RatVector& rhs, const RatVector& c)
{
    const std::size_t p = c.size();
    for (const auto& r : rows)
        if (r.size() != p)
            throw std::invalid_argument("lp::maximize: dimension mismatch");
    if (rhs.size() != rows.size())
        throw std::invalid_argument("lp::maximize: rhs size mismatch");

    LPOutcome out;
    DualResult dual = solve_dual(rows, rhs, c);
    if (dual.status == DualStatus::Optimal)
    {
        RatMatrix basis_rows(dual.basis.size(), p);
        RatVector basis_rhs(dual.basis.size());
        for (std::size_t r = 0; r < dual.basis.size(); ++r)
        {
            for (std::size_t j = 0; j < p; ++j)
                basis_rows(r, j) = rows[dual.basis[r]][j];
            basis_rhs[r] = rhs[dual.basis[r]];
        }
        auto z = solve(basis_rows, basis_rhs);
        if (!z || !satisfies(rows, rhs, *z) || dot(c, *z) != dual.value)
            throw std::logic_error("lp::maximize: dual basis does not yield a primal optimum");
        out.status = LPStatus::Optimal;
        out.value = dual.value;
        out.witness = std::move(*z);
        return out;
    }
    if (dual.status == DualStatus::Unbounded)
    {
        out.status = LPStatus::Infeasible;
        return out;
    }

    // Dual infeasible: the primal is infeasible or unbounded. Decide by
    // max -s s.t. A z - s <= beta, s >= 0, which is always solvable.
    std::vector<RatVector> frows;
    frows.reserve(rows.size() + 1);
    for (const auto& r : rows)
    {
        RatVector fr = r;
        fr.push_back(Rational(-1));
        frows.push_back(std::move(fr));
    }
    RatVector sgn(p + 1, Rational(0));
    sgn[p] = -1;
    frows.push_back(sgn);
    RatVector frhs = rhs;
    frhs.push_back(Rational(0));
    RatVector fc(p + 1, Rational(0));
    fc[p] = -1;
    LPOutcome feas = maximize(frows, frhs, fc);
    out.status = (feas.status == LPStatus::Optimal && feas.value->is_zero()) ? LPStatus::Unbounded
                                                                              : LPStatus::Infeasible;
    return out;
}

}   // namespace bendlocus::lp
