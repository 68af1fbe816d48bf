#include "bendlocus/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>

namespace bendlocus {

namespace {

using boost::multiprecision::abs;

/// Floor-free quotient rounding toward zero keeps |remainder| < |pivot|.
Integer quotient(const Integer& a, const Integer& b)
{
    return a / b;
}

/**
 * Dense SNF core. When `track` is false the transform matrices are left
 * untouched (and may be empty).
 */
std::vector<Integer> smith_dense(IntMatrix& a, IntMatrix& left, IntMatrix& right, bool track)
{
    const std::size_t rows = a.rows(), cols = a.cols();
    const std::size_t steps = std::min(rows, cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t c = 0; c < cols; ++c)
            std::swap(a(i, c), a(j, c));
        if (track)
            for (std::size_t c = 0; c < rows; ++c)
                std::swap(left(i, c), left(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t r = 0; r < rows; ++r)
            std::swap(a(r, i), a(r, j));
        if (track)
            for (std::size_t r = 0; r < cols; ++r)
                std::swap(right(r, i), right(r, j));
    };
    // row_i -= q * row_j
    auto add_row = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t c = 0; c < cols; ++c)
            if (a(j, c) != 0)
                a(i, c) -= q * a(j, c);
        if (track)
            for (std::size_t c = 0; c < rows; ++c)
                if (left(j, c) != 0)
                    left(i, c) -= q * left(j, c);
    };
    // col_i -= q * col_j
    auto add_col = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t r = 0; r < rows; ++r)
            if (a(r, j) != 0)
                a(r, i) -= q * a(r, j);
        if (track)
            for (std::size_t r = 0; r < cols; ++r)
                if (right(r, j) != 0)
                    right(r, i) -= q * right(r, j);
    };

    std::vector<Integer> factors;
    for (std::size_t t = 0; t < steps; ++t)
    {
        // Pivot: nonzero entry of least absolute value in the trailing block.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj))))
                {
                    pi = i;
                    pj = j;
                }
        if (pi == rows)
            break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;)
        {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a(i, t) != 0)
                {
                    add_row(i, t, quotient(a(i, t), a(t, t)));
                    if (a(i, t) != 0)
                        clean = false;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a(t, j) != 0)
                {
                    add_col(j, t, quotient(a(t, j), a(t, t)));
                    if (a(t, j) != 0)
                        clean = false;
                }
            if (!clean)
            {
                // A smaller remainder appeared in row or column t.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj)))
                    {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj)))
                    {
                        bi = t;
                        bj = j;
                    }
                swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            // Divisibility: the pivot must divide every trailing entry.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0)
                    {
                        add_row(t, i, Integer(-1));   // row_t += row_i
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(t, t) < 0)
        {
            for (std::size_t c = 0; c < cols; ++c)
                a(t, c) = -a(t, c);
            if (track)
                for (std::size_t c = 0; c < rows; ++c)
                    left(t, c) = -left(t, c);
        }
        factors.push_back(a(t, t));
    }
    return factors;
}

// Sparse machine-integer elimination of unit pivots.
using SparseRow = std::map<std::size_t, std::int64_t>;

bool checked_update(std::int64_t& x, std::int64_t q, std::int64_t y)
{
    __int128 v = static_cast<__int128>(x) - static_cast<__int128>(q) * y;
    if (v > INT64_MAX / 4 || v < -(INT64_MAX / 4))
        return false;
    x = static_cast<std::int64_t>(v);
    return true;
}

}   // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    SmithForm out;
    IntMatrix a = m;
    out.left = IntMatrix::identity(m.rows());
    out.right = IntMatrix::identity(m.cols());
    out.invariant_factors = smith_dense(a, out.left, out.right, true);
    return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<SparseRow> row_data(rows);
    std::vector<std::map<std::size_t, bool>> col_rows(cols);   // column -> rows with entries
    bool fits = true;
    for (std::size_t i = 0; i < rows && fits; ++i)
        for (std::size_t j = 0; j < cols; ++j)
        {
            const Integer& x = m(i, j);
            if (x == 0)
                continue;
            if (abs(x) > Integer(INT64_MAX / 4))
            {
                fits = false;
                break;
            }
            row_data[i][j] = x.convert_to<std::int64_t>();
            col_rows[j][i] = true;
        }
    if (!fits)
    {
        IntMatrix a = m, l, r;
        return smith_dense(a, l, r, false);
    }

    std::vector<bool> row_alive(rows, true), col_alive(cols, true);
    std::size_t units = 0;
    bool overflow = false;
    for (;;)
    {
        // Markowitz-style choice among unit entries: smallest row*col fill.
        std::size_t bi = rows, bj = cols, best = SIZE_MAX;
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (!row_alive[i])
                continue;
            for (const auto& [j, v] : row_data[i])
                if (v == 1 || v == -1)
                {
                    std::size_t cost = (row_data[i].size() - 1) * (col_rows[j].size() - 1);
                    if (cost < best)
                    {
                        best = cost;
                        bi = i;
                        bj = j;
                    }
                }
        }
        if (bi == rows)
            break;
        const std::int64_t pv = row_data[bi][bj];
        const SparseRow pivot_row = row_data[bi];
        std::vector<std::size_t> targets;
        for (const auto& [i, _] : col_rows[bj])
            if (i != bi)
                targets.push_back(i);
        for (std::size_t i : targets)
        {
            std::int64_t q = row_data[i][bj] * pv;   // pv = +-1, so this is a_ij / pv
            for (const auto& [j, v] : pivot_row)
            {
                std::int64_t& x = row_data[i][j];
                if (!checked_update(x, q, v))
                {
                    overflow = true;
                    break;
                }
                if (x == 0)
                {
                    row_data[i].erase(j);
                    col_rows[j].erase(i);
                }
                else
                    col_rows[j][i] = true;
            }
            if (overflow)
                break;
        }
        if (overflow)
            break;
        // Pivot row and column now only meet at the pivot; drop both.
        for (const auto& [j, _] : pivot_row)
            col_rows[j].erase(bi);
        row_data[bi].clear();
        row_alive[bi] = false;
        col_alive[bj] = false;
        col_rows[bj].clear();
        ++units;
    }
    if (overflow)
    {
        IntMatrix a = m, l, r;
        return smith_dense(a, l, r, false);
    }

    std::vector<std::size_t> live_rows, live_cols;
    for (std::size_t i = 0; i < rows; ++i)
        if (row_alive[i] && !row_data[i].empty())
            live_rows.push_back(i);
    for (std::size_t j = 0; j < cols; ++j)
        if (col_alive[j] && !col_rows[j].empty())
            live_cols.push_back(j);
    std::vector<Integer> factors(units, Integer(1));
    if (!live_rows.empty() && !live_cols.empty())
    {
        IntMatrix rest(live_rows.size(), live_cols.size());
        std::map<std::size_t, std::size_t> col_index;
        for (std::size_t c = 0; c < live_cols.size(); ++c)
            col_index[live_cols[c]] = c;
        for (std::size_t r = 0; r < live_rows.size(); ++r)
            for (const auto& [j, v] : row_data[live_rows[r]])
                rest(r, col_index.at(j)) = v;
        IntMatrix l, rr;
        auto tail = smith_dense(rest, l, rr, false);
        factors.insert(factors.end(), tail.begin(), tail.end());
    }
    return factors;
}

}   // namespace bendlocus
