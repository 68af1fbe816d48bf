#include "bendlocus/linalg.hpp"

#include <utility>

namespace bendlocus {

namespace {

/// Integer row-echelon form produced by Bareiss elimination.
struct Echelon
{
    IntMatrix m;
    std::vector<std::size_t> pivot_cols;   // pivot column of row i
    int swaps = 0;
};

/**
 * Fraction-free Gaussian elimination. Every intermediate entry is a minor
 * of the input, so growth stays polynomial.
 */
Echelon bareiss(IntMatrix m)
{
    Echelon e;
    const std::size_t rows = m.rows(), cols = m.cols();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
        {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
            ++e.swaps;
        }
        for (std::size_t i = r + 1; i < rows; ++i)
        {
            for (std::size_t j = c + 1; j < cols; ++j)
            {
                m(i, j) = m(r, c) * m(i, j) - m(i, c) * m(r, j);
                m(i, j) /= prev;   // exact
            }
            m(i, c) = 0;
        }
        // Entries of the pivot row left of later pivots stay as they are;
        // rows above r are untouched.
        prev = m(r, c);
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.m = std::move(m);
    return e;
}

/// Multiply each row by the lcm of its denominators.
IntMatrix clear_denominators(const RatMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            l = boost::multiprecision::lcm(l, denominator(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
    }
    return out;
}

}   // namespace

RatVector operator*(const RatMatrix& m, const RatVector& v)
{
    if (m.cols() != v.size())
        throw std::invalid_argument("matrix-vector product: shape mismatch");
    RatVector out(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero())
                out[i] += m(i, j) * v[j];
    return out;
}

std::size_t rank(const IntMatrix& m)
{
    return bareiss(m).pivot_cols.size();
}

std::size_t rank(const RatMatrix& m)
{
    return rank(clear_denominators(m));
}

std::vector<RatVector> kernel_basis(const RatMatrix& m)
{
    const std::size_t cols = m.cols();
    Echelon e = bareiss(clear_denominators(m));
    const std::size_t r = e.pivot_cols.size();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivot_cols)
        is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < cols; ++free)
    {
        if (is_pivot[free])
            continue;
        RatVector x(cols, Rational(0));
        x[free] = 1;
        // Back substitution over the echelon rows, bottom to top.
        for (std::size_t ii = r; ii-- > 0;)
        {
            std::size_t pc = e.pivot_cols[ii];
            Rational s = 0;
            for (std::size_t j = pc + 1; j < cols; ++j)
                if (e.m(ii, j) != 0 && !x[j].is_zero())
                    s += Rational(e.m(ii, j)) * x[j];
            x[pc] = -s / Rational(e.m(ii, pc));
        }
        basis.push_back(primitive(x));
    }
    return basis;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs)
{
    if (rhs.size() != m.rows())
        throw std::invalid_argument("solve: shape mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    Echelon e = bareiss(clear_denominators(aug));
    const std::size_t cols = m.cols();
    for (auto pc : e.pivot_cols)
        if (pc == cols)
            return std::nullopt;   // pivot in the augmented column
    RatVector x(cols, Rational(0));
    const std::size_t r = e.pivot_cols.size();
    for (std::size_t ii = r; ii-- > 0;)
    {
        std::size_t pc = e.pivot_cols[ii];
        Rational s = Rational(e.m(ii, cols));
        for (std::size_t j = pc + 1; j < cols; ++j)
            if (e.m(ii, j) != 0 && !x[j].is_zero())
                s -= Rational(e.m(ii, j)) * x[j];
        x[pc] = s / Rational(e.m(ii, pc));
    }
    return x;
}

Integer determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    if (m.rows() == 0)
        return 1;
    Echelon e = bareiss(m);
    if (e.pivot_cols.size() < m.rows())
        return 0;
    Integer d = e.m(m.rows() - 1, m.cols() - 1);
    return (e.swaps % 2) ? Integer(-d) : d;
}

Rational determinant(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    Integer scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            l = boost::multiprecision::lcm(l, denominator(m(i, j)));
        scale *= l;
    }
    return Rational(determinant(clear_denominators(m)), scale);
}

}   // namespace bendlocus
