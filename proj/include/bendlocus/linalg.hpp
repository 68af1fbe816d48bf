/**
 * Dense exact matrices and the integer/rational matrix algorithms used
 * throughout: rank, null spaces, linear solves, and Smith normal form.
 *
 * Rank and kernel computations clear denominators row by row and run
 * fraction-free (Bareiss) elimination over the integers.
 */
#ifndef BENDLOCUS_LINALG_HPP
#define BENDLOCUS_LINALG_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bendlocus/rational.hpp"

namespace bendlocus {

template <typename Scalar>
class DenseMatrix
{
    public:
        DenseMatrix() = default;
        DenseMatrix(std::size_t rows, std::size_t cols)
            : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

        static DenseMatrix identity(std::size_t n)
        {
            DenseMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = 1;
            return m;
        }

        /// Build from a list of equal-length rows.
        static DenseMatrix from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols = 0)
        {
            if (!rows.empty())
                cols = rows.front().size();
            DenseMatrix m(rows.size(), cols);
            for (std::size_t i = 0; i < rows.size(); ++i)
            {
                if (rows[i].size() != cols)
                    throw std::invalid_argument("from_rows: ragged rows");
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) = rows[i][j];
            }
            return m;
        }

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }

        Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

        std::vector<Scalar> row(std::size_t i) const
        {
            return std::vector<Scalar>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
        }

        std::vector<Scalar> col(std::size_t j) const
        {
            std::vector<Scalar> c(rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                c[i] = (*this)(i, j);
            return c;
        }

        DenseMatrix transpose() const
        {
            DenseMatrix t(cols_, rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    t(j, i) = (*this)(i, j);
            return t;
        }

        bool is_zero() const
        {
            for (const auto& x : data_)
                if (x != 0)
                    return false;
            return true;
        }

        friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
        {
            if (a.cols_ != b.rows_)
                throw std::invalid_argument("matrix product: shape mismatch");
            DenseMatrix c(a.rows_, b.cols_);
            for (std::size_t i = 0; i < a.rows_; ++i)
                for (std::size_t k = 0; k < a.cols_; ++k)
                {
                    const Scalar& aik = a(i, k);
                    if (aik == 0)
                        continue;
                    for (std::size_t j = 0; j < b.cols_; ++j)
                        if (b(k, j) != 0)
                            c(i, j) += aik * b(k, j);
                }
            return c;
        }

        friend bool operator==(const DenseMatrix& a, const DenseMatrix& b)
        {
            return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
        }

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Scalar> data_;
};

using RatMatrix = DenseMatrix<Rational>;
using IntMatrix = DenseMatrix<Integer>;

RatVector operator*(const RatMatrix& m, const RatVector& v);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Basis of the right null space, each vector primitive (coprime integer
/// entries). Empty iff rank(m) == cols(m). Deterministic for a given m.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// A particular solution of m x = rhs with all free variables set to zero,
/// or nullopt if the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs);

Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);

/// Result of a Smith normal form computation: left * m * right is the
/// diagonal matrix with `invariant_factors` leading its diagonal.
struct SmithForm
{
    std::vector<Integer> invariant_factors;   // positive, each divides the next
    IntMatrix left;
    IntMatrix right;
};

/// Smith normal form with unimodular transforms. Pivots on the nonzero
/// entry of least absolute value.
SmithForm smith_normal_form(const IntMatrix& m);

/// Invariant factors only, without transforms. Eliminates unit pivots on a
/// sparse machine-integer copy first and finishes the remainder densely,
/// which is what boundary matrices of cell complexes want.
std::vector<Integer> invariant_factors(const IntMatrix& m);

}   // namespace bendlocus

#endif
