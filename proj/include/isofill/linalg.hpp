#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isofill/rational.hpp"

namespace isofill {

using DenseMatrix = std::vector<std::vector<Rational>>;

/** Column-major sparse matrix over the rationals; no stored zeros. */
class SparseMatrix
{
    public:
        struct Entry
        {
            std::size_t row;
            Rational value;
        };

        SparseMatrix() = default;
        SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return columns_.size(); }
        std::size_t nonzeros() const;

        /// Adds `value` to entry (row, col); entries that cancel to zero are removed.
        void add(std::size_t row, std::size_t col, const Rational& value);
        Rational at(std::size_t row, std::size_t col) const;
        /// Entries of one column sorted by row.
        std::span<const Entry> column(std::size_t col) const { return columns_.at(col); }

        std::vector<Rational> multiply(std::span<const Rational> x) const;

        static SparseMatrix from_dense(const DenseMatrix& dense);
        DenseMatrix to_dense() const;

    private:
        std::size_t rows_ = 0;
        std::vector<std::vector<Entry>> columns_;
};

/**
 * Reduced row echelon form of [A | b] computed by exact Gauss-Jordan
 * elimination, pivoting on the first nonzero entry of each column.
 */
struct RowEchelon
{
    /// The nonzero rows of the reduced matrix; row i has a leading 1 in pivot_columns[i].
    DenseMatrix rows;
    std::vector<Rational> rhs;
    std::vector<std::size_t> pivot_columns;
    /// False when a zero row of A meets a nonzero entry of b.
    bool consistent = true;

    std::size_t rank() const { return pivot_columns.size(); }
};

RowEchelon row_echelon(DenseMatrix a, std::vector<Rational> b);
RowEchelon row_echelon(DenseMatrix a);

std::size_t rank(const DenseMatrix& a);

}  // namespace isofill
