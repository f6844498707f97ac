#include "isofill/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace isofill {

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : columns_)
        n += c.size();
    return n;
}

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value)
{
    if (row >= rows_ || col >= columns_.size())
        throw std::out_of_range("SparseMatrix::add index out of range");
    if (value == 0)
        return;
    auto& c = columns_[col];
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, std::size_t r) { return e.row < r; });
    if (it != c.end() && it->row == row)
    {
        it->value += value;
        if (it->value == 0)
            c.erase(it);
    }
    else
    {
        c.insert(it, Entry{row, value});
    }
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const
{
    for (const Entry& e : columns_.at(col))
    {
        if (e.row == row)
            return e.value;
    }
    return 0;
}

std::vector<Rational> SparseMatrix::multiply(std::span<const Rational> x) const
{
    if (x.size() != cols())
        throw std::invalid_argument("SparseMatrix::multiply dimension mismatch");
    std::vector<Rational> y(rows_);
    for (std::size_t j = 0; j < cols(); ++j)
    {
        if (x[j] == 0)
            continue;
        for (const Entry& e : columns_[j])
            y[e.row] += e.value * x[j];
    }
    return y;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense)
{
    const std::size_t rows = dense.size();
    const std::size_t cols = rows == 0 ? 0 : dense.front().size();
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.add(i, j, dense[i][j]);
    return m;
}

DenseMatrix SparseMatrix::to_dense() const
{
    DenseMatrix d(rows_, std::vector<Rational>(cols()));
    for (std::size_t j = 0; j < cols(); ++j)
        for (const Entry& e : columns_[j])
            d[e.row][j] = e.value;
    return d;
}

RowEchelon row_echelon(DenseMatrix a, std::vector<Rational> b)
{
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a.front().size();
    if (b.size() != m)
        throw std::invalid_argument("row_echelon: right-hand side has the wrong length");
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col)
    {
        std::size_t pivot = r;
        while (pivot < m && a[pivot][col] == 0)
            ++pivot;
        if (pivot == m)
            continue;
        std::swap(a[r], a[pivot]);
        std::swap(b[r], b[pivot]);
        const Rational p = a[r][col];
        if (p != 1)
        {
            for (std::size_t j = col; j < n; ++j)
            {
                if (a[r][j] != 0)
                    a[r][j] /= p;
            }
            b[r] /= p;
        }
        for (std::size_t i = 0; i < m; ++i)
        {
            if (i == r || a[i][col] == 0)
                continue;
            const Rational f = a[i][col];
            for (std::size_t j = col; j < n; ++j)
            {
                if (a[r][j] != 0)
                    a[i][j] -= f * a[r][j];
            }
            b[i] -= f * b[r];
        }
        out.pivot_columns.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
    {
        if (b[i] != 0)
            out.consistent = false;
    }
    a.resize(r);
    b.resize(r);
    out.rows = std::move(a);
    out.rhs = std::move(b);
    return out;
}

RowEchelon row_echelon(DenseMatrix a)
{
    std::vector<Rational> zero(a.size());
    return row_echelon(std::move(a), std::move(zero));
}

std::size_t rank(const DenseMatrix& a)
{
    return row_echelon(a).rank();
}

}  // namespace isofill
