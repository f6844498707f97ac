#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "isofill/group.hpp"
#include "isofill/linalg.hpp"
#include "isofill/rational.hpp"

namespace isofill {

/**
 * A cell of the universal cover of the one-vertex presentation 2-complex.
 *
 * dimension 0: the vertex at `translate` (orbit 0);
 * dimension 1: the edge labelled by generator `orbit` from `translate` to `translate * orbit`;
 * dimension 2: the relator disc `orbit` whose boundary is read from `translate`.
 */
struct Cell
{
    int dimension = 0;
    int orbit = 0;
    GroupElement translate;

    friend bool operator==(const Cell& a, const Cell& b) = default;
    friend bool operator<(const Cell& a, const Cell& b)
    {
        if (a.dimension != b.dimension)
            return a.dimension < b.dimension;
        if (a.orbit != b.orbit)
            return a.orbit < b.orbit;
        return a.translate < b.translate;
    }
};

struct CellHash
{
    std::size_t operator()(const Cell& c) const noexcept
    {
        return GroupElementHash{}(c.translate) * 31 + static_cast<std::size_t>(c.dimension * 1009 + c.orbit);
    }
};

Cell vertex(const GroupElement& at);
Cell edge(int generator, const GroupElement& at);
Cell disc(int relator, const GroupElement& at);

/// Throws PreconditionFailed when the cell does not belong to the presentation complex.
void check_cell(const Presentation& presentation, const Cell& cell);

/** Finitely supported rational chain; every cell has the chain's dimension. */
class Chain
{
    public:
        explicit Chain(int dimension = 1) : dimension_(dimension) {}

        int dimension() const { return dimension_; }
        const std::map<Cell, Rational>& terms() const { return terms_; }
        bool is_zero() const { return terms_.empty(); }
        std::size_t size() const { return terms_.size(); }

        Rational coefficient(const Cell& cell) const;
        /// Adds `value * cell`; coefficients that cancel are erased.
        void add(const Cell& cell, const Rational& value);

        Chain& operator+=(const Chain& other);
        Chain& operator-=(const Chain& other);
        Chain& operator*=(const Rational& q);

        friend Chain operator+(Chain a, const Chain& b) { return a += b; }
        friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
        friend Chain operator*(const Rational& q, Chain c) { return c *= q; }
        friend bool operator==(const Chain& a, const Chain& b)
        {
            return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
        }

    private:
        int dimension_;
        std::map<Cell, Rational> terms_;
};

/// Sum of absolute values of the coefficients.
Rational l1_norm(const Chain& chain);
/// Cells with nonzero coefficient.
std::set<Cell> support(const Chain& chain);

Cell translate(const GroupElement& g, const Cell& cell);
/// Left translation of every cell by g; throws OracleMismatch across groups.
Chain translate(const GroupElement& g, const Chain& chain);

/**
 * The 1-chain traced by reading `word` from vertex `start`: a letter s at the
 * current vertex h contributes +edge(s, h) and moves to hs; an inverse letter
 * contributes -edge(s, h s^-1) and moves to h s^-1.
 */
Chain trace_word(const Presentation& presentation, const Word& word, const GroupElement& start);

/// Boundary of one cell in the full (untruncated) complex.
Chain cell_boundary(const Presentation& presentation, const Cell& cell);
/// Boundary of a chain in the full complex.
Chain boundary(const Presentation& presentation, const Chain& chain);

/**
 * Finite truncation of the cellular chain complex C2 -> C1 -> C0.
 *
 * 2-cells are the relator discs based in ball(r). 1-cells are the edges based
 * in ball(r) together with every edge on the boundary of a window 2-cell, so
 * each window 2-cell has its complete boundary inside the window; 0-cells are
 * the endpoints of window 1-cells. Immutable after construction.
 */
class WindowComplex
{
    public:
        WindowComplex(Presentation presentation, int radius, std::vector<Cell> cells0, std::vector<Cell> cells1,
                      std::vector<Cell> cells2, SparseMatrix boundary1, SparseMatrix boundary2);

        const Presentation& presentation() const { return presentation_; }
        int radius() const { return radius_; }

        std::span<const Cell> cells(int dimension) const;
        std::optional<std::size_t> index_of(const Cell& cell) const;
        bool contains(const Cell& cell) const { return index_of(cell).has_value(); }

        /// Rows: window 1-cells; columns: window 2-cells.
        const SparseMatrix& boundary2() const { return boundary2_; }
        /// Rows: window 0-cells; columns: window 1-cells.
        const SparseMatrix& boundary1() const { return boundary1_; }

        /// Coefficient vector of a chain in window order; throws OutOfWindow.
        std::vector<Rational> to_vector(const Chain& chain) const;
        Chain to_chain(int dimension, std::span<const Rational> coefficients) const;

    private:
        Presentation presentation_;
        int radius_;
        std::vector<Cell> cells_[3];
        std::unordered_map<Cell, std::size_t, CellHash> index_[3];
        SparseMatrix boundary1_;
        SparseMatrix boundary2_;
};

/// Throws PreconditionFailed for r < 1 and BudgetExceeded past the ball cap.
WindowComplex build_window(const Presentation& presentation, int radius, std::size_t ball_cap = kDefaultBallCap);

/// Window boundary of a 2-chain (to a 1-chain) or 1-chain (to a 0-chain); throws OutOfWindow.
Chain boundary(const WindowComplex& window, const Chain& chain);

}  // namespace isofill
