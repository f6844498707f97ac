#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "isofill/linalg.hpp"
#include "isofill/rational.hpp"

namespace isofill {

/// minimise |c|_1 subject to A c = b.
struct L1Program
{
    SparseMatrix A;
    std::vector<Rational> b;
};

enum class LpStatus { optimal, infeasible };

struct LpSolution
{
    LpStatus status = LpStatus::infeasible;
    /// Optimal value; meaningful only when status is optimal.
    Rational value;
    /// A c = b exactly and value = sum |c_i|; empty when infeasible.
    std::vector<Rational> witness;
    std::size_t pivots = 0;

    bool optimal() const { return status == LpStatus::optimal; }
};

struct SolverOptions
{
    /// Simplex pivots allowed before BudgetExceeded is thrown.
    std::size_t pivot_limit = 1000000;
    /// When set, every tableau is dumped here.
    std::ostream* trace = nullptr;
};

/**
 * Exact l1 minimisation over the rationals.
 *
 * Rows holding a single live column fix that column's value outright; these
 * substitutions are applied until none remain. The rest is written with split
 * variables c = c+ - c- and solved by a dense exact simplex: reduced row
 * echelon form of [A | b] supplies a feasible starting basis (each pivot
 * column enters as c+ or c- according to the sign of its right-hand side) and
 * Bland's rule drives phase two. The objective is bounded below by zero, so
 * the result is either an attained optimum or infeasibility.
 */
LpSolution solve_l1(const SparseMatrix& A, std::span<const Rational> b, const SolverOptions& options = {});
LpSolution solve_l1(const L1Program& program, const SolverOptions& options = {});

inline constexpr std::size_t kBruteForceMaxColumns = 12;

/**
 * Reference solver: tries every set of linearly independent columns, solves
 * the square part exactly and keeps the smallest feasible l1 norm. The l1 LP
 * attains its optimum at such a basic solution. Throws TooLarge beyond twelve
 * columns.
 */
LpSolution brute_force_min(const L1Program& program);

/// True iff the columns of A are linearly independent over the rationals.
bool check_injective(const SparseMatrix& A);

}  // namespace isofill
