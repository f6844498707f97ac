#include "isofill/l1_solver.hpp"

#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>

#include "isofill/errors.hpp"

namespace isofill {

namespace {

struct RowView
{
    std::vector<std::vector<std::pair<std::size_t, Rational>>> entries;
};

RowView rows_of(const SparseMatrix& A)
{
    RowView view;
    view.entries.resize(A.rows());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (const auto& e : A.column(j))
            view.entries[e.row].emplace_back(j, e.value);
    return view;
}

/// Outcome of the singleton-row substitutions.
struct Presolve
{
    bool infeasible = false;
    std::vector<Rational> fixed;  // value of every eliminated column
    std::vector<bool> active;     // columns left for the simplex
    std::vector<Rational> residual;
    std::vector<std::size_t> live_count;
};

Presolve presolve(const SparseMatrix& A, const RowView& rows, std::span<const Rational> b)
{
    Presolve p;
    const std::size_t m = A.rows(), n = A.cols();
    p.fixed.assign(n, 0);
    p.active.assign(n, true);
    p.residual.assign(b.begin(), b.end());
    p.live_count.resize(m);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < m; ++i)
    {
        p.live_count[i] = rows.entries[i].size();
        if (p.live_count[i] == 1)
            queue.push_back(i);
    }
    while (!queue.empty())
    {
        const std::size_t i = queue.front();
        queue.pop_front();
        if (p.live_count[i] != 1)
            continue;
        for (const auto& [j, a] : rows.entries[i])
        {
            if (!p.active[j])
                continue;
            const Rational x = p.residual[i] / a;
            p.fixed[j] = x;
            p.active[j] = false;
            for (const auto& e : A.column(j))
            {
                if (x != 0)
                    p.residual[e.row] -= e.value * x;
                if (--p.live_count[e.row] == 1)
                    queue.push_back(e.row);
            }
            break;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
    {
        if (p.live_count[i] == 0 && p.residual[i] != 0)
            p.infeasible = true;
    }
    return p;
}

void dump_tableau(std::ostream& out, const DenseMatrix& t, const std::vector<Rational>& rhs,
                  const std::vector<Rational>& reduced, const std::vector<std::size_t>& basis)
{
    out << "tableau " << t.size() << "x" << reduced.size() << "\n  d:";
    for (const Rational& d : reduced)
        out << ' ' << to_string(d);
    out << '\n';
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        out << "  [" << basis[i] << "]";
        for (const Rational& v : t[i])
            out << ' ' << to_string(v);
        out << " | " << to_string(rhs[i]) << '\n';
    }
}

/// Dense split-variable simplex on the presolved remainder; returns false if infeasible.
bool dense_l1(const DenseMatrix& a, std::size_t n, const std::vector<Rational>& b, std::vector<Rational>& x,
              std::size_t& pivots, const SolverOptions& options)
{
    x.assign(n, 0);
    RowEchelon ech = row_echelon(a, b);
    if (!ech.consistent)
        return false;
    const std::size_t rho = ech.rank();
    if (rho == 0)
        return true;

    // Variable 2j is c+_j, variable 2j+1 is c-_j.
    const std::size_t vars = 2 * n;
    DenseMatrix t(rho, std::vector<Rational>(vars));
    std::vector<Rational> rhs = ech.rhs;
    std::vector<std::size_t> basis(rho);
    for (std::size_t i = 0; i < rho; ++i)
    {
        const bool negate = rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
        {
            const Rational& v = ech.rows[i][j];
            if (v == 0)
                continue;
            t[i][2 * j] = negate ? Rational(-v) : v;
            t[i][2 * j + 1] = negate ? v : Rational(-v);
        }
        if (negate)
            rhs[i] = -rhs[i];
        basis[i] = 2 * ech.pivot_columns[i] + (negate ? 1 : 0);
    }
    std::vector<Rational> reduced(vars, 1);
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t v = 0; v < vars; ++v)
        {
            if (t[i][v] != 0)
                reduced[v] -= t[i][v];
        }

    while (true)
    {
        if (options.trace)
            dump_tableau(*options.trace, t, rhs, reduced, basis);
        std::size_t entering = vars;
        for (std::size_t v = 0; v < vars; ++v)
        {
            if (reduced[v] < 0)
            {
                entering = v;
                break;
            }
        }
        if (entering == vars)
            break;

        std::size_t leaving = rho;
        Rational best;
        for (std::size_t i = 0; i < rho; ++i)
        {
            if (t[i][entering] <= 0)
                continue;
            const Rational ratio = rhs[i] / t[i][entering];
            if (leaving == rho || ratio < best || (ratio == best && basis[i] < basis[leaving]))
            {
                leaving = i;
                best = ratio;
            }
        }
        if (leaving == rho)
            throw std::logic_error("l1 simplex reported an unbounded direction");
        if (++pivots > options.pivot_limit)
            throw BudgetExceeded("simplex pivot limit of " + std::to_string(options.pivot_limit) + " reached");

        const Rational p = t[leaving][entering];
        for (Rational& v : t[leaving])
        {
            if (v != 0)
                v /= p;
        }
        rhs[leaving] /= p;
        auto eliminate = [&](std::vector<Rational>& row, Rational& row_rhs) {
            const Rational f = row[entering];
            if (f == 0)
                return;
            for (std::size_t v = 0; v < vars; ++v)
            {
                if (t[leaving][v] != 0)
                    row[v] -= f * t[leaving][v];
            }
            row_rhs -= f * rhs[leaving];
        };
        for (std::size_t i = 0; i < rho; ++i)
        {
            if (i != leaving)
                eliminate(t[i], rhs[i]);
        }
        Rational objective_shift = 0;
        eliminate(reduced, objective_shift);
        basis[leaving] = entering;
    }

    for (std::size_t i = 0; i < rho; ++i)
    {
        const std::size_t j = basis[i] / 2;
        if (basis[i] % 2 == 0)
            x[j] += rhs[i];
        else
            x[j] -= rhs[i];
    }
    return true;
}

}  // namespace

LpSolution solve_l1(const SparseMatrix& A, std::span<const Rational> b, const SolverOptions& options)
{
    if (b.size() != A.rows())
        throw PreconditionFailed("right-hand side length " + std::to_string(b.size()) + " does not match " +
                                 std::to_string(A.rows()) + " rows");
    LpSolution sol;
    const RowView rows = rows_of(A);
    Presolve pre = presolve(A, rows, b);
    if (pre.infeasible)
        return sol;

    std::vector<std::size_t> live_rows, live_cols, col_pos(A.cols(), 0);
    for (std::size_t j = 0; j < A.cols(); ++j)
    {
        if (pre.active[j])
        {
            col_pos[j] = live_cols.size();
            live_cols.push_back(j);
        }
    }
    for (std::size_t i = 0; i < A.rows(); ++i)
    {
        if (pre.live_count[i] > 0)
            live_rows.push_back(i);
    }

    std::vector<Rational> witness = pre.fixed;
    if (!live_cols.empty())
    {
        DenseMatrix sub(live_rows.size(), std::vector<Rational>(live_cols.size()));
        std::vector<Rational> sub_b(live_rows.size());
        for (std::size_t r = 0; r < live_rows.size(); ++r)
        {
            const std::size_t i = live_rows[r];
            sub_b[r] = pre.residual[i];
            for (const auto& [j, a] : rows.entries[i])
            {
                if (pre.active[j])
                    sub[r][col_pos[j]] = a;
            }
        }
        std::vector<Rational> x;
        if (!dense_l1(sub, live_cols.size(), sub_b, x, sol.pivots, options))
            return sol;
        for (std::size_t c = 0; c < live_cols.size(); ++c)
            witness[live_cols[c]] = x[c];
    }

    sol.status = LpStatus::optimal;
    sol.value = 0;
    for (const Rational& w : witness)
        sol.value += abs_value(w);
    sol.witness = std::move(witness);
    return sol;
}

LpSolution solve_l1(const L1Program& program, const SolverOptions& options)
{
    return solve_l1(program.A, program.b, options);
}

// ---------------------------------------------------------------------------
// Reference solver. Deliberately shares no code with the simplex path.

namespace {

/// Solves M y = rhs for an m x k matrix; returns false unless the columns are
/// independent and the system is consistent.
bool solve_square_part(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs, std::vector<Rational>& y)
{
    const std::size_t rows = m.size();
    const std::size_t k = rows == 0 ? 0 : m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c)
    {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            return false;  // dependent column
        std::swap(m[piv], m[r]);
        std::swap(rhs[piv], rhs[r]);
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (i == r || m[i][c] == 0)
                continue;
            const Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < k; ++j)
                m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
    {
        if (rhs[i] != 0)
            return false;
    }
    y.assign(k, 0);
    for (std::size_t c = 0; c < k; ++c)
        y[c] = rhs[c] / m[c][c];
    return true;
}

}  // namespace

LpSolution brute_force_min(const L1Program& program)
{
    const std::size_t n = program.A.cols();
    const std::size_t m = program.A.rows();
    if (n > kBruteForceMaxColumns)
        throw TooLarge("brute_force_min handles at most " + std::to_string(kBruteForceMaxColumns) + " columns, got " +
                       std::to_string(n));
    if (program.b.size() != m)
        throw PreconditionFailed("right-hand side length does not match the row count");
    const DenseMatrix dense = program.A.to_dense();

    LpSolution best;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
    {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
        {
            if (mask & (1u << j))
                cols.push_back(j);
        }
        if (cols.size() > m)
            continue;
        std::vector<std::vector<Rational>> sub(m, std::vector<Rational>(cols.size()));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < cols.size(); ++c)
                sub[i][c] = dense[i][cols[c]];
        std::vector<Rational> y;
        if (cols.empty())
        {
            bool zero = true;
            for (const Rational& v : program.b)
                zero = zero && v == 0;
            if (!zero)
                continue;
        }
        else if (!solve_square_part(sub, program.b, y))
        {
            continue;
        }
        Rational norm = 0;
        for (const Rational& v : y)
            norm += v < 0 ? Rational(-v) : v;
        if (!best.optimal() || norm < best.value)
        {
            best.status = LpStatus::optimal;
            best.value = norm;
            best.witness.assign(n, 0);
            for (std::size_t c = 0; c < cols.size(); ++c)
                best.witness[cols[c]] = y[c];
        }
    }
    return best;
}

bool check_injective(const SparseMatrix& A)
{
    const std::size_t m = A.rows(), n = A.cols();
    for (std::size_t j = 0; j < n; ++j)
    {
        if (A.column(j).empty())
            return false;
    }
    // A column that is alone in some row is independent of the others, so it
    // can be removed without changing the answer.
    const RowView rows = rows_of(A);
    std::vector<bool> active(n, true);
    std::vector<std::size_t> live(m);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < m; ++i)
    {
        live[i] = rows.entries[i].size();
        if (live[i] == 1)
            queue.push_back(i);
    }
    while (!queue.empty())
    {
        const std::size_t i = queue.front();
        queue.pop_front();
        if (live[i] != 1)
            continue;
        for (const auto& [j, a] : rows.entries[i])
        {
            if (!active[j])
                continue;
            active[j] = false;
            for (const auto& e : A.column(j))
            {
                if (--live[e.row] == 1)
                    queue.push_back(e.row);
            }
            break;
        }
    }
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
    {
        if (active[j])
            cols.push_back(j);
    }
    if (cols.empty())
        return true;
    std::vector<std::size_t> col_pos(n, 0);
    for (std::size_t c = 0; c < cols.size(); ++c)
        col_pos[cols[c]] = c;
    DenseMatrix sub;
    for (std::size_t i = 0; i < m; ++i)
    {
        if (live[i] == 0)
            continue;
        std::vector<Rational> row(cols.size());
        for (const auto& [j, a] : rows.entries[i])
        {
            if (active[j])
                row[col_pos[j]] = a;
        }
        sub.push_back(std::move(row));
    }
    return rank(sub) == cols.size();
}

}  // namespace isofill
