#include "isofill/filling.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <unordered_set>

#include "isofill/errors.hpp"

namespace isofill {

FillingResult filling_norm(const WindowComplex& window, const Chain& b, const SolverOptions& options)
{
    if (b.dimension() != 1)
        throw PreconditionFailed("filling_norm needs a 1-chain");
    const std::vector<Rational> rhs = window.to_vector(b);
    FillingResult result;
    result.radius = window.radius();
    result.injective = check_injective(window.boundary2());
    const LpSolution sol = solve_l1(window.boundary2(), rhs, options);
    if (sol.optimal())
    {
        result.value = sol.value;
        result.witness = window.to_chain(2, sol.witness);
    }
    return result;
}

// ---------------------------------------------------------------------------

GroupElement disjoint_translate(const Presentation& presentation, const std::set<Cell>& a, const std::set<Cell>& b,
                                std::size_t ball_cap)
{
    if (presentation.oracle->order())
        throw FiniteGroup();
    for (const std::set<Cell>* s : {&a, &b})
        for (const Cell& c : *s)
            check_cell(presentation, c);
    const std::unordered_set<Cell, CellHash> occupied(a.begin(), a.end());
    BallEnumerator spheres(presentation, ball_cap);
    for (int k = 0;; ++k)
    {
        for (const GroupElement& g : spheres.sphere(k))
        {
            const bool clear = std::none_of(b.begin(), b.end(),
                                            [&](const Cell& c) { return occupied.count(translate(g, c)) > 0; });
            if (clear)
                return g;
        }
    }
}

std::vector<int> extract_superlinear(std::span<const Rational> samples, std::optional<std::size_t> max_terms)
{
    std::vector<int> out;
    int k = 1;
    for (std::size_t n = 1; n <= samples.size(); ++n)
    {
        if (max_terms && out.size() >= *max_terms)
            break;
        if (samples[n - 1] > Rational(k) * static_cast<long>(n))
        {
            out.push_back(static_cast<int>(n));
            ++k;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

Chain commutator_cycle(const Presentation& presentation, int m, const Rational& scale)
{
    if (presentation.generator_count() < 2)
        throw PreconditionFailed("the commutator family needs at least two generators");
    if (m < 0)
        throw PreconditionFailed("commutator family parameter must be nonnegative");
    Word w;
    for (const Letter l : {Letter{0, false}, Letter{1, false}, Letter{0, true}, Letter{1, true}})
        w.insert(w.end(), static_cast<std::size_t>(m), l);
    return scale * trace_word(presentation, w, presentation.identity());
}

CycleFamily commutator_family(const Presentation& presentation)
{
    return {"commutator", [presentation](int m) { return commutator_cycle(presentation, m); }};
}

CycleFamily scaled_commutator_family(const Presentation& presentation)
{
    return {"scaled-commutator", [presentation](int m) {
                Chain c = commutator_cycle(presentation, m);
                const Rational norm = l1_norm(c);
                return norm == 0 ? c : Rational(1) / norm * c;
            }};
}

std::vector<LabeledCycle> family_members(const CycleFamily& family, int first, int last)
{
    std::vector<LabeledCycle> out;
    for (int m = first; m <= last; ++m)
        out.push_back({family.name + ":" + std::to_string(m), family.member(m)});
    return out;
}

std::vector<LabeledCycle> exhaustive_cycles(const WindowComplex& window, int ball_radius, int max_l1, std::size_t cap)
{
    std::vector<std::size_t> edges;
    const auto cells1 = window.cells(1);
    for (std::size_t j = 0; j < cells1.size(); ++j)
    {
        if (cells1[j].translate.word_length() <= ball_radius)
            edges.push_back(j);
    }
    // Vertex incidences and, per vertex, the last edge (in scan order) touching it.
    const SparseMatrix& d1 = window.boundary1();
    std::vector<int> last_edge(d1.rows(), -1);
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (const auto& entry : d1.column(edges[e]))
            last_edge[entry.row] = static_cast<int>(e);
    std::vector<std::vector<std::size_t>> closes(edges.size());
    for (std::size_t v = 0; v < last_edge.size(); ++v)
    {
        if (last_edge[v] >= 0)
            closes[static_cast<std::size_t>(last_edge[v])].push_back(v);
    }

    std::vector<LabeledCycle> out;
    std::vector<long> coeff(edges.size(), 0);
    std::vector<long> vertex_sum(d1.rows(), 0);
    std::size_t visited = 0;

    auto emit = [&]() {
        Chain c(1);
        for (std::size_t e = 0; e < edges.size(); ++e)
        {
            if (coeff[e] != 0)
                c.add(cells1[edges[e]], coeff[e]);
        }
        out.push_back({"cycle#" + std::to_string(out.size() + 1), std::move(c)});
    };

    std::function<void(std::size_t, long, bool)> dfs = [&](std::size_t e, long remaining, bool nonzero) {
        if (++visited > cap)
            throw BudgetExceeded("exhaustive cycle enumeration exceeded " + std::to_string(cap) + " candidates");
        if (e == edges.size())
        {
            if (nonzero)
                emit();
            return;
        }
        for (long c = -remaining; c <= remaining; ++c)
        {
            if (!nonzero && c < 0)
                continue;
            coeff[e] = c;
            for (const auto& entry : d1.column(edges[e]))
                vertex_sum[entry.row] += c * (entry.value > 0 ? 1 : -1);
            const bool balanced = std::all_of(closes[e].begin(), closes[e].end(),
                                              [&](std::size_t v) { return vertex_sum[v] == 0; });
            if (balanced)
                dfs(e + 1, remaining - std::abs(c), nonzero || c != 0);
            for (const auto& entry : d1.column(edges[e]))
                vertex_sum[entry.row] -= c * (entry.value > 0 ? 1 : -1);
        }
        coeff[e] = 0;
    };
    if (max_l1 > 0)
        dfs(0, max_l1, false);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<IsoperimetricSample> isoperimetric_lower_bounds(const WindowComplex& window,
                                                            std::span<const Rational> budgets,
                                                            std::span<const LabeledCycle> family,
                                                            const SolverOptions& options)
{
    struct Certified
    {
        Rational norm;
        Rational filling;
        const std::string* id;
    };
    std::vector<Certified> certified;
    for (const LabeledCycle& c : family)
    {
        if (c.cycle.dimension() != 1)
            throw PreconditionFailed("family member '" + c.id + "' is not a 1-chain");
        std::vector<Rational> rhs;
        try
        {
            rhs = window.to_vector(c.cycle);
        }
        catch (const OutOfWindow&)
        {
            continue;
        }
        const LpSolution sol = solve_l1(window.boundary2(), rhs, options);
        if (sol.optimal())
            certified.push_back({l1_norm(c.cycle), sol.value, &c.id});
    }

    std::vector<IsoperimetricSample> out;
    for (const Rational& budget : budgets)
    {
        IsoperimetricSample s{budget, 0, "zero", window.radius()};
        for (const Certified& c : certified)
        {
            if (c.norm <= budget && c.filling > s.lower_bound)
            {
                s.lower_bound = c.filling;
                s.witness_id = *c.id;
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

int basepoint_radius(const Chain& c)
{
    int r = 0;
    for (const auto& [cell, q] : c.terms())
        r = std::max(r, cell.translate.word_length());
    return r;
}

bool chain_in_window(const WindowComplex& window, const Chain& c)
{
    return std::all_of(c.terms().begin(), c.terms().end(), [&](const auto& t) { return window.contains(t.first); });
}

}  // namespace

NuWitness nu_witness(const WindowComplex& window, int l, const Rational& epsilon, const CycleFamily& family,
                     const NuOptions& options)
{
    const Presentation& p = window.presentation();
    if (l < 1)
        throw PreconditionFailed("nu_witness needs l >= 1");
    if (epsilon < 0)
        throw PreconditionFailed("nu_witness needs epsilon >= 0");
    if (p.oracle->order())
        throw FiniteGroup();
    if (!check_injective(window.boundary2()))
        throw PreconditionFailed("nu_witness needs an injective boundary map on the window");

    NuWitness w;
    w.l = l;
    w.epsilon = epsilon;
    std::set<Cell> placed;
    int prev_m = 0;
    Rational prev_n = 0;

    for (int k = 1; k <= l; ++k)
    {
        std::optional<NuStep> step;
        for (int m = prev_m + 1; !step; ++m)
        {
            if (options.max_m > 0 && m > options.max_m)
                throw WindowTooSmall("no family member up to m = " + std::to_string(options.max_m) +
                                         " satisfies step " + std::to_string(k),
                                     -1);
            Chain alpha = family.member(m);
            const Rational n = l1_norm(alpha);
            if (n <= prev_n)
                continue;
            if (!chain_in_window(window, alpha))
                throw WindowTooSmall("family member m = " + std::to_string(m) + " leaves the window",
                                     basepoint_radius(alpha));
            FillingResult fill = filling_norm(window, alpha, options.solver);
            if (!fill.feasible())
                throw WindowTooSmall("family member m = " + std::to_string(m) + " has no in-window filling", -1);
            if (*fill.value + epsilon > Rational(k) * n)
            {
                NuStep s;
                s.k = k;
                s.m = m;
                s.n = n;
                s.filling = *fill.value;
                s.alpha = std::move(alpha);
                s.mu = std::move(fill.witness);
                step = std::move(s);
            }
            prev_m = m;
        }

        std::set<Cell> incoming = support(step->alpha);
        for (const Cell& c : support(step->mu))
            incoming.insert(c);
        const GroupElement g = disjoint_translate(p, placed, incoming, options.ball_cap);
        step->alpha = translate(g, step->alpha);
        step->mu = translate(g, step->mu);
        step->shift = g.canonical_form();
        if (!chain_in_window(window, step->alpha) || !chain_in_window(window, step->mu))
            throw WindowTooSmall("translate of step " + std::to_string(k) + " leaves the window",
                                 std::max(basepoint_radius(step->alpha), basepoint_radius(step->mu)));
        for (const Cell& c : support(step->alpha))
            placed.insert(c);
        for (const Cell& c : support(step->mu))
            placed.insert(c);
        prev_n = step->n;
        w.steps.push_back(std::move(*step));
    }

    const Rational inv_l = Rational(1, l);
    Chain expected_boundary(1);
    for (const NuStep& s : w.steps)
    {
        w.nu += (inv_l / s.n) * s.mu;
        expected_boundary += (inv_l / s.n) * s.alpha;
    }
    w.boundary = boundary(window, w.nu);
    if (!(w.boundary == expected_boundary))
        throw std::logic_error("boundary of nu_l differs from the combination of the alpha_k");

    w.supports_disjoint = true;
    for (std::size_t i = 0; i < w.steps.size(); ++i)
        for (std::size_t j = i + 1; j < w.steps.size(); ++j)
        {
            for (const auto& [cell, q] : w.steps[j].alpha.terms())
                w.supports_disjoint = w.supports_disjoint && w.steps[i].alpha.coefficient(cell) == 0;
            for (const auto& [cell, q] : w.steps[j].mu.terms())
                w.supports_disjoint = w.supports_disjoint && w.steps[i].mu.coefficient(cell) == 0;
        }

    w.nu_norm = l1_norm(w.nu);
    w.boundary_norm = l1_norm(w.boundary);
    w.lower_bound = Rational(l + 1, 2) - 2 * epsilon;
    const FillingResult fill = filling_norm(window, w.boundary, options.solver);
    w.boundary_filling = fill.value.value_or(Rational(-1));
    w.boundary_at_most_one = w.boundary_norm <= 1;
    w.norm_at_least_bound = w.nu_norm >= w.lower_bound;
    w.filling_equals_norm = fill.feasible() && *fill.value == w.nu_norm;
    return w;
}

NuWitness nu_witness(const WindowComplex& window, int l, const Rational& epsilon, const NuOptions& options)
{
    return nu_witness(window, l, epsilon, commutator_family(window.presentation()), options);
}

// ---------------------------------------------------------------------------

namespace {

void require_whole_finite_group(const WindowComplex& window)
{
    const Presentation& p = window.presentation();
    const auto order = p.oracle->order();
    if (!order)
        throw NotFinite();
    if (ball(p, window.radius()).size() != *order)
        throw WindowTooSmall("the window does not cover the whole finite group", group_diameter(p));
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n)
{
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;)
    {
        if (idx[i] < n - k + i)
        {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

FiniteConstant finite_linear_constant(const WindowComplex& window, const SolverOptions& options,
                                      std::size_t subset_cap)
{
    require_whole_finite_group(window);
    const SparseMatrix& a = window.boundary2();
    const DenseMatrix dense = a.to_dense();
    const std::size_t m = a.rows();

    FiniteConstant out;
    const RowEchelon ech = row_echelon(dense);
    const std::size_t d = ech.rank();
    out.image_dimension = d;
    out.constant = 0;
    if (d == 0)
        return out;

    // Basis of the image: the pivot columns of d2.
    DenseMatrix basis(m, std::vector<Rational>(d));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < d; ++c)
            basis[i][c] = dense[i][ech.pivot_columns[c]];

    std::set<std::vector<Rational>> found;
    std::vector<std::size_t> zeros(d - 1);
    for (std::size_t i = 0; i < zeros.size(); ++i)
        zeros[i] = i;
    std::size_t tried = 0;
    do
    {
        if (++tried > subset_cap)
            throw BudgetExceeded("vertex enumeration exceeded " + std::to_string(subset_cap) + " coordinate subsets");
        DenseMatrix restricted;
        for (std::size_t i : zeros)
            restricted.push_back(basis[i]);
        const RowEchelon sub = restricted.empty() ? RowEchelon{} : row_echelon(restricted);
        if (sub.rank() != d - 1)
            continue;
        std::vector<bool> is_pivot(d, false);
        for (std::size_t c : sub.pivot_columns)
            is_pivot[c] = true;
        const std::size_t free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());
        std::vector<Rational> y(d, 0);
        y[free_col] = 1;
        for (std::size_t i = 0; i < sub.rank(); ++i)
            y[sub.pivot_columns[i]] = -sub.rows[i][free_col];
        std::vector<Rational> v(m, 0);
        Rational norm = 0;
        for (std::size_t i = 0; i < m; ++i)
        {
            for (std::size_t c = 0; c < d; ++c)
            {
                if (y[c] != 0 && basis[i][c] != 0)
                    v[i] += basis[i][c] * y[c];
            }
            norm += abs_value(v[i]);
        }
        auto lead = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
        const Rational scale = (*lead < 0 ? Rational(-1) : Rational(1)) / norm;
        for (Rational& q : v)
            q *= scale;
        found.insert(std::move(v));
    } while (m > 0 && d - 1 <= m && next_combination(zeros, m));

    for (const std::vector<Rational>& v : found)
    {
        const LpSolution sol = solve_l1(a, v, options);
        if (!sol.optimal())
            throw std::logic_error("a vertex of the image unit ball has no filling");
        out.vertices.push_back(v);
        out.vertex_fillings.push_back(sol.value);
        if (!out.extremal || sol.value > out.constant)
        {
            out.constant = sol.value;
            out.extremal = out.vertices.size() - 1;
        }
    }
    return out;
}

NormComparison compare_filling_norms(const WindowComplex& first, const WindowComplex& second,
                                     const SolverOptions& options)
{
    const FiniteConstant v1 = finite_linear_constant(first, options);
    const FiniteConstant v2 = finite_linear_constant(second, options);

    // Match 1-cells by generator and canonical form.
    std::map<std::pair<int, std::string>, std::size_t> second_index;
    const auto cells2 = second.cells(1);
    for (std::size_t j = 0; j < cells2.size(); ++j)
        second_index[{cells2[j].orbit, cells2[j].translate.canonical_form()}] = j;
    const auto cells1 = first.cells(1);
    if (cells1.size() != cells2.size())
        throw PreconditionFailed("the two windows have different 1-skeleta");
    std::vector<std::size_t> to_second(cells1.size());
    std::vector<std::size_t> to_first(cells1.size());
    for (std::size_t j = 0; j < cells1.size(); ++j)
    {
        auto it = second_index.find({cells1[j].orbit, cells1[j].translate.canonical_form()});
        if (it == second_index.end())
            throw PreconditionFailed("the two windows have different 1-skeleta");
        to_second[j] = it->second;
        to_first[it->second] = j;
    }

    std::vector<std::vector<Rational>> vertices = v1.vertices;
    for (const auto& v : v2.vertices)
    {
        std::vector<Rational> mapped(v.size());
        for (std::size_t j = 0; j < v.size(); ++j)
            mapped[to_first[j]] = v[j];
        vertices.push_back(std::move(mapped));
    }

    NormComparison out;
    bool first_ratio = true;
    for (const auto& v : vertices)
    {
        std::vector<Rational> mapped(v.size());
        for (std::size_t j = 0; j < v.size(); ++j)
            mapped[to_second[j]] = v[j];
        const LpSolution s1 = solve_l1(first.boundary2(), v, options);
        const LpSolution s2 = solve_l1(second.boundary2(), mapped, options);
        if (!s1.optimal() || !s2.optimal())
            throw PreconditionFailed("the two presentations have different images of the boundary map");
        const Rational ratio = s2.value / s1.value;
        if (first_ratio || ratio > out.max_ratio)
            out.max_ratio = ratio;
        if (first_ratio || ratio < out.min_ratio)
            out.min_ratio = ratio;
        first_ratio = false;
        ++out.vertices_checked;
    }
    if (out.vertices_checked == 0)
    {
        out.constant = 1;
        return out;
    }
    out.constant = std::max(out.max_ratio, Rational(1) / out.min_ratio);
    return out;
}

}  // namespace isofill
