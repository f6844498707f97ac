#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "isofill/complex.hpp"
#include "isofill/l1_solver.hpp"

namespace isofill {

// ---------------------------------------------------------------------------
// Filling norms

struct FillingResult
{
    /// Smallest l1 norm of a window 2-chain with boundary b; empty when no
    /// window 2-chain has boundary b (a larger window might still fill it).
    std::optional<Rational> value;
    Chain witness{2};
    int radius = 0;
    /// Whether the window boundary map C2 -> C1 is injective.
    bool injective = false;

    bool feasible() const { return value.has_value(); }
};

/**
 * Filling norm of a 1-chain relative to the window: the exact minimum of |c|
 * over window 2-chains with boundary b. It bounds the true filling norm from
 * above and can only decrease as the window grows. Throws OutOfWindow when b
 * has a cell outside the window.
 */
FillingResult filling_norm(const WindowComplex& window, const Chain& b, const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Combinatorial helpers

/**
 * Shortest g (shortlex tie-break) with A and gB disjoint, found by scanning
 * balls of increasing radius. Every cell has trivial stabiliser and the group
 * is infinite, so the scan terminates. Throws FiniteGroup for a finite oracle
 * and BudgetExceeded if the ball cap is reached first.
 */
GroupElement disjoint_translate(const Presentation& presentation, const std::set<Cell>& a, const std::set<Cell>& b,
                                std::size_t ball_cap = kDefaultBallCap);

/**
 * Greedy strictly increasing sequence n_1 < n_2 < ... with f(n_k) > k n_k:
 * n_1 is the least n with f(n) > n, and n_{k+1} the least n > n_k with
 * f(n) > (k+1) n. `samples[i]` holds f(i + 1). Stops when the samples run out
 * or `max_terms` terms have been found.
 */
std::vector<int> extract_superlinear(std::span<const Rational> samples,
                                     std::optional<std::size_t> max_terms = std::nullopt);

// ---------------------------------------------------------------------------
// Cycle families

struct CycleFamily
{
    std::string name;
    /// Member m >= 1 of the family, a 1-cycle based at the identity.
    std::function<Chain(int)> member;
};

struct LabeledCycle
{
    std::string id;
    Chain cycle{1};
};

/// The edge cycle of [x^m, y^m] = x^m y^m x^-m y^-m from the identity, times `scale`.
/// Uses the first two generators; throws PreconditionFailed with fewer.
Chain commutator_cycle(const Presentation& presentation, int m, const Rational& scale = 1);

/// m -> [x^m, y^m] (l1 norm 4m in the free abelian group of rank 2).
CycleFamily commutator_family(const Presentation& presentation);
/// m -> [x^m, y^m] / |[x^m, y^m]|, the unit-norm cycles a_m.
CycleFamily scaled_commutator_family(const Presentation& presentation);

/// Members first..last of a family with ids "<name>:<m>".
std::vector<LabeledCycle> family_members(const CycleFamily& family, int first, int last);

/**
 * Every nonzero integer 1-cycle supported on window edges based in
 * ball(ball_radius) with l1 norm at most `max_l1`, up to sign (the first
 * nonzero coefficient is positive). Ids are "cycle#<n>" in enumeration order.
 * Throws BudgetExceeded after `cap` candidate assignments.
 */
std::vector<LabeledCycle> exhaustive_cycles(const WindowComplex& window, int ball_radius, int max_l1,
                                            std::size_t cap = 5000000);

// ---------------------------------------------------------------------------
// Isoperimetric data

struct IsoperimetricSample
{
    Rational budget;
    /// max of the filling norm over family cycles b with |b| <= budget; 0 if none.
    Rational lower_bound;
    /// Id of the cycle realising the bound, "zero" for the zero cycle.
    std::string witness_id;
    int radius = 0;
};

/**
 * Certified lower bounds for f1 at each budget. A family cycle counts only if
 * it lies in the window and has an in-window filling; for such a cycle the
 * value found is at least its true filling norm when the window boundary map
 * is injective, and the sup over all cycles dominates it in any case.
 */
std::vector<IsoperimetricSample> isoperimetric_lower_bounds(const WindowComplex& window,
                                                            std::span<const Rational> budgets,
                                                            std::span<const LabeledCycle> family,
                                                            const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// The blow-up witness nu_l

struct NuStep
{
    int k = 0;
    /// Family parameter chosen for this step.
    int m = 0;
    /// n_k = |alpha_k|.
    Rational n;
    /// Filling norm of alpha_k, equal to |mu_k|.
    Rational filling;
    Chain alpha{1};
    Chain mu{2};
    /// Translation applied to make the supports disjoint from earlier steps.
    std::string shift;
};

struct NuWitness
{
    int l = 0;
    Rational epsilon;
    std::vector<NuStep> steps;
    /// nu_l = (1/l) sum_k (1/n_k) mu_k and its boundary.
    Chain nu{2};
    Chain boundary{1};
    Rational nu_norm;
    Rational boundary_norm;
    /// Window filling norm of the boundary, computed independently by the LP.
    Rational boundary_filling;
    /// (l + 1)/2 - 2 epsilon.
    Rational lower_bound;

    bool supports_disjoint = false;
    bool boundary_at_most_one = false;
    bool norm_at_least_bound = false;
    bool filling_equals_norm = false;

    bool all_pass() const
    {
        return supports_disjoint && boundary_at_most_one && norm_at_least_bound && filling_equals_norm;
    }
};

struct NuOptions
{
    SolverOptions solver;
    std::size_t ball_cap = kDefaultBallCap;
    /// Largest family parameter tried per step; 0 means until the member leaves the window.
    int max_m = 0;
};

/**
 * Builds nu_l step by step. Step k takes the least family member alpha (with
 * |alpha| larger than the previous n) such that filling(alpha) + epsilon > k |alpha|,
 * sets n_k = |alpha| and mu_k to the exact minimal filling, then translates
 * both by disjoint_translate against the union of all earlier supports.
 * Finally checks |d nu_l| <= 1, |nu_l| >= (l+1)/2 - 2 epsilon and that the LP
 * filling norm of d nu_l equals |nu_l|.
 *
 * Needs an injective window boundary map (PreconditionFailed otherwise) and an
 * infinite group (FiniteGroup). Throws WindowTooSmall, carrying the radius it
 * needs when known, if a member or translate leaves the window.
 */
NuWitness nu_witness(const WindowComplex& window, int l, const Rational& epsilon, const CycleFamily& family,
                     const NuOptions& options = {});
NuWitness nu_witness(const WindowComplex& window, int l, const Rational& epsilon, const NuOptions& options = {});

// ---------------------------------------------------------------------------
// Finite groups

struct FiniteConstant
{
    /// Least k with filling(z) <= k |z| for every boundary z.
    Rational constant;
    /// Vertices of {z in image d2 : |z| <= 1}, one per +/- pair.
    std::vector<std::vector<Rational>> vertices;
    std::vector<Rational> vertex_fillings;
    /// Index into `vertices` of a vertex attaining the constant (if any).
    std::optional<std::size_t> extremal;
    std::size_t image_dimension = 0;
};

/**
 * Linear isoperimetric constant of a finite group, computed exactly.
 *
 * The filling norm is convex, so its maximum over the polytope
 * {z in image d2 : |z|_1 <= 1} sits at a vertex. Vertices are +-v/|v| for the
 * minimal-support vectors v of the image; each comes from a set of d-1 zero
 * coordinates (d = dim image) on which the image has a one-dimensional
 * annihilated part. Needs a finite oracle (NotFinite) and a window that covers
 * the whole group (WindowTooSmall).
 */
FiniteConstant finite_linear_constant(const WindowComplex& window, const SolverOptions& options = {},
                                      std::size_t subset_cap = 5000000);

struct NormComparison
{
    /// C with C^-1 ||z|| <= ||z||' <= C ||z|| on every checked vertex.
    Rational constant;
    Rational max_ratio;
    Rational min_ratio;
    std::size_t vertices_checked = 0;
};

/**
 * Compares the filling norms induced by two presentations of the same finite
 * group with the same generators (two free covers of the same image of d2) on
 * the vertex sets of both unit balls.
 */
NormComparison compare_filling_norms(const WindowComplex& first, const WindowComplex& second,
                                     const SolverOptions& options = {});

}  // namespace isofill
