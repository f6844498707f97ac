#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isofill/errors.hpp"
#include "isofill/filling.hpp"

using namespace isofill;

namespace {

Chain square_cycle(const Presentation& z) { return cell_boundary(z, disc(0, z.identity())); }

/// Dense-sampling lower estimate of the finite constant: fill z = B y / |B y|
/// for every integer y in [-k, k]^d, where B is a basis of the image.
Rational sampled_constant(const WindowComplex& w, int k)
{
    const DenseMatrix dense = w.boundary2().to_dense();
    const RowEchelon ech = row_echelon(dense);
    const std::size_t d = ech.rank();
    std::vector<int> y(d, -k);
    Rational best = 0;
    for (;;)
    {
        std::vector<Rational> z(dense.size(), 0);
        for (std::size_t i = 0; i < dense.size(); ++i)
            for (std::size_t c = 0; c < d; ++c)
                z[i] += dense[i][ech.pivot_columns[c]] * y[c];
        Rational norm = 0;
        for (const auto& q : z)
            norm += abs_value(q);
        if (norm != 0)
        {
            for (auto& q : z)
                q /= norm;
            best = std::max(best, solve_l1(w.boundary2(), z).value);
        }
        std::size_t i = 0;
        while (i < d && y[i] == k)
            y[i++] = -k;
        if (i == d)
            break;
        ++y[i];
    }
    return best;
}

}  // namespace

TEST_CASE("scaled commutator cycles fill to n/4", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    for (int n = 1; n <= 5; ++n)
    {
        const WindowComplex w = build_window(z, 2 * n);
        const Chain a = commutator_cycle(z, n, Rational(1, 4 * n));
        CHECK(l1_norm(a) == 1);
        const FillingResult r = filling_norm(w, a);
        REQUIRE(r.feasible());
        CHECK(*r.value == Rational(n, 4));
        CHECK(r.injective);
        CHECK(boundary(w, r.witness) == a);
    }
}

TEST_CASE("commutator cycles fill to m squared", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    for (int m = 1; m <= 4; ++m)
        CHECK(*filling_norm(build_window(z, 2 * m), commutator_cycle(z, m)).value == m * m);
}

TEST_CASE("single square and degenerate cycles", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    const WindowComplex w = build_window(z, 3);
    const FillingResult r = filling_norm(w, square_cycle(z));
    CHECK(*r.value == 1);
    CHECK(r.witness.size() == 1);
    CHECK(r.witness.coefficient(disc(0, z.identity())) == 1);
    CHECK(*filling_norm(w, Chain(1)).value == 0);
    // An open path is not a boundary.
    CHECK_FALSE(filling_norm(w, trace_word(z, z.parse("x y"), z.identity())).feasible());
    CHECK_THROWS_AS(filling_norm(w, commutator_cycle(z, 6)), OutOfWindow);
    CHECK_THROWS_AS(filling_norm(w, Chain(2)), PreconditionFailed);
}

TEST_CASE("single square filling matches brute force at radius one", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    const WindowComplex w = build_window(z, 1);
    REQUIRE(w.cells(2).size() <= kBruteForceMaxColumns);
    const std::vector<Rational> b = w.to_vector(square_cycle(z));
    const LpSolution brute = brute_force_min({w.boundary2(), b});
    CHECK(brute.value == *filling_norm(w, square_cycle(z)).value);
}

TEST_CASE("filling norm invariants", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    const Chain a = commutator_cycle(z, 2);
    const Chain b = translate(z.element("x^-1 y"), square_cycle(z));

    SECTION("window monotonicity")
    {
        Rational previous = *filling_norm(build_window(z, 4), a).value;
        for (int r = 5; r <= 7; ++r)
        {
            const Rational v = *filling_norm(build_window(z, r), a).value;
            CHECK(v <= previous);
            previous = v;
        }
    }
    const WindowComplex w = build_window(z, 5);
    SECTION("homogeneity")
    {
        for (const Rational q : {Rational(3), Rational(-2, 7), Rational(0)})
            CHECK(*filling_norm(w, q * a).value == abs_value(q) * *filling_norm(w, a).value);
    }
    SECTION("subadditivity")
    {
        CHECK(*filling_norm(w, a + b).value <= *filling_norm(w, a).value + *filling_norm(w, b).value);
        CHECK(*filling_norm(w, a - a).value == 0);
    }
    SECTION("equivariance")
    {
        for (const char* g : {"x", "y^-1", "x^-1 y"})
            CHECK(*filling_norm(w, translate(z.element(g), a)).value == *filling_norm(w, a).value);
    }
    SECTION("injective recovery")
    {
        REQUIRE(check_injective(w.boundary2()));
        Chain c(2);
        c.add(disc(0, z.identity()), Rational(2, 3));
        c.add(disc(0, z.element("x y")), Rational(-5));
        c.add(disc(0, z.element("y^-2")), Rational(1, 4));
        const FillingResult r = filling_norm(w, boundary(w, c));
        CHECK(*r.value == l1_norm(c));
        CHECK(r.witness == c);
    }
}

TEST_CASE("window injectivity", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    for (int r = 1; r <= 4; ++r)
        CHECK(check_injective(build_window(z, r).boundary2()));
    // In the universal cover of <x | x^2> both discs share the boundary e(1) + e(x).
    CHECK_FALSE(check_injective(build_window(cyclic_group(2), 1).boundary2()));
    CHECK_FALSE(check_injective(build_window(cyclic_group(3), 1).boundary2()));
    CHECK(check_injective(build_window(surface_group(2), 1).boundary2()));
}

TEST_CASE("disjoint translates", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    const std::set<Cell> sq = support(square_cycle(z));
    const GroupElement g = disjoint_translate(z, sq, sq);
    CHECK(g.word_length() == 2);
    for (const Cell& c : sq)
        CHECK(sq.count(translate(g, c)) == 0);

    const Presentation f = free_group(2);
    const std::set<Cell> e{edge(0, f.identity())};
    CHECK(disjoint_translate(f, e, e) == f.element("x"));
    CHECK(disjoint_translate(f, {}, e).is_identity());

    const Presentation c = cyclic_group(2);
    CHECK_THROWS_AS(disjoint_translate(c, {}, {}), FiniteGroup);
}

TEST_CASE("superlinear subsequences", "[filling]")
{
    auto table = [](auto f, int n) {
        std::vector<Rational> out;
        for (int i = 1; i <= n; ++i)
            out.push_back(f(i));
        return out;
    };
    const auto sq = table([](int n) { return Rational(n * n); }, 10);
    CHECK(extract_superlinear(sq, 3) == std::vector<int>{2, 3, 4});
    CHECK(extract_superlinear(sq) == std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10});
    const auto ex = table([](int n) { return Rational(1 << n); }, 6);
    CHECK(extract_superlinear(ex, 3) == std::vector<int>{1, 3, 4});
    CHECK(extract_superlinear(ex) == std::vector<int>{1, 3, 4, 5, 6});
    CHECK(extract_superlinear(table([](int n) { return Rational(n); }, 20)).empty());
    CHECK(extract_superlinear(std::vector<Rational>{}).empty());
}

TEST_CASE("nu witnesses on the torus", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    SECTION("l = 1")
    {
        const NuWitness nu = nu_witness(build_window(z, 10), 1, 0);
        CHECK(nu.steps.front().m == 5);
        CHECK(nu.nu_norm == Rational(5, 4));
        CHECK(nu.boundary_norm == 1);
        CHECK(nu.boundary_filling == Rational(5, 4));
        CHECK(nu.all_pass());
    }
    SECTION("l = 2")
    {
        const NuWitness nu = nu_witness(build_window(z, 23), 2, 0);
        CHECK(nu.steps[0].m == 5);
        CHECK(nu.steps[1].m == 9);
        CHECK(nu.nu_norm == Rational(7, 4));
        CHECK(nu.boundary_filling == Rational(7, 4));
        CHECK(nu.lower_bound == Rational(3, 2));
        CHECK(nu.all_pass());
    }
    SECTION("positive epsilon")
    {
        const NuWitness nu = nu_witness(build_window(z, 20), 2, Rational(1, 2));
        CHECK(nu.steps[0].m == 4);
        CHECK(nu.steps[1].m == 8);
        CHECK(nu.nu_norm == Rational(3, 2));
        CHECK(nu.lower_bound == Rational(1, 2));
        CHECK(nu.all_pass());
    }
    SECTION("window too small reports the radius it needs")
    {
        try
        {
            nu_witness(build_window(z, 8), 2, 0);
            FAIL("expected WindowTooSmall");
        }
        catch (const WindowTooSmall& e)
        {
            CHECK(e.required_radius() > 8);
        }
    }
    SECTION("preconditions")
    {
        CHECK_THROWS_AS(nu_witness(build_window(cyclic_group(2), 1), 1, 0), FiniteGroup);
        CHECK_THROWS_AS(nu_witness(build_window(z, 10), 0, 0), PreconditionFailed);
    }
}

TEST_CASE("isoperimetric lower bounds", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    const WindowComplex w = build_window(z, 8);
    const auto members = family_members(commutator_family(z), 1, 4);
    std::vector<Rational> budgets;
    for (int m = 1; m <= 4; ++m)
        budgets.push_back(4 * m);
    const auto rows = isoperimetric_lower_bounds(w, budgets, members);
    for (int m = 1; m <= 4; ++m)
    {
        CHECK(rows[static_cast<std::size_t>(m - 1)].lower_bound == m * m);
        CHECK(rows[static_cast<std::size_t>(m - 1)].witness_id == "commutator:" + std::to_string(m));
    }
    const Rational small[] = {Rational(1, 2)};
    CHECK(isoperimetric_lower_bounds(w, small, members).front().witness_id == "zero");
}

TEST_CASE("exhaustive cycles", "[filling]")
{
    const Presentation z = free_abelian_group(2);
    const WindowComplex w = build_window(z, 3);
    const auto cycles = exhaustive_cycles(w, 1, 4);
    // Every square touching the origin's 1-ball edges: the four unit squares at
    // the origin's corners whose edges are based in ball(1).
    REQUIRE_FALSE(cycles.empty());
    for (const LabeledCycle& c : cycles)
    {
        CHECK(boundary(w.presentation(), c.cycle).is_zero());
        CHECK(l1_norm(c.cycle) <= 4);
        CHECK(c.cycle.terms().begin()->second > 0);
    }
    const Rational budgets[] = {Rational(4)};
    CHECK(isoperimetric_lower_bounds(w, budgets, cycles).front().lower_bound == 1);
}

TEST_CASE("finite linear constants", "[filling]")
{
    const auto constant = [](const Presentation& p) {
        return finite_linear_constant(build_window(p, std::max(1, group_diameter(p)))).constant;
    };
    CHECK(constant(cyclic_group(2)) == Rational(1, 2));
    CHECK(constant(cyclic_group(3)) == Rational(1, 3));
    CHECK(constant(load_presentation(ISOFILL_DATA_DIR "/v4.grp")) == Rational(3, 4));
    const Presentation trivial = make_presentation({"x"}, {Word{Letter{0, false}}}, {OracleKind::finite, 1, {{0}}, {0}});
    CHECK(constant(trivial) == 1);
    CHECK_THROWS_AS(finite_linear_constant(build_window(free_abelian_group(2), 1)), NotFinite);
}

TEST_CASE("vertex enumeration dominates dense sampling", "[filling]")
{
    for (const Presentation& p : {cyclic_group(3), load_presentation(ISOFILL_DATA_DIR "/v4.grp")})
    {
        const WindowComplex w = build_window(p, std::max(1, group_diameter(p)));
        const Rational exact = finite_linear_constant(w).constant;
        Rational previous_gap = -1;
        for (int k = 1; k <= (p.generator_count() == 1 ? 3 : 1); ++k)
        {
            const Rational sampled = sampled_constant(w, k);
            CHECK(sampled <= exact);
            const Rational gap = exact - sampled;
            if (previous_gap >= 0)
                CHECK(gap <= previous_gap);
            previous_gap = gap;
        }
    }
}

TEST_CASE("two presentations of a finite group give equivalent norms", "[filling]")
{
    const Presentation a = cyclic_group(2);
    const Presentation b = make_presentation({"x"}, {a.parse("x^2"), a.parse("x^4")},
                                             {OracleKind::finite, 2, {{0, 1}, {1, 0}}, {1}});
    const NormComparison c = compare_filling_norms(build_window(a, 1), build_window(b, 1));
    CHECK(c.vertices_checked > 0);
    CHECK(c.min_ratio > 0);
    CHECK(c.constant >= 1);
    CHECK(c.constant <= 2);
}
