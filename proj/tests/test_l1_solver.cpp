#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isofill/errors.hpp"
#include "isofill/l1_solver.hpp"

using namespace isofill;

namespace {

L1Program program(const DenseMatrix& a, std::vector<Rational> b)
{
    return {SparseMatrix::from_dense(a), std::move(b)};
}

L1Program random_program(std::mt19937& rng, bool feasible)
{
    std::uniform_int_distribution<int> dims(1, 5), cols(1, 12), entry(-2, 2);
    const std::size_t m = static_cast<std::size_t>(dims(rng));
    const std::size_t n = static_cast<std::size_t>(cols(rng));
    DenseMatrix a(m, std::vector<Rational>(n));
    for (auto& row : a)
        for (auto& x : row)
            x = entry(rng);
    std::vector<Rational> b(m);
    if (feasible)
    {
        std::vector<int> c(n);
        for (auto& x : c)
            x = entry(rng);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                b[i] += a[i][j] * c[j];
    }
    else
    {
        for (auto& x : b)
            x = entry(rng);
    }
    return program(a, b);
}

void check_certificate(const L1Program& p, const LpSolution& s)
{
    REQUIRE(s.optimal());
    REQUIRE(s.witness.size() == p.A.cols());
    Rational norm = 0;
    for (const Rational& c : s.witness)
        norm += abs_value(c);
    CHECK(norm == s.value);
    CHECK(p.A.multiply(s.witness) == p.b);
}

}  // namespace

TEST_CASE("small worked programs", "[lp]")
{
    SECTION("single equation 2c = 3")
    {
        const L1Program p = program({{2}}, {3});
        const LpSolution s = solve_l1(p);
        CHECK(s.value == Rational(3, 2));
        check_certificate(p, s);
        CHECK(brute_force_min(p).value == Rational(3, 2));
    }
    SECTION("c1 + 2 c2 = 2 prefers c2")
    {
        const L1Program p = program({{1, 2}}, {2});
        const LpSolution s = solve_l1(p);
        CHECK(s.value == 1);
        CHECK(s.witness == std::vector<Rational>{0, 1});
        CHECK(brute_force_min(p).value == 1);
    }
    SECTION("inconsistent system")
    {
        const L1Program p = program({{1, 1}, {1, 1}}, {1, 2});
        CHECK(solve_l1(p).status == LpStatus::infeasible);
        CHECK(brute_force_min(p).status == LpStatus::infeasible);
    }
    SECTION("zero right-hand side")
    {
        const L1Program p = program({{1, -1, 2}}, {0});
        CHECK(solve_l1(p).value == 0);
    }
    SECTION("no columns")
    {
        SparseMatrix a(2, 0);
        const std::vector<Rational> zero{0, 0}, one{1, 0};
        CHECK(solve_l1(a, zero).value == 0);
        CHECK_FALSE(solve_l1(a, one).optimal());
    }
}

TEST_CASE("random programs agree with brute force", "[lp]")
{
    std::mt19937 rng(12345);
    for (int i = 0; i < 300; ++i)
    {
        const L1Program p = random_program(rng, i % 3 != 0);
        const LpSolution s = solve_l1(p);
        const LpSolution r = brute_force_min(p);
        REQUIRE(s.status == r.status);
        if (s.optimal())
        {
            REQUIRE(s.value == r.value);
            check_certificate(p, s);
        }
    }
}

TEST_CASE("homogeneity and subadditivity", "[lp]")
{
    std::mt19937 rng(777);
    int checked = 0;
    while (checked < 50)
    {
        const L1Program p = random_program(rng, true);
        L1Program q = random_program(rng, true);
        if (q.A.rows() != p.A.rows())
            continue;
        q.A = p.A;
        // make q feasible for the same matrix
        std::vector<Rational> c(p.A.cols(), 0);
        c[static_cast<std::size_t>(checked) % c.size()] = Rational(checked % 5 - 2, 3);
        q.b = p.A.multiply(c);

        const Rational scale(-7, 4);
        std::vector<Rational> scaled = p.b;
        for (auto& x : scaled)
            x *= scale;
        CHECK(solve_l1(p.A, scaled).value == abs_value(scale) * solve_l1(p).value);

        std::vector<Rational> sum = p.b;
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += q.b[i];
        CHECK(solve_l1(p.A, sum).value <= solve_l1(p).value + solve_l1(q).value);
        ++checked;
    }
}

TEST_CASE("injective matrices recover the preimage", "[lp]")
{
    const DenseMatrix a{{1, 0, 2}, {0, 1, -1}, {1, 1, 0}, {0, 0, 3}};
    const SparseMatrix s = SparseMatrix::from_dense(a);
    CHECK(check_injective(s));
    const std::vector<Rational> c{Rational(1, 2), -2, Rational(5, 3)};
    const LpSolution sol = solve_l1(s, s.multiply(c));
    CHECK(sol.witness == c);
    CHECK(sol.value == Rational(1, 2) + 2 + Rational(5, 3));
}

TEST_CASE("injectivity test", "[lp]")
{
    CHECK(check_injective(SparseMatrix::from_dense({{1}, {1}})));
    CHECK_FALSE(check_injective(SparseMatrix::from_dense({{1, 2}, {2, 4}})));
    CHECK_FALSE(check_injective(SparseMatrix::from_dense({{0, 1}, {0, 1}})));
    CHECK_FALSE(check_injective(SparseMatrix::from_dense({{1, 1, 1}, {1, -1, 0}})));
    CHECK(check_injective(SparseMatrix(3, 0)));
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (int t = 0; t < 100; ++t)
    {
        DenseMatrix a(4, std::vector<Rational>(3));
        for (auto& row : a)
            for (auto& x : row)
                x = entry(rng);
        CHECK(check_injective(SparseMatrix::from_dense(a)) == (rank(a) == 3));
    }
}

TEST_CASE("limits", "[lp]")
{
    const DenseMatrix wide(1, std::vector<Rational>(13, 1));
    CHECK_THROWS_AS(brute_force_min(program(wide, {1})), TooLarge);
    const L1Program p = program({{1, 1, 1}, {1, -1, 2}, {0, 1, 1}}, {1, 2, 3});
    SolverOptions tight;
    tight.pivot_limit = 0;
    const LpSolution s = solve_l1(p);
    CHECK(s.optimal());
    if (s.pivots > 0)
        CHECK_THROWS_AS(solve_l1(p, tight), BudgetExceeded);
    const DenseMatrix rows{{1, 2}};
    CHECK_THROWS_AS(solve_l1(SparseMatrix::from_dense(rows), std::vector<Rational>{1, 2}), PreconditionFailed);
}
