#include <catch2/catch_amalgamated.hpp>

#include "isofill/chain_io.hpp"
#include "isofill/complex.hpp"
#include "isofill/errors.hpp"

using namespace isofill;

namespace {

Chain square_block(const Presentation& z, int m)
{
    Chain c(2);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            c.add(disc(0, mul(z.element(Word(static_cast<std::size_t>(i), Letter{0, false})),
                              z.element(Word(static_cast<std::size_t>(j), Letter{1, false})))),
                  1);
    return c;
}

}  // namespace

TEST_CASE("torus relator boundary at the identity", "[complex]")
{
    const Presentation z = free_abelian_group(2);
    Chain expected(1);
    expected.add(edge(0, z.identity()), 1);
    expected.add(edge(1, z.element("x")), 1);
    expected.add(edge(0, z.element("y")), -1);
    expected.add(edge(1, z.identity()), -1);
    const Chain d = cell_boundary(z, disc(0, z.identity()));
    CHECK(d == expected);
    CHECK(l1_norm(d) == 4);
}

TEST_CASE("Z/2 relator boundary", "[complex]")
{
    const Presentation c = cyclic_group(2);
    Chain expected(1);
    expected.add(edge(0, c.identity()), 1);
    expected.add(edge(0, c.element("x")), 1);
    CHECK(cell_boundary(c, disc(0, c.identity())) == expected);
}

TEST_CASE("edge boundaries", "[complex]")
{
    const Presentation f = free_group(2);
    Chain expected(0);
    expected.add(vertex(f.element("x")), 1);
    expected.add(vertex(f.identity()), -1);
    CHECK(cell_boundary(f, edge(0, f.identity())) == expected);
    CHECK(cell_boundary(f, vertex(f.identity())).is_zero());
}

TEST_CASE("d1 d2 = 0", "[complex]")
{
    for (const Presentation& p : {free_abelian_group(2), cyclic_group(3), surface_group(2)})
    {
        for (const GroupElement& g : ball(p, 1))
            for (std::size_t r = 0; r < p.relators.size(); ++r)
                CHECK(boundary(p, cell_boundary(p, disc(static_cast<int>(r), g))).is_zero());
        const WindowComplex w = build_window(p, 1);
        const DenseMatrix d1 = w.boundary1().to_dense();
        const DenseMatrix d2 = w.boundary2().to_dense();
        for (std::size_t i = 0; i < d1.size(); ++i)
            for (std::size_t j = 0; j < w.cells(2).size(); ++j)
            {
                Rational s = 0;
                for (std::size_t k = 0; k < d2.size(); ++k)
                    s += d1[i][k] * d2[k][j];
                REQUIRE(s == 0);
            }
    }
}

TEST_CASE("m x m block of squares bounds the commutator cycle", "[complex]")
{
    const Presentation z = free_abelian_group(2);
    for (int m = 1; m <= 5; ++m)
    {
        const Chain d = boundary(z, square_block(z, m));
        const Word w = z.parse("x^" + std::to_string(m) + " y^" + std::to_string(m) + " x^-" + std::to_string(m) +
                               " y^-" + std::to_string(m));
        CHECK(d == trace_word(z, w, z.identity()));
        CHECK(l1_norm(d) == 4 * m);
        CHECK(boundary(z, d).is_zero());
    }
}

TEST_CASE("chain arithmetic and l1 norm", "[complex]")
{
    const Presentation z = free_abelian_group(2);
    const Chain a = trace_word(z, z.parse("x y x^-1 y^-1"), z.identity());
    const Chain b = trace_word(z, z.parse("x^-1 y^-1 x y"), z.identity());
    CHECK((a - a).is_zero());
    CHECK(l1_norm(Rational(-3, 7) * a) == Rational(3, 7) * l1_norm(a));
    // a and b share no edges, so the norm is additive.
    CHECK(l1_norm(a + b) == l1_norm(a) + l1_norm(b));
    CHECK(l1_norm(a + a) == 2 * l1_norm(a));
    CHECK_THROWS_AS(a + square_block(z, 1), PreconditionFailed);
}

TEST_CASE("translation is an action on chains", "[complex]")
{
    const Presentation s = surface_group(2);
    const Chain a = trace_word(s, s.parse("a1 b1 a2"), s.identity());
    const GroupElement g = s.element("b2 a1");
    const GroupElement h = s.element("a2^-1");
    CHECK(translate(g, translate(h, a)) == translate(mul(g, h), a));
    CHECK(l1_norm(translate(g, a)) == l1_norm(a));
    CHECK(translate(s.identity(), a) == a);
    CHECK(boundary(s, translate(g, a)) == translate(g, boundary(s, a)));
}

TEST_CASE("window complex layout", "[complex]")
{
    const Presentation z = free_abelian_group(2);
    const WindowComplex w = build_window(z, 1);
    CHECK(w.cells(2).size() == 5);
    CHECK(w.boundary2().rows() == w.cells(1).size());
    CHECK(w.boundary2().cols() == w.cells(2).size());
    for (const Cell& c : w.cells(2))
    {
        const Chain d = cell_boundary(z, c);
        for (const auto& [e, q] : d.terms())
            CHECK(w.contains(e));
    }
    CHECK_THROWS_AS(w.to_vector(trace_word(z, z.parse("x^5"), z.identity())), OutOfWindow);
    CHECK_THROWS_AS(build_window(z, 0), PreconditionFailed);

    const WindowComplex f = build_window(free_group(2), 2);
    CHECK(f.cells(2).empty());
    CHECK(f.boundary2().cols() == 0);
}

TEST_CASE("window vectors round trip", "[complex]")
{
    const Presentation z = free_abelian_group(2);
    const WindowComplex w = build_window(z, 3);
    const Chain c = square_block(z, 2);
    CHECK(w.to_chain(2, w.to_vector(c)) == c);
    CHECK(boundary(w, c) == boundary(z, c));
}

TEST_CASE("chain JSON round trip", "[complex]")
{
    const Presentation s = surface_group(2);
    Chain a = Rational(2, 3) * trace_word(s, s.parse("a1 b1^-1 a2 b2"), s.element("b1"));
    const std::string text = serialize_chain(a);
    CHECK(parse_chain(s, text) == a);
    CHECK(serialize_chain(parse_chain(s, text)) == text);

    const Presentation z = free_abelian_group(2);
    const Chain sq = cell_boundary(z, disc(0, z.identity()));
    CHECK(serialize_chain(sq) ==
          "{\"dimension\":1,\"records\":[[1,0,\"\",\"1/1\"],[1,0,\"y\",\"-1/1\"],[1,1,\"\",\"-1/1\"],"
          "[1,1,\"x\",\"1/1\"]],\"type\":\"chain\"}\n");
    CHECK_THROWS_AS(parse_chain(z, "{"), ParseError);
    CHECK_THROWS_AS(parse_chain(z, R"([[1, 5, "", "1"]])"), Error);
    CHECK_THROWS_AS(parse_chain(z, R"([[1, 0, "", "1/0"]])"), ParseError);
}
