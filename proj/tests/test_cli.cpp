#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "isofill/chain_io.hpp"
#include "isofill/group.hpp"

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = isofill::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string torus = ISOFILL_DATA_DIR "/torus.grp";
const std::string z2 = ISOFILL_DATA_DIR "/z2.grp";
const std::string free2 = ISOFILL_DATA_DIR "/free2.grp";

}  // namespace

TEST_CASE("fill", "[cli]")
{
    const Run r = run({"fill", "--presentation", torus, "--cycle", "x^3 y^3 x^-3 y^-3", "--scale", "1/12", "--radius", "6"});
    CHECK(r.code == 0);
    CHECK(r.out == "3/4\n");

    const Run zero = run({"fill", "--presentation", torus, "--cycle", ""});
    CHECK(zero.code == 0);
    CHECK(zero.out == "0/1\n");

    const Run outside = run({"fill", "--presentation", torus, "--cycle", "x^3 y^3 x^-3 y^-3", "--radius", "2"});
    CHECK(outside.code == 2);
    CHECK(outside.err.find("no in-window filling") != std::string::npos);

    const Run open = run({"fill", "--presentation", torus, "--cycle", "x y"});
    CHECK(open.code == 2);

    const Run verbose = run({"fill", "-p", torus, "--cycle", "x^2 y^2 x^-2 y^-2", "--scale", "-1/2", "--verbose"});
    CHECK(verbose.code == 0);
    CHECK(verbose.out == "2/1\n");
}

TEST_CASE("fill writes and reads witness chains", "[cli]")
{
    const std::string path = "cli_witness.json";
    const Run r = run({"fill", "-p", torus, "--cycle", "x^2 y^2 x^-2 y^-2", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out == "4/1\n");
    const isofill::Presentation p = isofill::load_presentation(torus);
    const isofill::Chain witness = isofill::load_chain(p, path);
    CHECK(witness.size() == 4);

    // Fill the boundary of the witness from a chain file.
    const std::string cycle_path = "cli_cycle.json";
    isofill::save_chain(isofill::boundary(p, witness), cycle_path);
    const Run again = run({"fill", "-p", torus, "--chain", cycle_path});
    CHECK(again.code == 0);
    CHECK(again.out == "4/1\n");
    std::remove(path.c_str());
    std::remove(cycle_path.c_str());
}

TEST_CASE("isoperimetric tables", "[cli]")
{
    const Run t = run({"isoperimetric", "-p", torus, "--budgets", "1,1,1", "--family", "scaled-commutator",
                       "--family-m", "2,4,8"});
    CHECK(t.code == 0);
    CHECK(t.out ==
          "budget,lower_bound_num,lower_bound_den,witness_id,radius\n"
          "1/1,1,2,scaled-commutator:2,16\n"
          "1/1,1,1,scaled-commutator:4,16\n"
          "1/1,2,1,scaled-commutator:8,16\n"
          "NOT LINEARLY BOUNDED (Theorem ⇒ f₁(l₀) = ∞ for some l₀)\n");

    const Run f = run({"isoperimetric", "-p", free2, "--budgets", "1,2"});
    CHECK(f.code == 0);
    CHECK(f.out ==
          "budget,lower_bound_num,lower_bound_den,witness_id,radius\n"
          "1/1,0,1,zero,8\n"
          "2/1,0,1,zero,8\n"
          "LINEARLY BOUNDED (image is zero)\n");

    const Run c = run({"isoperimetric", "-p", z2, "--budgets", "2"});
    CHECK(c.code == 0);
    CHECK(c.out.find("f1(l) = (1/2) l\n") != std::string::npos);
    CHECK(c.out.find("2/1,1,1,extremal-vertex,1\n") != std::string::npos);

    const Run e = run({"isoperimetric", "-p", torus, "--budgets", "4,8", "--family", "exhaustive"});
    CHECK(e.code == 0);
    CHECK(e.out.find("UNDETERMINED") != std::string::npos);

    const std::string path = "cli_table.csv";
    const Run o = run({"isoperimetric", "-p", torus, "--budgets", "4,8", "--out", path});
    CHECK(o.code == 0);
    CHECK(o.out.find("budget,") == std::string::npos);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "budget,lower_bound_num,lower_bound_den,witness_id,radius");
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("nu report", "[cli]")
{
    const Run r = run({"nu", "-p", torus, "--l", "2", "--epsilon", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("value: 7/4\n") != std::string::npos);
    CHECK(r.out.find("|d nu| <= 1: PASS") != std::string::npos);
    CHECK(r.out.find("|nu| >= bound: PASS") != std::string::npos);
    CHECK(r.out.find("filling(d nu) >= bound: PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    // Deterministic output.
    CHECK(run({"nu", "-p", torus, "--l", "2", "--epsilon", "0"}).out == r.out);

    const Run small = run({"nu", "-p", torus, "--l", "2", "--radius", "8"});
    CHECK(small.code == 2);
    CHECK(run({"nu", "-p", z2, "--l", "1"}).code == 1);
}

TEST_CASE("finite-constant and check", "[cli]")
{
    const Run k = run({"finite-constant", "-p", z2});
    CHECK(k.code == 0);
    CHECK(k.out == "1/2\n");
    CHECK(run({"finite-constant", "-p", torus}).code == 1);

    const Run c = run({"check", "-p", torus, "--radius", "3"});
    CHECK(c.code == 0);
    CHECK(c.out == "injective: true\n");
    CHECK(run({"check", "-p", ISOFILL_DATA_DIR "/z3.grp", "--radius", "1"}).out == "injective: false\n");
}

TEST_CASE("usage errors and caps", "[cli]")
{
    CHECK(run({}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"fill", "-p", torus}).code == 1);
    CHECK(run({"fill", "-p", "/nonexistent.grp", "--cycle", "x"}).code == 1);
    CHECK(run({"fill", "-p", torus, "--cycle", "q"}).code == 1);
    CHECK(run({"fill", "-p", torus, "--cycle", "x", "--radius", "0"}).code == 1);
    CHECK(run({"isoperimetric", "-p", torus, "--budgets", "-1"}).code == 1);
    CHECK(run({"isoperimetric", "-p", torus, "--budgets", "1,2", "--family-m", "1,2,3"}).code == 1);
    CHECK(run({"check", "-p", torus, "--radius", "30", "--ball-cap", "10"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}
