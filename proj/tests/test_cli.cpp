#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"

#include <homrep/cli.hpp>
#include <homrep/circuit.hpp>
#include <homrep/reduce.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace homrep;
using namespace homrep::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
            ("homrep-cli-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string & name) const { return (path / name).string(); }
};

// run_cli with stdout captured
std::pair<int, std::string> run(const std::vector<std::string> & args)
{
    std::ostringstream captured;
    auto * old = std::cout.rdbuf(captured.rdbuf());
    int code = run_cli(args);
    std::cout.rdbuf(old);
    return {code, captured.str()};
}

std::string slurp(const std::string & path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}

TEST_CASE("compile then count reproduces the reference instance")
{
    TempDir tmp;
    std::string circ = tmp.file("c.dcirc");
    auto [code, out] = run({"compile", fixture_path("triangle_A.struct"),
        fixture_path("triangle_B.struct"), "--decomp", "minfill", "-o", circ});
    REQUIRE(code == 0);
    auto [ccode, cout_] = run({"count", circ});
    CHECK(ccode == 0);
    CHECK(cout_ == "18\n");
    auto [kcode, kout] = run({"check", circ});
    CHECK(kcode == 0);
    CHECK(kout == "deterministic\n");
}

TEST_CASE("project and restrict pipelines")
{
    TempDir tmp;
    std::string circ = tmp.file("c.dcirc");
    REQUIRE(run({"compile", fixture_path("triangle_A.struct"), fixture_path("triangle_B.struct"), "-o",
                 circ})
                .first == 0);

    std::string proj = tmp.file("p.dcirc");
    REQUIRE(run({"project", circ, "--keep", "x", "-o", proj}).first == 0);
    // projection merged branches here: count/enumerate refuse, check reports it
    FactCircuit p = parse_circuit_file(proj);
    CHECK(materialise(p).size() == 3);
    CHECK(run({"count", proj}).first == 1);
    CHECK(run({"check", proj}).second == "nondeterministic\n");

    std::string restr = tmp.file("r.dcirc");
    REQUIRE(run({"restrict", circ, "--allow", "y=c", "-o", restr}).first == 0);
    CHECK(run({"count", restr}).second == "9\n");
}

TEST_CASE("enumerate streams rows")
{
    TempDir tmp;
    std::string circ = tmp.file("c.dcirc");
    REQUIRE(run({"compile", fixture_path("triangle_A.struct"), fixture_path("triangle_B.struct"), "-o",
                 circ})
                .first == 0);
    auto [code, out] = run({"enumerate", circ});
    REQUIRE(code == 0);
    std::istringstream lines(out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        ++n;
        CHECK(std::count(line.begin(), line.end(), '\t') == 2);
    }
    CHECK(n == 18);
    auto [lcode, lout] = run({"enumerate", circ, "--limit", "2"});
    CHECK(lcode == 0);
    CHECK(std::count(lout.begin(), lout.end(), '\n') == 2);
}

TEST_CASE("transversal and normalize keep the count")
{
    TempDir tmp;
    std::string circ = tmp.file("c.dcirc");
    REQUIRE(run({"compile", fixture_path("triangle_A.struct"), fixture_path("triangle_B.struct"), "-o",
                 circ})
                .first == 0);
    for (std::string cmd : {"transversal", "normalize"}) {
        std::string out = tmp.file(cmd + ".dcirc");
        REQUIRE(run({cmd, circ, "-o", out}).first == 0);
        CHECK(run({"count", out}).second == "18\n");
    }
}

TEST_CASE("decompose and validate-td round trip through files")
{
    TempDir tmp;
    std::string td = tmp.file("a.td");
    REQUIRE(run({"decompose", fixture_path("triangle_A.struct"), "--method", "exact", "-o", td})
                .first == 0);
    auto [code, out] = run({"validate-td", fixture_path("triangle_A.struct"), td});
    CHECK(code == 0);
    CHECK(out.rfind("valid width=", 0) == 0);
}

TEST_CASE("check flags a broken circuit file with exit 1")
{
    TempDir tmp;
    CircuitBuilder b({"x", "y"}, {"a", "b"});
    int p = b.product_gate({b.input(0, 0), b.input(0, 1)}); // overlapping domains
    std::string path = tmp.file("bad.dcirc");
    write_circuit_file(path, b.finish(p));
    CHECK(run({"check", path}).first == 1);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({}).first == 2);
    CHECK(run({"frobnicate"}).first == 2);
    CHECK(run({"count"}).first == 2);                       // missing argument
    CHECK(run({"count", "x.dcirc", "--bogus"}).first == 2); // unknown flag
    CHECK(run({"--help"}).first == 0);
}

TEST_CASE("missing input files exit with 1")
{
    CHECK(run({"count", "/nonexistent/c.dcirc"}).first == 1);
    CHECK(run({"compile", "/nonexistent/a.struct", "/nonexistent/b.struct"}).first == 1);
}

TEST_CASE("reduction pipeline over files")
{
    TempDir tmp;
    Graph gx = make_clique(3), gy = make_cycle(4);
    std::string gxs = tmp.file("gx.struct"), gys = tmp.file("gy.struct");
    write_structure_file(gxs, graph_structure(gx));
    write_structure_file(gys, graph_structure(gy));
    std::string am = tmp.file("m.am");
    {
        std::ofstream out(am);
        out << "v1 -> u1\nv2 -> u2\nv3 -> u3\nv4 -> u1\n";
    }
    CHECK(run({"validate-am", "--source", gxs, "--target", gys, am}).second == "valid\n");

    std::string hs = tmp.file("h.pg");
    REQUIRE(run({"reduce", "lift", gxs, gxs, "-o", hs}).first == 0);

    std::string hstar = tmp.file("hstar.pg");
    REQUIRE(run({"reduce", "hstar", am, hs, "--source", gxs, "--target", gys, "-o", hstar})
                .first == 0);

    std::string gyid = tmp.file("gyid.struct");
    REQUIRE(run({"reduce", "individualise", gys, "-o", gyid}).first == 0);

    std::string circ = tmp.file("c.dcirc");
    REQUIRE(run({"compile", gyid, hstar, "-o", circ}).first == 0);

    std::string rec = tmp.file("rec.dcirc");
    REQUIRE(run({"reduce", "recover", am, hs, circ, "--source", gxs, "--target", gys, "-o", rec})
                .first == 0);
    // Hom(K3^id, lifted K3) corresponds to Hom(K3, K3): 6 mappings
    CHECK(run({"count", rec}).second == "6\n");

    // gaifman reduction on the same instance stays consistent
    std::string gxid = tmp.file("gxid.struct");
    REQUIRE(run({"reduce", "individualise", gxs, "-o", gxid}).first == 0);
    std::string gphi = tmp.file("gphi.struct");
    REQUIRE(run({"reduce", "gaifman", gxid, hs, "-o", gphi}).first == 0);
    std::string gcirc = tmp.file("gc.dcirc");
    REQUIRE(run({"compile", gxid, gphi, "-o", gcirc}).first == 0);
    CHECK(run({"count", gcirc}).second == "6\n");
}

TEST_CASE("validate-am reports violations with exit 1")
{
    TempDir tmp;
    std::string gxs = tmp.file("gx.struct"), gys = tmp.file("gy.struct");
    write_structure_file(gxs, graph_structure(make_clique(2)));
    write_structure_file(gys, graph_structure(make_path(2)));
    std::string am = tmp.file("m.am");
    {
        std::ofstream out(am);
        out << "v1 -> u1\nv2 -> u1\n"; // u2 never witnessed
    }
    CHECK(run({"validate-am", "--source", gxs, "--target", gys, am}).first == 1);
}

TEST_CASE("lab commands are seed-reproducible")
{
    TempDir tmp;
    std::string csv1 = tmp.file("a.csv"), csv2 = tmp.file("b.csv");
    REQUIRE(run({"lab", "lemma-g", "--n", "12", "--seeds", "3", "-o", csv1}).first == 0);
    REQUIRE(run({"lab", "lemma-g", "--n", "12", "--seeds", "3", "-o", csv2}).first == 0);
    CHECK(slurp(csv1) == slurp(csv2));
    CHECK(slurp(csv1).rfind("schema=1", 0) == 0);

    std::string s1 = tmp.file("s1.csv"), s2 = tmp.file("s2.csv");
    REQUIRE(run({"lab", "scaling", "--family", "path", "--param", "3", "--bn", "6,8", "--seed",
                 "5", "-o", s1})
                .first == 0);
    REQUIRE(run({"lab", "scaling", "--family", "path", "--param", "3", "--bn", "6,8", "--seed",
                 "5", "-o", s2})
                .first == 0);
    CHECK(slurp(s1) == slurp(s2));
}

TEST_CASE("lab biclique-cover prints the cover")
{
    TempDir tmp;
    std::string gs = tmp.file("g.struct");
    write_structure_file(gs, graph_structure(make_clique(3)));
    std::string circ = tmp.file("cover.dcirc");
    auto [code, out] = run({"lab", "biclique-cover", gs, "-o", circ});
    REQUIRE(code == 0);
    CHECK(out.rfind("cost 6 exact", 0) == 0);
    FactCircuit c = parse_circuit_file(circ);
    CHECK(materialise(c).size() == 6);
}
