#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"

#include <homrep/compile.hpp>
#include <homrep/query.hpp>

using namespace homrep;
using namespace homrep::testing;

namespace {

std::vector<PartialHom> drain(EnumerationCursor & cur)
{
    std::vector<PartialHom> out;
    while (auto h = cur.next())
        out.push_back(*h);
    return out;
}

}

TEST_CASE("counting")
{
    CHECK(count_homs(hand_circuit()) == 18);
    CHECK(count_homs(empty_circuit({"x"}, {"a"})) == 0);
    CHECK(count_homs(unit_circuit({"x"}, {"a"})) == 1);

    SUBCASE("a nondeterministic circuit is refused")
    {
        CircuitBuilder b({"x"}, {"a"});
        int i = b.input(0, 0);
        FactCircuit c = b.finish(b.union_gate({i, i}));
        CHECK_THROWS_AS(count_homs(c), DomainError);
    }
    SUBCASE("semantic certification is accepted without the structural flag")
    {
        FactCircuit c = hand_circuit();
        REQUIRE(! c.det_certified);
        CHECK(count_homs(c) == 18);
    }
    SUBCASE("counts agree with brute force over random instances")
    {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            auto [a, b] = random_instance(seed);
            CAPTURE(seed);
            CHECK(count_homs(compile_hom(a, b, DecompMethod::MinFill)) ==
                brute_force_hom(a, b).size());
        }
    }
}

TEST_CASE("enumeration streams the exact mapping set without duplicates")
{
    FactCircuit c = hand_circuit();
    EnumerationCursor cur(c);
    auto homs = drain(cur);
    CHECK(homs.size() == 18);
    CHECK(cur.emitted() == 18);
    CHECK(hom_set(homs) == hom_set(materialise(c)));
    std::set<PartialHom> uniq(homs.begin(), homs.end());
    CHECK(uniq.size() == homs.size());
    CHECK(cur.next() == std::nullopt); // stays exhausted
}

TEST_CASE("enumeration on reserved circuits")
{
    EnumerationCursor none(empty_circuit({"x"}, {"a"}));
    CHECK(none.next() == std::nullopt);
    EnumerationCursor one(unit_circuit({"x"}, {"a"}));
    auto h = one.next();
    REQUIRE(h.has_value());
    CHECK(h->empty());
    CHECK(one.next() == std::nullopt);
}

TEST_CASE("enumeration delay stays within a constant factor of |A|")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto [a, b] = random_instance(seed);
        if (a.universe.empty())
            continue;
        FactCircuit c = compile_hom(a, b, DecompMethod::MinFill);
        EnumerationCursor cur(c);
        auto homs = drain(cur);
        CAPTURE(seed);
        REQUIRE(hom_set(homs) == hom_set(brute_force_hom(a, b)));
        if (! homs.empty())
            CHECK(cur.max_delay_steps() <= 32 * a.universe.size());
    }
}

TEST_CASE("projection")
{
    FactCircuit c = hand_circuit();
    SUBCASE("the reference circuit onto {x} has three mappings")
    {
        OpStats stats;
        FactCircuit p = project_names(c, {"x"}, &stats);
        auto homs = materialise(p);
        CHECK(homs.size() == 3);
        for (const auto & h : homs) {
            CHECK(h.size() == 1);
            CHECK(h.count(0) == 1);
        }
        CHECK(p.norm() <= c.norm());
        CHECK(! p.det_certified);
        // one bottom-up pass: visits bounded by gates + wires
        CHECK(stats.gate_visits <= c.norm());
    }
    SUBCASE("projecting onto the full domain keeps the mapping set")
    {
        FactCircuit p = project(c, {0, 1, 2});
        CHECK(hom_set(materialise(p)) == hom_set(materialise(c)));
        CHECK(p.norm() <= c.norm());
    }
    SUBCASE("projecting onto nothing yields the unit circuit")
    {
        CHECK(project(c, {}).unit_flag);
    }
    SUBCASE("unknown elements are a domain error")
    {
        CHECK_THROWS_AS(project(c, {7}), DomainError);
        CHECK_THROWS_AS(project_names(c, {"zz"}), DomainError);
    }
    SUBCASE("projection of the empty circuit stays empty")
    {
        CHECK(project(empty_circuit({"x", "y"}, {"a"}), {0}).empty_flag);
    }
    SUBCASE("agrees with projecting the materialised set")
    {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto [a, b] = random_instance(seed);
            if (a.universe.empty())
                continue;
            FactCircuit full = compile_hom(a, b, DecompMethod::MinFill);
            std::set<int> keep{0};
            std::set<PartialHom> expect;
            for (auto h : brute_force_hom(a, b))
                expect.insert(PartialHom{{0, h.at(0)}});
            CAPTURE(seed);
            CHECK(hom_set(materialise(project(full, keep))) == expect);
        }
    }
}

TEST_CASE("restriction")
{
    FactCircuit c = hand_circuit();
    int y = 1;
    int cc = 6; // element "c" of the target
    SUBCASE("y in {c} keeps nine mappings")
    {
        FactCircuit r = restrict_values(c, {{y, {cc}}});
        auto homs = materialise(r);
        CHECK(homs.size() == 9);
        for (const auto & h : homs)
            CHECK(h.at(y) == cc);
        CHECK(r.norm() <= c.norm());
    }
    SUBCASE("an all-permissive filter changes nothing semantically")
    {
        std::set<int> all;
        for (int v = 0; v < 10; ++v)
            all.insert(v);
        FactCircuit r = restrict_values(c, {{y, all}});
        CHECK(hom_set(materialise(r)) == hom_set(materialise(c)));
    }
    SUBCASE("an unsatisfiable filter yields the empty circuit")
    {
        CHECK(restrict_values(c, {{0, {}}}).empty_flag);
    }
    SUBCASE("the certificate is preserved")
    {
        FactCircuit compiled = compile_hom(triangle_a(), triangle_b(), DecompMethod::Exact);
        REQUIRE(compiled.det_certified);
        FactCircuit r = restrict_values(compiled, {{y, {cc}}});
        CHECK(r.det_certified);
        CHECK(count_homs(r) == 9);
    }
    SUBCASE("unknown element ids are a domain error")
    {
        CHECK_THROWS_AS(restrict_values(c, {{9, {0}}}), DomainError);
    }
    SUBCASE("agrees with filtering the materialised set")
    {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto [a, b] = random_instance(seed);
            if (a.universe.empty() || b.universe.empty())
                continue;
            FactCircuit full = compile_hom(a, b, DecompMethod::MinFill);
            std::map<int, std::set<int>> filters{{0, {0}}};
            std::set<PartialHom> expect;
            for (auto h : brute_force_hom(a, b))
                if (h.at(0) == 0)
                    expect.insert(h);
            CAPTURE(seed);
            CHECK(hom_set(materialise(restrict_values(full, filters))) == expect);
        }
    }
}

TEST_CASE("membership")
{
    FactCircuit c = hand_circuit();
    PartialHom yes{{0, 0}, {1, 3}, {2, 6}}; // x->a1, y->b1, z->c
    PartialHom no{{0, 0}, {1, 3}, {2, 4}};  // b1->b2 is not an edge
    CHECK(member(c, yes));
    CHECK(! member(c, no));
    CHECK_THROWS_AS(member(c, PartialHom{{0, 0}}), DomainError); // not total
    CHECK(! member(empty_circuit({}, {"a"}), PartialHom{}));
    CHECK(member(unit_circuit({}, {"a"}), PartialHom{}));
}
