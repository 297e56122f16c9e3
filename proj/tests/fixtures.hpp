#pragma once

// Shared test fixtures: the worked triangle instance and its hand-built
// 17-gate circuit (shared x-union feeding both branch products).

#include <homrep/circuit.hpp>
#include <homrep/relstruct.hpp>

#include <string>

namespace homrep::testing {

inline std::string fixture_path(const std::string & name)
{
    return std::string{FIXTURE_DIR} + "/" + name;
}

inline RelStructure triangle_a()
{
    return parse_structure_file(fixture_path("triangle_A.struct"));
}

inline RelStructure triangle_b()
{
    return parse_structure_file(fixture_path("triangle_B.struct"));
}

inline FactCircuit hand_circuit()
{
    RelStructure a = triangle_a(), b = triangle_b();
    CircuitBuilder bld(a.universe, b.universe);
    int x = 0, y = 1, z = 2;
    auto bi = [&](const std::string & name) { return b.element(name); };
    int ux = bld.union_gate({bld.input(x, bi("a1")), bld.input(x, bi("a2")),
        bld.input(x, bi("a3"))});
    int ub = bld.union_gate({bld.input(y, bi("b1")), bld.input(y, bi("b2")),
        bld.input(y, bi("b3"))});
    int ud = bld.union_gate({bld.input(z, bi("d1")), bld.input(z, bi("d2")),
        bld.input(z, bi("d3"))});
    int p1 = bld.product_gate({ux, ub, bld.input(z, bi("c"))});
    int p2 = bld.product_gate({ux, bld.input(y, bi("c")), ud});
    return bld.finish(bld.union_gate({p1, p2}));
}

}
