#pragma once

#include <homrep/circuit.hpp>
#include <homrep/decomp.hpp>

namespace homrep {

/// Compiles Hom(A,B) into a deterministic d-representation along the plan's
/// rooted decomposition. Returns the designated EMPTY circuit when Hom = ∅
/// and the UNIT circuit when A has an empty universe.
FactCircuit compile_hom(const RelStructure & a, const RelStructure & b, const CompilePlan & plan);

/// Convenience overload: decomposes A's Gaifman graph first.
FactCircuit compile_hom(const RelStructure & a, const RelStructure & b,
    DecompMethod method = DecompMethod::MinFill);

struct SizeBoundReport {
    std::size_t circuit_norm = 0; // ‖C‖
    std::size_t a_norm = 0;       // ‖A‖
    std::size_t b_norm = 0;       // ‖B‖
    int width = -1;
    double ratio = 0.0; // ‖C‖ / (‖A‖² · ‖B‖^{width+1})
};

SizeBoundReport size_bound_check(const RelStructure & a, const RelStructure & b,
    const CompilePlan & plan, const FactCircuit & c);

}
