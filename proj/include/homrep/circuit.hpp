#pragma once

#include <homrep/relstruct.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homrep {

enum class GateKind { Input, Union, Product };

struct Gate {
    GateKind kind = GateKind::Input;
    int a = -1;                // left element (Input)
    int b = -1;                // right element (Input)
    std::vector<int> children; // ordered (Union/Product)
};

/// Partial map from left-universe to right-universe element ids.
using PartialHom = std::map<int, int>;

/// Factorisation circuit (d-representation). The grammar has no gate for
/// the empty set or for {empty map}; those are the designated empty_flag
/// and unit_flag circuits with no gates.
struct FactCircuit {
    std::vector<Gate> gates;
    int sink = -1;
    std::vector<std::string> left_universe;
    std::vector<std::string> right_universe;
    bool empty_flag = false;
    bool unit_flag = false;
    // structural determinism certificate attached by compile
    bool det_certified = false;

    bool is_empty() const { return empty_flag; }
    bool is_unit() const { return unit_flag; }
    std::size_t gate_count() const { return gates.size(); }
    std::size_t wire_count() const;
    /// The size measure ‖C‖ = gates + wires (0 for EMPTY/UNIT).
    std::size_t norm() const { return gate_count() + wire_count(); }

    int left_index(const std::string & name) const;
    int right_index(const std::string & name) const;

    /// Gate ids sorted children-before-parents; throws on cyclic wiring.
    std::vector<int> topo_order() const;
    /// dom(g) per gate, as sorted element-id lists.
    std::vector<std::vector<int>> domains() const;
};

struct WellDefinedReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Bottom-up domain check: Union children must share equal domains,
/// Product children pairwise disjoint ones. Throws on cycles.
WellDefinedReport check_well_defined(const FactCircuit & c);

struct DeterminismResult {
    enum class Verdict { Certified, Refuted, Unknown } verdict;
    int witness_gate = -1;  // Union gate with a duplicated element
    PartialHom witness_hom; // the duplicate
};

/// Semantic determinism check by bounded materialisation; circuits with a
/// structural certificate are accepted without materialising.
DeterminismResult check_deterministic(const FactCircuit & c, std::size_t budget = 1'000'000);

/// Treelike expansion: duplicates every shared gate top-down so each
/// non-sink gate has exactly one parent. Represented set unchanged.
FactCircuit transversal(const FactCircuit & c);

/// Normal form: collapses Union-into-Union wires, contracts single-child
/// gates, drops unreachable gates. Represented set unchanged.
FactCircuit normalize(const FactCircuit & c);

/// Drops gates unreachable from the sink; otherwise the identity.
FactCircuit trim(const FactCircuit & c);

/// Depth-2 circuit: one Union over one Product per mapping, with unshared
/// Input gates, so ‖C‖ = 1 + |homs|·(2|A|+2). Each mapping must be total.
FactCircuit flat_representation(const std::vector<PartialHom> & homs,
    const std::vector<std::string> & left_universe,
    const std::vector<std::string> & right_universe);

/// Direct bottom-up evaluation of the semantics; the oracle everything
/// else is tested against. Throws once intermediate sets exceed budget.
std::vector<PartialHom> materialise(const FactCircuit & c, std::size_t budget = 1'000'000);

/// Renames universe elements (ids preserved). Vectors give the new names.
FactCircuit relabel(const FactCircuit & c, const std::vector<std::string> & new_left,
    const std::vector<std::string> & new_right);

/// Incremental construction with one Input gate per (a,b) label.
struct CircuitBuilder {
    FactCircuit circuit;
    std::map<std::pair<int, int>, int> input_cache;

    CircuitBuilder(std::vector<std::string> left, std::vector<std::string> right);
    int input(int a, int b);
    int union_gate(std::vector<int> children);
    int product_gate(std::vector<int> children);
    FactCircuit finish(int sink, bool certified = false);
};

FactCircuit empty_circuit(std::vector<std::string> left, std::vector<std::string> right);
FactCircuit unit_circuit(std::vector<std::string> left, std::vector<std::string> right);

void write_circuit(std::ostream & out, const FactCircuit & c);
FactCircuit parse_circuit(std::istream & in);
FactCircuit parse_circuit_file(const std::string & path);
void write_circuit_file(const std::string & path, const FactCircuit & c);

}
