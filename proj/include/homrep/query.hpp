#pragma once

#include <homrep/circuit.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>

namespace homrep {

/// |S_C| via the bottom-up gate recurrence (input 1, union sum, product
/// product). Requires a deterministic circuit; throws otherwise and on
/// uint64 overflow.
std::uint64_t count_homs(const FactCircuit & c);

struct OpStats {
    std::size_t gate_visits = 0; // single-pass visit count (gates + wires)
};

/// π_X S_C per gate deletion: a gate survives iff its domain meets X.
/// Drops the determinism certificate (projection can merge branches).
FactCircuit project(const FactCircuit & c, const std::set<int> & keep, OpStats * stats = nullptr);
FactCircuit project_names(const FactCircuit & c, const std::vector<std::string> & keep,
    OpStats * stats = nullptr);

/// Keeps exactly the mappings with h(x) ∈ filters[x] for every filtered x.
/// Preserves the determinism certificate.
FactCircuit restrict_values(const FactCircuit & c, const std::map<int, std::set<int>> & filters);

/// h ∈ S_C, for h total on the left universe.
bool member(const FactCircuit & c, const PartialHom & h);

/// Duplicate-free streaming of S_C in a fixed order (union children by id,
/// products leftmost-fastest). Normalizes internally; tracks gate steps
/// between outputs for the delay contract.
class EnumerationCursor {
public:
    explicit EnumerationCursor(const FactCircuit & c);

    std::optional<PartialHom> next();

    std::size_t emitted() const { return emitted_; }
    std::size_t last_delay_steps() const { return last_delay_; }
    std::size_t max_delay_steps() const { return max_delay_; }

private:
    bool first(int g);
    bool advance(int g);

    FactCircuit circ_;
    std::vector<int> pos_;   // per-gate odometer state (union child index)
    std::vector<int> value_; // current assignment, -1 = unset
    bool started_ = false;
    bool done_ = false;
    std::size_t emitted_ = 0;
    std::size_t steps_ = 0;
    std::size_t last_delay_ = 0;
    std::size_t max_delay_ = 0;
};

}
