#pragma once

#include <homrep/relstruct.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace homrep {

/// Rooted tree decomposition; node bags hold element ids of the
/// underlying structure/graph.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags; // sorted
    std::vector<int> parent;            // -1 at the root
    int root = -1;

    int node_count() const { return static_cast<int>(bags.size()); }
    int width() const;
    std::vector<std::vector<int>> children() const;
    std::vector<int> depths() const;
    /// Reorients parent links so `new_root` becomes the root.
    void reroot(int new_root);
};

enum class DecompMethod { MinFill, MinDegree, Exact };

DecompMethod parse_method(const std::string & name);

/// Builds a rooted decomposition of g (components chained into one tree).
/// Exact search is limited to |V| <= 20.
TreeDecomposition decompose(const Graph & g, DecompMethod method = DecompMethod::MinFill);

struct TdReport {
    std::vector<std::string> violations;
    int computed_width = -1;
    bool ok() const { return violations.empty(); }
};

TdReport validate_decomposition(const TreeDecomposition & td, const Graph & g);

/// Per-variable anchor nodes and per-tuple constraint sites consumed by
/// the compiler. Nodes anchoring nothing act as pure semi-join filters
/// during compilation.
struct CompilePlan {
    TreeDecomposition td;
    std::vector<int> anchor_of;                 // element -> node
    std::map<std::pair<int, Tuple>, int> site;  // (symbol, tuple) -> node

    /// Variables anchored at each node: bag minus parent separator.
    std::vector<std::vector<int>> anchored() const;
    /// Separator with the parent bag (empty at the root).
    std::vector<int> separator(int node) const;
};

CompilePlan make_plan(const RelStructure & a, const TreeDecomposition & td);

void write_td(std::ostream & out, const TreeDecomposition & td, const std::vector<std::string> & names);
TreeDecomposition parse_td(std::istream & in, const RelStructure & a);
TreeDecomposition parse_td_file(const std::string & path, const RelStructure & a);
void write_td_file(const std::string & path, const TreeDecomposition & td, const std::vector<std::string> & names);

}
