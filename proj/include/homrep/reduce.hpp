#pragma once

#include <homrep/circuit.hpp>
#include <homrep/relstruct.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace homrep {

/// Map M: V(target) -> 1- or 2-element subsets of V(source); minor maps
/// are the all-singleton special case.
struct AlmostMinorMap {
    Graph source; // G_X
    Graph target; // G_Y
    std::vector<std::vector<int>> image; // per target vertex, sorted source ids
};

struct AmReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks the four almost-minor conditions; violations carry witnesses.
AmReport validate_almost_minor(const AlmostMinorMap & m);

/// The explicit embedding of K_k into the (2k-2)x(2k-2) grid.
AlmostMinorMap grid_map(int k);

/// Partitioned-graph product: vertices v@a for v in V(H), a in V(G);
/// edges {v@a, u@b} for {v,u} in E(H), {a,b} in E(G); classes P_a.
/// Hom(G^id, lift) corresponds to Hom(G, H) by relabelling.
PartitionedGraph lift_graph(const Graph & g, const Graph & h);

/// Gaifman reduction target: same signature as A^id, universe V(H),
/// colour classes copied, and every non-colour R holding exactly the
/// tuples whose distinct coordinates are pairwise adjacent in H.
RelStructure gaifman_lift(const RelStructure & a_id, const PartitionedGraph & h);

/// H* of the almost-minor reduction: Y-partitioned graph whose
/// colour-respecting homomorphisms are exactly the h* images.
/// Vertices are named v@<y>@<a> and v@<y>@<a>+<b>.
PartitionedGraph build_hstar(const AlmostMinorMap & m, const PartitionedGraph & h);

/// h* of a colour-respecting homomorphism h: X -> V(H), as a mapping
/// over (target vertices -> H* vertices).
PartialHom star_hom(const AlmostMinorMap & m, const PartitionedGraph & h,
    const PartitionedGraph & hstar, const PartialHom & hom);

/// The recovery map: project a d-rep of Hom(G_Y^id, H*) to one chosen
/// y_x per x, then relabel y_x -> x and v@y@a -> a. Never grows the circuit.
FactCircuit recover_circuit(const AlmostMinorMap & m, const PartitionedGraph & h,
    const FactCircuit & c);

/// Individualisation reduction: restrict a d-rep of Hom(A, reduct(Cst))
/// with the filters a -> P_a^Cst, yielding a d-rep of Hom(A^id, Cst).
FactCircuit individualisation_restrict(const FactCircuit & c, const RelStructure & cst);

void write_am(std::ostream & out, const AlmostMinorMap & m);
AlmostMinorMap parse_am(std::istream & in, const Graph & source, const Graph & target);
AlmostMinorMap parse_am_file(const std::string & path, const Graph & source, const Graph & target);
void write_am_file(const std::string & path, const AlmostMinorMap & m);

}
