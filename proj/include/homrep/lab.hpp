#pragma once

#include <homrep/circuit.hpp>
#include <homrep/relstruct.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace homrep {

/// Seeded G(n, p) spec; identical specs generate identical graphs.
/// Randomness comes from std::mt19937_64 with a fixed pair order, so
/// seeds reproduce across platforms.
struct RandomGraphSpec {
    int n = 0;
    double edge_probability = 0.5;
    std::uint64_t seed = 0;
};

Graph gen_random_graph(const RandomGraphSpec & spec);

/// Exact k-clique count by ordered backtracking over bitset adjacency.
std::uint64_t count_cliques(const Graph & g, int k);

struct BicliqueResult {
    enum class Verdict { Found, None, Inconclusive } verdict;
    std::vector<int> side_a, side_b; // witness when Found
};

/// Searches for a K_{a,a} subgraph (sides disjoint, all cross edges
/// present). Exact within the node budget; otherwise sampling with an
/// honest Inconclusive.
BicliqueResult find_biclique(const Graph & g, int a, std::size_t budget = 2'000'000);

struct LemmaGRow {
    int n = 0;
    std::uint64_t seed = 0;
    std::size_t m = 0;
    bool edge_ok = false; // m >= n^2/8
    std::uint64_t triangles = 0;
    double triangle_ref = 0.0; // C(n,3)/8
    bool clique_bound_ok = false; // count_k <= m^{k/2} for k in 2..5
    int biclique_a = 0;
    std::string biclique_verdict;
};

std::vector<LemmaGRow> experiment_lemma_g(const std::vector<int> & ns, int seeds,
    std::size_t biclique_budget = 2'000'000);

struct ScalingRow {
    std::string family;
    std::string a_desc;
    std::size_t a_norm = 0;
    std::size_t a_elems = 0;
    std::size_t b_norm = 0;
    int width = -1;
    std::size_t circuit_norm = 0;
    std::uint64_t hom_count = 0;
    std::size_t flat_size = 0; // 1 + |Hom|(2|A|+2)
    bool skipped = false;
};

/// Compiles Hom(A,B) for a fixed generator-family A over growing random
/// B and records the measured sizes.
std::vector<ScalingRow> experiment_size_scaling(const std::string & family, int param,
    const std::vector<RandomGraphSpec> & b_specs);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<std::pair<double, double>> & points);

struct BicliqueCover {
    // sides of each covering complete bipartite subgraph
    std::vector<std::pair<std::vector<int>, std::vector<int>>> bicliques;
    std::size_t cost = 0; // sum of side sizes
    bool exact = false;   // cost proven minimal
    FactCircuit circuit;  // f-rep of Hom(K_2, G) induced by the cover
};

/// Covers E(G) by induced complete bipartite subgraphs minimising
/// Σ(|A_i|+|B_i|); exact branch-and-bound for small graphs, greedy
/// star cover otherwise.
BicliqueCover biclique_cover_cost(const Graph & g);

void write_lemma_g_csv(std::ostream & out, const std::vector<LemmaGRow> & rows);
void write_scaling_csv(std::ostream & out, const std::vector<ScalingRow> & rows);

}
