#include <homrep/lab.hpp>

#include <homrep/compile.hpp>
#include <homrep/decomp.hpp>
#include <homrep/query.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>

namespace homrep {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(int n)
{
    return Bits((n + 63) / 64, 0);
}

void bit_set(Bits & b, int i)
{
    b[i / 64] |= std::uint64_t{1} << (i % 64);
}

bool bit_test(const Bits & b, int i)
{
    return (b[i / 64] >> (i % 64)) & 1;
}

int popcount(const Bits & b)
{
    int c = 0;
    for (auto w : b)
        c += __builtin_popcountll(w);
    return c;
}

Bits bits_and(const Bits & x, const Bits & y)
{
    Bits out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] & y[i];
    return out;
}

std::vector<Bits> adjacency_bits(const Graph & g)
{
    std::vector<Bits> adj(g.n(), make_bits(g.n()));
    for (auto [u, v] : g.edges) {
        bit_set(adj[u], v);
        bit_set(adj[v], u);
    }
    return adj;
}

void for_each_bit(const Bits & b, const std::function<void(int)> & f)
{
    for (std::size_t w = 0; w < b.size(); ++w) {
        std::uint64_t x = b[w];
        while (x) {
            int i = __builtin_ctzll(x);
            f(static_cast<int>(w * 64) + i);
            x &= x - 1;
        }
    }
}

}

Graph gen_random_graph(const RandomGraphSpec & spec)
{
    if (spec.n < 1)
        throw DomainError("random graph needs n >= 1");
    Graph g;
    for (int i = 1; i <= spec.n; ++i)
        g.add_vertex("v" + std::to_string(i));
    std::mt19937_64 rng(spec.seed);
    // portable uniform [0,1): top 53 bits of the generator output
    auto unif = [&rng] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j)
            if (unif() < spec.edge_probability)
                g.add_edge(i, j);
    return g;
}

std::uint64_t count_cliques(const Graph & g, int k)
{
    if (k < 1)
        throw DomainError("clique size must be positive");
    if (k == 1)
        return static_cast<std::uint64_t>(g.n());
    auto adj = adjacency_bits(g);
    // adjacency restricted to higher-numbered vertices
    std::vector<Bits> upper(g.n());
    for (int v = 0; v < g.n(); ++v) {
        upper[v] = adj[v];
        for (int u = 0; u <= v; ++u)
            if (bit_test(upper[v], u))
                upper[v][u / 64] &= ~(std::uint64_t{1} << (u % 64));
    }
    std::uint64_t count = 0;
    std::function<void(const Bits &, int)> rec = [&](const Bits & cand, int need) {
        if (need == 1) {
            count += static_cast<std::uint64_t>(popcount(cand));
            return;
        }
        if (popcount(cand) < need)
            return;
        for_each_bit(cand, [&](int v) { rec(bits_and(cand, upper[v]), need - 1); });
    };
    for (int v = 0; v < g.n(); ++v)
        rec(upper[v], k - 1);
    return count;
}

BicliqueResult find_biclique(const Graph & g, int a, std::size_t budget)
{
    if (a < 1)
        throw DomainError("biclique side size must be positive");
    auto adj = adjacency_bits(g);
    std::vector<int> chosen;
    std::size_t nodes = 0;
    bool exhausted = true;
    BicliqueResult res{BicliqueResult::Verdict::None, {}, {}};

    std::function<bool(int, const Bits &)> rec = [&](int start, const Bits & common) {
        if (++nodes > budget) {
            exhausted = false;
            return false;
        }
        if (static_cast<int>(chosen.size()) == a) {
            if (popcount(common) >= a) {
                res.verdict = BicliqueResult::Verdict::Found;
                res.side_a = chosen;
                for_each_bit(common, [&](int v) {
                    if (static_cast<int>(res.side_b.size()) < a)
                        res.side_b.push_back(v);
                });
                return true;
            }
            return false;
        }
        for (int v = start; v < g.n(); ++v) {
            Bits next = chosen.empty() ? adj[v] : bits_and(common, adj[v]);
            if (popcount(next) < a)
                continue;
            chosen.push_back(v);
            if (rec(v + 1, next))
                return true;
            chosen.pop_back();
            if (! exhausted)
                return false;
        }
        return false;
    };
    rec(0, make_bits(g.n()));
    if (res.verdict == BicliqueResult::Verdict::Found)
        return res;
    if (exhausted)
        return res; // proven absent
    res.verdict = BicliqueResult::Verdict::Inconclusive;
    return res;
}

std::vector<LemmaGRow> experiment_lemma_g(const std::vector<int> & ns, int seeds,
    std::size_t biclique_budget)
{
    std::vector<LemmaGRow> rows;
    for (int n : ns)
        for (int seed = 0; seed < seeds; ++seed) {
            Graph g = gen_random_graph({n, 0.5, static_cast<std::uint64_t>(seed)});
            LemmaGRow row;
            row.n = n;
            row.seed = static_cast<std::uint64_t>(seed);
            row.m = g.m();
            row.edge_ok = 8 * row.m >= static_cast<std::size_t>(n) * n;
            row.triangles = count_cliques(g, 3);
            row.triangle_ref =
                static_cast<double>(n) * (n - 1) * (n - 2) / 6.0 / 8.0;
            // the m^{k/2} bound holds for k >= 2 (k = 1 counts vertices,
            // which the bound does not cover)
            row.clique_bound_ok = true;
            for (int k = 2; k <= 5; ++k)
                if (static_cast<double>(count_cliques(g, k)) >
                    std::pow(static_cast<double>(row.m), k / 2.0) * (1 + 1e-9))
                    row.clique_bound_ok = false;
            row.biclique_a = static_cast<int>(std::ceil(3.0 * std::log2(double(n))));
            auto bic = find_biclique(g, row.biclique_a, biclique_budget);
            row.biclique_verdict = bic.verdict == BicliqueResult::Verdict::Found ? "found"
                : bic.verdict == BicliqueResult::Verdict::None ? "none"
                                                               : "inconclusive";
            rows.push_back(std::move(row));
        }
    return rows;
}

std::vector<ScalingRow> experiment_size_scaling(const std::string & family, int param,
    const std::vector<RandomGraphSpec> & b_specs)
{
    Graph a_graph;
    if (family == "path")
        a_graph = make_path(param);
    else if (family == "cycle")
        a_graph = make_cycle(param);
    else if (family == "grid")
        a_graph = make_grid(param, param);
    else if (family == "clique")
        a_graph = make_clique(param);
    else
        throw DomainError("unknown family '" + family + "'");
    RelStructure a = graph_structure(a_graph);
    auto method = a_graph.n() <= 20 ? DecompMethod::Exact : DecompMethod::MinFill;
    auto plan = make_plan(a, decompose(gaifman_graph(a), method));

    std::vector<ScalingRow> rows;
    for (const auto & spec : b_specs) {
        ScalingRow row;
        row.family = family;
        row.a_desc = family + "-" + std::to_string(param);
        row.a_norm = a.tuple_count();
        row.a_elems = a.universe.size();
        row.width = plan.td.width();
        try {
            Graph bg = gen_random_graph(spec);
            RelStructure b = graph_structure(bg);
            row.b_norm = b.tuple_count();
            FactCircuit c = compile_hom(a, b, plan);
            row.circuit_norm = c.norm();
            row.hom_count = count_homs(c);
            row.flat_size = row.hom_count == 0
                ? 0
                : 1 + static_cast<std::size_t>(row.hom_count) * (2 * row.a_elems + 2);
        }
        catch (const DomainError &) {
            row.skipped = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>> & points)
{
    if (points.size() < 2)
        throw DomainError("slope fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = static_cast<double>(points.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct Candidate {
    std::uint32_t edge_mask = 0;
    int cost = 0;
    std::vector<int> side_a, side_b; // original vertex ids
};

FactCircuit cover_circuit(const Graph & g,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>> & bicliques)
{
    std::vector<std::string> left{"x1", "x2"};
    if (bicliques.empty())
        return empty_circuit(left, g.names);
    FactCircuit c;
    c.left_universe = left;
    c.right_universe = g.names;
    // treelike on purpose: every biclique contributes fresh gates
    auto side = [&](int var, const std::vector<int> & vals) {
        std::vector<int> ins;
        for (int v : vals) {
            ins.push_back(static_cast<int>(c.gates.size()));
            c.gates.push_back(Gate{GateKind::Input, var, v, {}});
        }
        if (ins.size() == 1)
            return ins[0];
        int id = static_cast<int>(c.gates.size());
        c.gates.push_back(Gate{GateKind::Union, -1, -1, std::move(ins)});
        return id;
    };
    std::vector<int> products;
    for (const auto & [sa, sb] : bicliques)
        for (int orient = 0; orient < 2; ++orient) {
            int g1 = side(0, orient ? sb : sa);
            int g2 = side(1, orient ? sa : sb);
            products.push_back(static_cast<int>(c.gates.size()));
            c.gates.push_back(Gate{GateKind::Product, -1, -1, {g1, g2}});
        }
    c.sink = static_cast<int>(c.gates.size());
    c.gates.push_back(Gate{GateKind::Union, -1, -1, std::move(products)});
    return c;
}

}

BicliqueCover biclique_cover_cost(const Graph & g)
{
    BicliqueCover cover;
    if (g.m() == 0) {
        cover.exact = true;
        cover.circuit = cover_circuit(g, {});
        return cover;
    }
    std::vector<int> active;
    for (int v = 0; v < g.n(); ++v)
        if (! g.adj[v].empty())
            active.push_back(v);
    std::vector<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());

    bool try_exact = edges.size() <= 20 && active.size() <= 16;
    if (try_exact) {
        int s = static_cast<int>(active.size());
        std::vector<int> pos(g.n(), -1);
        for (int i = 0; i < s; ++i)
            pos[active[i]] = i;
        std::vector<std::uint32_t> adj(s, 0);
        std::vector<std::uint32_t> edge_bit_of(edges.size());
        std::map<std::pair<int, int>, int> edge_index;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [u, v] = edges[e];
            adj[pos[u]] |= 1u << pos[v];
            adj[pos[v]] |= 1u << pos[u];
            edge_index[{pos[u], pos[v]}] = static_cast<int>(e);
            edge_index[{pos[v], pos[u]}] = static_cast<int>(e);
        }
        // independent vertex subsets, found incrementally
        std::uint32_t full = (s == 32) ? ~0u : ((1u << s) - 1);
        std::vector<char> indep(std::size_t{1} << s, 0);
        indep[0] = 1;
        std::vector<std::uint32_t> indep_sets;
        for (std::uint32_t m = 1; m <= full; ++m) {
            int low = __builtin_ctz(m);
            std::uint32_t rest = m & (m - 1);
            indep[m] = indep[rest] && ! (adj[low] & rest);
            if (indep[m])
                indep_sets.push_back(m);
        }
        // candidate bicliques (A, B): both sides independent, all cross
        // edges present; canonicalised by keeping the least vertex in A
        std::vector<Candidate> cands;
        bool overflow = false;
        for (std::uint32_t am : indep_sets) {
            std::uint32_t common = full;
            for (std::uint32_t t = am; t; t &= t - 1)
                common &= adj[__builtin_ctz(t)];
            if (! common)
                continue;
            // enumerate independent subsets of `common`
            for (std::uint32_t bm = common; bm; bm = (bm - 1) & common) {
                if (! indep[bm])
                    continue;
                if (__builtin_ctz(bm) < __builtin_ctz(am))
                    continue; // mirror pair handled with sides swapped
                Candidate c;
                c.cost = __builtin_popcount(am) + __builtin_popcount(bm);
                for (std::uint32_t t = am; t; t &= t - 1) {
                    int u = __builtin_ctz(t);
                    c.side_a.push_back(active[u]);
                    for (std::uint32_t r = bm; r; r &= r - 1)
                        c.edge_mask |= 1u << edge_index.at({u, __builtin_ctz(r)});
                }
                for (std::uint32_t t = bm; t; t &= t - 1)
                    c.side_b.push_back(active[__builtin_ctz(t)]);
                cands.push_back(std::move(c));
                if (cands.size() > 300'000) {
                    overflow = true;
                    break;
                }
            }
            if (overflow)
                break;
        }
        if (! overflow) {
            std::uint32_t all_edges =
                edges.size() == 32 ? ~0u : ((1u << edges.size()) - 1);
            std::vector<std::vector<int>> per_edge(edges.size());
            for (std::size_t i = 0; i < cands.size(); ++i)
                for (std::size_t e = 0; e < edges.size(); ++e)
                    if (cands[i].edge_mask & (1u << e))
                        per_edge[e].push_back(static_cast<int>(i));
            int best = 2 * static_cast<int>(edges.size()) + 1;
            std::vector<int> best_pick, pick;
            std::function<void(std::uint32_t, int)> rec = [&](std::uint32_t covered, int cost) {
                if (cost >= best)
                    return;
                if (covered == all_edges) {
                    best = cost;
                    best_pick = pick;
                    return;
                }
                int e = __builtin_ctz(~covered & all_edges);
                for (int i : per_edge[e]) {
                    pick.push_back(i);
                    rec(covered | cands[i].edge_mask, cost + cands[i].cost);
                    pick.pop_back();
                }
            };
            rec(0, 0);
            cover.exact = true;
            cover.cost = static_cast<std::size_t>(best);
            for (int i : best_pick)
                cover.bicliques.push_back({cands[i].side_a, cands[i].side_b});
            cover.circuit = cover_circuit(g, cover.bicliques);
            return cover;
        }
    }

    // greedy star cover with independent leaf sides
    std::set<std::pair<int, int>> uncovered(g.edges.begin(), g.edges.end());
    while (! uncovered.empty()) {
        auto [u, v] = *uncovered.begin();
        std::vector<int> leaves{v};
        for (int w : g.adj[u]) {
            if (w == v)
                continue;
            auto key = std::minmax(u, w);
            if (! uncovered.count({key.first, key.second}))
                continue;
            bool ind = true;
            for (int l : leaves)
                if (g.has_edge(w, l))
                    ind = false;
            if (ind)
                leaves.push_back(w);
        }
        std::sort(leaves.begin(), leaves.end());
        for (int l : leaves) {
            auto key = std::minmax(u, l);
            uncovered.erase({key.first, key.second});
        }
        cover.cost += 1 + leaves.size();
        cover.bicliques.push_back({{u}, std::move(leaves)});
    }
    cover.circuit = cover_circuit(g, cover.bicliques);
    return cover;
}

void write_lemma_g_csv(std::ostream & out, const std::vector<LemmaGRow> & rows)
{
    out << "schema=1\n";
    out << "n,seed,m,edge_ok,triangles,triangle_ref,clique_bound_ok,biclique_a,"
           "biclique_verdict\n";
    for (const auto & r : rows)
        out << r.n << ',' << r.seed << ',' << r.m << ',' << (r.edge_ok ? 1 : 0) << ','
            << r.triangles << ',' << r.triangle_ref << ',' << (r.clique_bound_ok ? 1 : 0) << ','
            << r.biclique_a << ',' << r.biclique_verdict << '\n';
}

void write_scaling_csv(std::ostream & out, const std::vector<ScalingRow> & rows)
{
    out << "schema=1\n";
    out << "family,a_desc,a_norm,a_elems,b_norm,width,circuit_norm,hom_count,flat_size,"
           "skipped\n";
    for (const auto & r : rows)
        out << r.family << ',' << r.a_desc << ',' << r.a_norm << ',' << r.a_elems << ','
            << r.b_norm << ',' << r.width << ',' << r.circuit_norm << ',' << r.hom_count << ','
            << r.flat_size << ',' << (r.skipped ? 1 : 0) << '\n';
}

}
