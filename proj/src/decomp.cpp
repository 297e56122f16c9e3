#include <homrep/decomp.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace homrep {

int TreeDecomposition::width() const
{
    int w = -1;
    for (const auto & b : bags)
        w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

std::vector<std::vector<int>> TreeDecomposition::children() const
{
    std::vector<std::vector<int>> out(bags.size());
    for (int t = 0; t < node_count(); ++t)
        if (parent[t] >= 0)
            out[parent[t]].push_back(t);
    return out;
}

std::vector<int> TreeDecomposition::depths() const
{
    std::vector<int> d(bags.size(), -1);
    d[root] = 0;
    auto ch = children();
    std::vector<int> stack{root};
    while (! stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int c : ch[t]) {
            d[c] = d[t] + 1;
            stack.push_back(c);
        }
    }
    return d;
}

void TreeDecomposition::reroot(int new_root)
{
    std::vector<int> path;
    for (int t = new_root; t >= 0; t = parent[t])
        path.push_back(t);
    for (std::size_t i = path.size(); i-- > 1;)
        parent[path[i]] = path[i - 1];
    parent[new_root] = -1;
    root = new_root;
}

DecompMethod parse_method(const std::string & name)
{
    if (name == "minfill")
        return DecompMethod::MinFill;
    if (name == "mindegree")
        return DecompMethod::MinDegree;
    if (name == "exact")
        return DecompMethod::Exact;
    throw DomainError("unknown decomposition method '" + name + "'");
}

namespace {

using AdjSets = std::vector<std::set<int>>;

AdjSets adjacency_sets(const Graph & g)
{
    AdjSets adj(g.n());
    for (const auto & [u, v] : g.edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    return adj;
}

long fill_count(const AdjSets & adj, int v)
{
    long fill = 0;
    std::vector<int> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (! adj[nb[i]].count(nb[j]))
                ++fill;
    return fill;
}

std::vector<int> greedy_order(const Graph & g, DecompMethod method)
{
    AdjSets adj = adjacency_sets(g);
    std::vector<bool> gone(g.n(), false);
    std::vector<int> order;
    order.reserve(g.n());
    for (int step = 0; step < g.n(); ++step) {
        int best = -1;
        long best_score = std::numeric_limits<long>::max();
        for (int v = 0; v < g.n(); ++v) {
            if (gone[v])
                continue;
            long score = method == DecompMethod::MinDegree
                ? static_cast<long>(adj[v].size())
                : fill_count(adj, v);
            if (score < best_score) {
                best_score = score;
                best = v;
            }
        }
        order.push_back(best);
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        for (int w : nb)
            adj[w].erase(best);
        adj[best].clear();
        gone[best] = true;
    }
    return order;
}

// Exact minimum-width elimination order by memoised search over subsets of
// already-eliminated vertices.
struct ExactSolver {
    const Graph & g;
    std::unordered_map<std::uint32_t, int> memo;

    explicit ExactSolver(const Graph & graph) : g(graph) {}

    // Neighbours of v among not-yet-eliminated vertices, going through
    // eliminated ones (the degree of v in the fill graph).
    int fill_degree(std::uint32_t eliminated, int v) const
    {
        std::uint32_t seen = 1u << v;
        std::vector<int> stack{v};
        int degree = 0;
        while (! stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.adj[u]) {
                if (seen & (1u << w))
                    continue;
                seen |= 1u << w;
                if (eliminated & (1u << w))
                    stack.push_back(w);
                else
                    ++degree;
            }
        }
        return degree;
    }

    int solve(std::uint32_t eliminated)
    {
        std::uint32_t full = (g.n() == 32) ? ~0u : ((1u << g.n()) - 1);
        if (eliminated == full)
            return -1;
        auto it = memo.find(eliminated);
        if (it != memo.end())
            return it->second;
        int best = std::numeric_limits<int>::max();
        for (int v = 0; v < g.n(); ++v) {
            if (eliminated & (1u << v))
                continue;
            int d = fill_degree(eliminated, v);
            if (d >= best)
                continue;
            int rest = solve(eliminated | (1u << v));
            best = std::min(best, std::max(d, rest));
        }
        memo.emplace(eliminated, best);
        return best;
    }

    std::vector<int> order()
    {
        std::vector<int> out;
        std::uint32_t eliminated = 0;
        int target = solve(0);
        for (int step = 0; step < g.n(); ++step) {
            for (int v = 0; v < g.n(); ++v) {
                if (eliminated & (1u << v))
                    continue;
                int d = fill_degree(eliminated, v);
                if (d <= target && std::max(d, solve(eliminated | (1u << v))) <= target) {
                    out.push_back(v);
                    eliminated |= 1u << v;
                    break;
                }
            }
        }
        return out;
    }
};

TreeDecomposition from_elimination_order(const Graph & g, const std::vector<int> & order)
{
    AdjSets adj = adjacency_sets(g);
    std::vector<int> position(g.n());
    for (int i = 0; i < g.n(); ++i)
        position[order[i]] = i;

    TreeDecomposition td;
    td.bags.resize(g.n());
    td.parent.assign(g.n(), -1);
    std::vector<int> roots;
    for (int i = 0; i < g.n(); ++i) {
        int v = order[i];
        std::vector<int> nb(adj[v].begin(), adj[v].end());
        td.bags[i] = nb;
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
        if (nb.empty())
            roots.push_back(i);
        else {
            int first = *std::min_element(nb.begin(), nb.end(),
                [&](int x, int y) { return position[x] < position[y]; });
            td.parent[i] = position[first];
        }
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                adj[nb[a]].insert(nb[b]);
                adj[nb[b]].insert(nb[a]);
            }
        for (int w : nb)
            adj[w].erase(v);
        adj[v].clear();
    }
    // chain component roots so the result is a single tree
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.parent[roots[i]] = roots[i - 1];
    td.root = roots.empty() ? 0 : roots[0];

    // deterministic root: a node containing the lexicographically-least name
    int least = 0;
    for (int v = 1; v < g.n(); ++v)
        if (g.names[v] < g.names[least])
            least = v;
    for (int t = 0; t < td.node_count(); ++t)
        if (std::binary_search(td.bags[t].begin(), td.bags[t].end(), least)) {
            td.reroot(t);
            break;
        }
    return td;
}

}

TreeDecomposition decompose(const Graph & g, DecompMethod method)
{
    if (g.n() == 0)
        throw DomainError("cannot decompose the empty graph");
    std::vector<int> order;
    if (method == DecompMethod::Exact) {
        if (g.n() > 20)
            throw DomainError("exact decomposition admitted only for |V| <= 20");
        ExactSolver solver(g);
        order = solver.order();
    }
    else
        order = greedy_order(g, method);
    return from_elimination_order(g, order);
}

TdReport validate_decomposition(const TreeDecomposition & td, const Graph & g)
{
    TdReport rep;
    int k = td.node_count();
    if (k == 0) {
        rep.violations.push_back("decomposition has no nodes");
        return rep;
    }
    if (td.root < 0 || td.root >= k || static_cast<int>(td.parent.size()) != k ||
        td.parent[td.root] != -1) {
        rep.violations.push_back("broken rooting");
        return rep;
    }
    // parent links must form a tree on all nodes
    {
        std::vector<int> seen(k, 0);
        int reached = 0;
        auto ch = td.children();
        std::vector<int> stack{td.root};
        seen[td.root] = 1;
        while (! stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            ++reached;
            for (int c : ch[t])
                if (! seen[c]) {
                    seen[c] = 1;
                    stack.push_back(c);
                }
        }
        if (reached != k) {
            rep.violations.push_back("tree is not connected from the root");
            return rep;
        }
    }
    // condition (1): occurrence sets are non-empty and connected
    for (int v = 0; v < g.n(); ++v) {
        std::vector<int> occ;
        for (int t = 0; t < k; ++t)
            if (std::binary_search(td.bags[t].begin(), td.bags[t].end(), v))
                occ.push_back(t);
        if (occ.empty()) {
            rep.violations.push_back("vertex '" + g.names[v] + "' appears in no bag");
            continue;
        }
        // connected iff exactly one occ node has its parent outside occ
        std::set<int> occset(occ.begin(), occ.end());
        int tops = 0;
        for (int t : occ)
            if (td.parent[t] < 0 || ! occset.count(td.parent[t]))
                ++tops;
        if (tops != 1)
            rep.violations.push_back("bag set of vertex '" + g.names[v] + "' is not connected");
    }
    // condition (2): edge coverage
    for (const auto & [u, v] : g.edges) {
        bool covered = false;
        for (int t = 0; t < k && ! covered; ++t)
            covered = std::binary_search(td.bags[t].begin(), td.bags[t].end(), u) &&
                std::binary_search(td.bags[t].begin(), td.bags[t].end(), v);
        if (! covered)
            rep.violations.push_back("edge {" + g.names[u] + "," + g.names[v] + "} is uncovered");
    }
    rep.computed_width = td.width();
    return rep;
}

std::vector<std::vector<int>> CompilePlan::anchored() const
{
    std::vector<std::vector<int>> out(td.node_count());
    for (int t = 0; t < td.node_count(); ++t) {
        auto sep = separator(t);
        std::set_difference(td.bags[t].begin(), td.bags[t].end(), sep.begin(), sep.end(),
            std::back_inserter(out[t]));
    }
    return out;
}

std::vector<int> CompilePlan::separator(int node) const
{
    std::vector<int> sep;
    if (td.parent[node] < 0)
        return sep;
    const auto & b = td.bags[node];
    const auto & p = td.bags[td.parent[node]];
    std::set_intersection(b.begin(), b.end(), p.begin(), p.end(), std::back_inserter(sep));
    return sep;
}

CompilePlan make_plan(const RelStructure & a, const TreeDecomposition & td_in)
{
    Graph g = gaifman_graph(a);
    auto rep = validate_decomposition(td_in, g);
    if (! rep.ok())
        throw DomainError("invalid tree decomposition: " + rep.violations.front());

    CompilePlan plan;
    plan.td = td_in;

    const auto & td = plan.td;
    auto depth = td.depths();

    plan.anchor_of.assign(a.universe.size(), -1);
    for (int v = 0; v < static_cast<int>(a.universe.size()); ++v) {
        int best = -1;
        for (int t = 0; t < td.node_count(); ++t)
            if (std::binary_search(td.bags[t].begin(), td.bags[t].end(), v))
                if (best < 0 || depth[t] < depth[best])
                    best = t;
        plan.anchor_of[v] = best;
    }

    for (std::size_t s = 0; s < a.sig.symbols.size(); ++s)
        for (const auto & tup : a.relations[s]) {
            std::vector<int> elems(tup.begin(), tup.end());
            std::sort(elems.begin(), elems.end());
            elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
            int best = -1;
            for (int t = 0; t < td.node_count(); ++t)
                if (std::includes(td.bags[t].begin(), td.bags[t].end(), elems.begin(), elems.end()))
                    if (best < 0 || depth[t] > depth[best] || (depth[t] == depth[best] && t < best))
                        best = t;
            if (best < 0)
                throw DomainError("tuple of '" + a.sig.symbols[s].name + "' fits in no bag");
            plan.site[{static_cast<int>(s), tup}] = best;
        }
    return plan;
}

void write_td(std::ostream & out, const TreeDecomposition & td, const std::vector<std::string> & names)
{
    std::size_t maxbag = 0, covered = 0;
    std::set<int> elems;
    for (const auto & b : td.bags) {
        maxbag = std::max(maxbag, b.size());
        elems.insert(b.begin(), b.end());
    }
    covered = elems.size();
    out << "s td " << td.node_count() << ' ' << maxbag << ' ' << covered << '\n';
    for (int t = 0; t < td.node_count(); ++t) {
        out << "b " << (t + 1);
        for (int v : td.bags[t])
            out << ' ' << names.at(v);
        out << '\n';
    }
    for (int t = 0; t < td.node_count(); ++t)
        if (td.parent[t] >= 0)
            out << (td.parent[t] + 1) << ' ' << (t + 1) << '\n';
}

TreeDecomposition parse_td(std::istream & in, const RelStructure & a)
{
    TreeDecomposition td;
    std::vector<std::pair<int, int>> tree_edges;
    std::string line;
    int declared = -1;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string t0;
        if (! (ss >> t0) || t0[0] == '#' || t0 == "c")
            continue;
        if (t0 == "s") {
            std::string kind;
            ss >> kind >> declared;
        }
        else if (t0 == "b") {
            int id;
            ss >> id;
            if (id != td.node_count() + 1)
                throw DomainError("bag ids must be consecutive from 1");
            std::vector<int> bag;
            std::string name;
            while (ss >> name)
                bag.push_back(a.element(name));
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            td.bags.push_back(bag);
        }
        else {
            int u = std::stoi(t0), v;
            if (! (ss >> v))
                throw DomainError("malformed tree edge line");
            tree_edges.push_back({u - 1, v - 1});
        }
    }
    int k = td.node_count();
    if (k == 0)
        throw DomainError("decomposition file has no bags");
    if (declared >= 0 && declared != k)
        throw DomainError("bag count does not match header");
    std::vector<std::vector<int>> nbr(k);
    for (auto [u, v] : tree_edges) {
        if (u < 0 || v < 0 || u >= k || v >= k)
            throw DomainError("tree edge references unknown bag");
        nbr[u].push_back(v);
        nbr[v].push_back(u);
    }
    // root at a node containing the lexicographically-least element
    int least = 0;
    for (int v = 1; v < static_cast<int>(a.universe.size()); ++v)
        if (a.universe[v] < a.universe[least])
            least = v;
    int root = 0;
    for (int t = 0; t < k; ++t)
        if (std::binary_search(td.bags[t].begin(), td.bags[t].end(), least)) {
            root = t;
            break;
        }
    td.parent.assign(k, -2);
    td.root = root;
    td.parent[root] = -1;
    std::vector<int> stack{root};
    int reached = 0;
    while (! stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        ++reached;
        for (int c : nbr[t])
            if (td.parent[c] == -2) {
                td.parent[c] = t;
                stack.push_back(c);
            }
    }
    if (reached != k)
        throw DomainError("decomposition tree is not connected");
    return td;
}

TreeDecomposition parse_td_file(const std::string & path, const RelStructure & a)
{
    std::ifstream in(path);
    if (! in)
        throw DomainError("cannot open '" + path + "'");
    return parse_td(in, a);
}

void write_td_file(const std::string & path, const TreeDecomposition & td, const std::vector<std::string> & names)
{
    std::ofstream out(path);
    if (! out)
        throw DomainError("cannot write '" + path + "'");
    write_td(out, td, names);
}

}
