#include <homrep/compile.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace homrep {

namespace {

// positions of `vars` inside the sorted bag
std::vector<int> positions_in(const std::vector<int> & bag, const std::vector<int> & vars)
{
    std::vector<int> pos;
    pos.reserve(vars.size());
    for (int v : vars) {
        auto it = std::lower_bound(bag.begin(), bag.end(), v);
        pos.push_back(static_cast<int>(it - bag.begin()));
    }
    return pos;
}

Tuple project(const Tuple & row, const std::vector<int> & pos)
{
    Tuple out;
    out.reserve(pos.size());
    for (int p : pos)
        out.push_back(row[p]);
    return out;
}

// all bag assignments satisfying the constraints sited at this node
std::vector<Tuple> bag_rows(const RelStructure & a, const RelStructure & b,
    const CompilePlan & plan, int node, const std::vector<int> & b_symbol)
{
    const auto & bag = plan.td.bags[node];
    std::set<Tuple> rows{Tuple(bag.size(), -1)};
    for (const auto & [key, site] : plan.site) {
        if (site != node)
            continue;
        const auto & [sym, ta] = key;
        auto pos = positions_in(bag, ta);
        const auto & btuples = b.relations[b_symbol[sym]];
        std::set<Tuple> next;
        for (const auto & row : rows)
            for (const auto & tb : btuples) {
                Tuple cand = row;
                bool ok = true;
                for (std::size_t i = 0; i < ta.size() && ok; ++i) {
                    int & slot = cand[pos[i]];
                    if (slot < 0)
                        slot = tb[i];
                    else if (slot != tb[i])
                        ok = false;
                }
                if (ok)
                    next.insert(std::move(cand));
            }
        rows = std::move(next);
        if (rows.empty())
            return {};
    }
    // unconstrained bag variables range over all of B
    std::vector<Tuple> out(rows.begin(), rows.end());
    for (std::size_t p = 0; p < bag.size(); ++p) {
        if (std::all_of(out.begin(), out.end(), [&](const Tuple & r) { return r[p] >= 0; }))
            continue;
        std::vector<Tuple> next;
        next.reserve(out.size() * b.universe.size());
        for (const auto & row : out) {
            if (row[p] >= 0) {
                next.push_back(row);
                continue;
            }
            for (int v = 0; v < static_cast<int>(b.universe.size()); ++v) {
                Tuple cand = row;
                cand[p] = v;
                next.push_back(std::move(cand));
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    (void)a;
    return out;
}

}

FactCircuit compile_hom(const RelStructure & a, const RelStructure & b, const CompilePlan & plan)
{
    if (a.universe.empty())
        return unit_circuit(a.universe, b.universe);
    // match A's symbols into B; a nonempty relation without a counterpart
    // forces Hom = ∅
    std::vector<int> b_symbol(a.sig.size(), -1);
    for (std::size_t s = 0; s < a.sig.size(); ++s) {
        int t = b.sig.index_of(a.sig.symbols[s].name);
        if (t >= 0 && b.sig.symbols[t].arity != a.sig.symbols[s].arity)
            throw DomainError("arity mismatch on symbol '" + a.sig.symbols[s].name + "'");
        if (t < 0 && ! a.relations[s].empty())
            return empty_circuit(a.universe, b.universe);
        b_symbol[s] = t;
    }
    if (b.universe.empty())
        return empty_circuit(a.universe, b.universe);

    const auto & td = plan.td;
    int k = td.node_count();
    auto kids = td.children();
    auto anchored = plan.anchored();

    // children-first node order
    std::vector<int> order;
    {
        std::vector<int> stack{td.root};
        while (! stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            order.push_back(t);
            for (int c : kids[t])
                stack.push_back(c);
        }
        std::reverse(order.begin(), order.end());
    }

    std::vector<std::vector<Tuple>> table(k);
    std::vector<std::vector<int>> sep_pos(k);       // separator positions in own bag
    std::vector<std::vector<std::vector<int>>> child_sep_pos(k);
    for (int t = 0; t < k; ++t) {
        sep_pos[t] = positions_in(td.bags[t], plan.separator(t));
        for (int c : kids[t])
            child_sep_pos[t].push_back(positions_in(td.bags[t], plan.separator(c)));
    }

    // bottom-up: build rows, then keep only rows whose child-separator
    // values survive in every child
    std::vector<std::set<Tuple>> sep_values(k);
    for (int t : order) {
        auto rows = bag_rows(a, b, plan, t, b_symbol);
        std::vector<Tuple> kept;
        for (const auto & row : rows) {
            bool ok = true;
            for (std::size_t ci = 0; ci < kids[t].size() && ok; ++ci)
                ok = sep_values[kids[t][ci]].count(project(row, child_sep_pos[t][ci])) > 0;
            if (ok)
                kept.push_back(row);
        }
        table[t] = std::move(kept);
        for (const auto & row : table[t])
            sep_values[t].insert(project(row, sep_pos[t]));
    }

    if (table[td.root].empty())
        return empty_circuit(a.universe, b.universe);

    // top-down: a row survives only if its separator value is produced by
    // some surviving parent row
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int t = *it;
        for (std::size_t ci = 0; ci < kids[t].size(); ++ci) {
            int c = kids[t][ci];
            std::set<Tuple> wanted;
            for (const auto & row : table[t])
                wanted.insert(project(row, child_sep_pos[t][ci]));
            std::vector<Tuple> kept;
            for (const auto & row : table[c])
                if (wanted.count(project(row, sep_pos[c])))
                    kept.push_back(row);
            table[c] = std::move(kept);
        }
    }

    // nodes that anchor nothing anywhere below contribute no gates; they
    // acted purely as semi-join filters above
    std::vector<char> emits(k, 0);
    for (int t : order) {
        emits[t] = ! anchored[t].empty();
        for (int c : kids[t])
            emits[t] |= emits[c];
    }
    emits[td.root] = 1; // root anchors its whole bag (non-empty universe)

    // emit: per node, one Union over one Product per row, grouped by the
    // node's separator value; sibling Products differ on an anchored
    // variable, which certifies every Union as disjoint
    CircuitBuilder builder(a.universe, b.universe);
    std::vector<std::map<Tuple, int>> unions(k);
    for (int t : order) {
        if (! emits[t])
            continue;
        auto anchor_pos = positions_in(td.bags[t], anchored[t]);
        std::map<Tuple, std::vector<int>> groups; // separator value -> products
        for (const auto & row : table[t]) {
            std::vector<int> factors;
            for (std::size_t i = 0; i < anchored[t].size(); ++i)
                factors.push_back(builder.input(anchored[t][i], row[anchor_pos[i]]));
            for (std::size_t ci = 0; ci < kids[t].size(); ++ci)
                if (emits[kids[t][ci]])
                    factors.push_back(unions[kids[t][ci]].at(project(row, child_sep_pos[t][ci])));
            groups[project(row, sep_pos[t])].push_back(builder.product_gate(std::move(factors)));
        }
        for (auto & [sep, prods] : groups)
            unions[t][sep] = builder.union_gate(std::move(prods));
    }
    return builder.finish(unions[td.root].at(Tuple{}), true);
}

FactCircuit compile_hom(const RelStructure & a, const RelStructure & b, DecompMethod method)
{
    if (a.universe.empty())
        return unit_circuit(a.universe, b.universe);
    auto td = decompose(gaifman_graph(a), method);
    return compile_hom(a, b, make_plan(a, td));
}

SizeBoundReport size_bound_check(const RelStructure & a, const RelStructure & b,
    const CompilePlan & plan, const FactCircuit & c)
{
    SizeBoundReport rep;
    rep.circuit_norm = c.norm();
    rep.a_norm = a.tuple_count();
    rep.b_norm = b.tuple_count();
    rep.width = plan.td.width();
    double denom = static_cast<double>(rep.a_norm) * static_cast<double>(rep.a_norm) *
        std::pow(static_cast<double>(rep.b_norm), rep.width + 1);
    rep.ratio = denom > 0 ? static_cast<double>(rep.circuit_norm) / denom : 0.0;
    return rep;
}

}
