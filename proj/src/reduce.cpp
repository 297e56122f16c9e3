#include <homrep/reduce.hpp>

#include <homrep/query.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace homrep {

namespace {

std::string hstar_name(const std::string & y, const std::string & a)
{
    return "v@" + y + "@" + a;
}

std::string hstar_name(const std::string & y, const std::string & a, const std::string & b)
{
    return "v@" + y + "@" + a + "+" + b;
}

// colour classes of h keyed by source-vertex id, via colour names
std::vector<std::vector<int>> classes_by_source(const Graph & source, const PartitionedGraph & h)
{
    std::set<std::string> have(h.colours.begin(), h.colours.end());
    std::set<std::string> want(source.names.begin(), source.names.end());
    if (have != want)
        throw DomainError("partition colours do not match the source vertex set");
    auto by_colour = h.classes();
    std::vector<std::vector<int>> out(source.n());
    for (int x = 0; x < source.n(); ++x)
        out[x] = by_colour[h.colour_index(source.names[x])];
    return out;
}

}

AmReport validate_almost_minor(const AlmostMinorMap & m)
{
    AmReport rep;
    const Graph & gx = m.source;
    const Graph & gy = m.target;
    if (static_cast<int>(m.image.size()) != gy.n()) {
        rep.violations.push_back("map does not cover every target vertex");
        return rep;
    }
    for (int y = 0; y < gy.n(); ++y) {
        const auto & im = m.image[y];
        if (im.empty() || im.size() > 2)
            rep.violations.push_back("condition (1): |M(" + gy.names[y] + ")| = " +
                std::to_string(im.size()));
        for (int x : im)
            if (x < 0 || x >= gx.n())
                rep.violations.push_back("M(" + gy.names[y] + ") leaves the source vertex set");
    }
    if (! rep.ok())
        return rep;

    // condition (2): singleton coverage of vertices and edges
    for (int x = 0; x < gx.n(); ++x) {
        bool found = false;
        for (int y = 0; y < gy.n() && ! found; ++y)
            found = m.image[y] == std::vector<int>{x};
        if (! found)
            rep.violations.push_back(
                "condition (2): no target vertex with M(y)={" + gx.names[x] + "}");
    }
    for (const auto & [x1, x2] : gx.edges) {
        bool found = false;
        for (const auto & [y1, y2] : gy.edges) {
            auto wit = [&](int a, int b) {
                return m.image[a] == std::vector<int>{x1} && m.image[b] == std::vector<int>{x2};
            };
            if (wit(y1, y2) || wit(y2, y1)) {
                found = true;
                break;
            }
        }
        if (! found)
            rep.violations.push_back("condition (2): edge {" + gx.names[x1] + "," + gx.names[x2] +
                "} has no witnessing target edge");
    }

    // condition (3): each preimage set is connected in the target
    for (int x = 0; x < gx.n(); ++x) {
        std::set<int> occ;
        for (int y = 0; y < gy.n(); ++y)
            if (std::binary_search(m.image[y].begin(), m.image[y].end(), x))
                occ.insert(y);
        if (occ.empty())
            continue; // already reported under (2)
        std::vector<int> stack{*occ.begin()};
        std::set<int> seen{*occ.begin()};
        while (! stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            for (int z : gy.adj[y])
                if (occ.count(z) && ! seen.count(z)) {
                    seen.insert(z);
                    stack.push_back(z);
                }
        }
        if (seen.size() != occ.size())
            rep.violations.push_back(
                "condition (3): preimage of " + gx.names[x] + " is disconnected");
    }

    // condition (4): neighbours of pair nodes carry one of the two singletons
    for (int y = 0; y < gy.n(); ++y) {
        if (m.image[y].size() != 2)
            continue;
        for (int z : gy.adj[y]) {
            const auto & im = m.image[z];
            if (im.size() != 1 ||
                ! std::binary_search(m.image[y].begin(), m.image[y].end(), im[0]))
                rep.violations.push_back("condition (4): neighbour " + gy.names[z] + " of " +
                    gy.names[y] + " does not carry one of its singletons");
        }
    }
    return rep;
}

AlmostMinorMap grid_map(int k)
{
    if (k < 2)
        throw DomainError("grid_map requires k >= 2");
    AlmostMinorMap m;
    m.source = make_clique(k);
    int side = 2 * k - 2;
    m.target = make_grid(side, side);
    m.image.resize(m.target.n());
    for (int i = 1; i <= side; ++i)
        for (int j = 1; j <= side; ++j) {
            int y = m.target.vertex("v" + std::to_string(i) + "_" + std::to_string(j));
            std::vector<int> im;
            if (j - 1 > i)
                im = {0}; // u_1
            else if (i % 2 == 1 && j % 2 == 1)
                im = {(j + 1) / 2 - 1};
            else if (i % 2 == 1)
                im = {j / 2 - 1};
            else if (j % 2 == 1)
                im = {(i + 2) / 2 - 1};
            else {
                im = {(i + 2) / 2 - 1, j / 2 - 1};
                std::sort(im.begin(), im.end());
                im.erase(std::unique(im.begin(), im.end()), im.end());
            }
            m.image[y] = std::move(im);
        }
    return m;
}

PartitionedGraph lift_graph(const Graph & g, const Graph & h)
{
    if (graph_components(g).size() != 1 || graph_components(h).size() != 1)
        throw DomainError("lift_graph requires connected inputs");
    PartitionedGraph out;
    out.colours = g.names;
    for (int a = 0; a < g.n(); ++a)
        for (int v = 0; v < h.n(); ++v) {
            out.graph.add_vertex(h.names[v] + "@" + g.names[a]);
            out.colour_of.push_back(a);
        }
    auto vid = [&](int v, int a) { return a * h.n() + v; };
    for (const auto & [v, u] : h.edges)
        for (const auto & [a, b] : g.edges) {
            out.graph.add_edge(vid(v, a), vid(u, b));
            out.graph.add_edge(vid(v, b), vid(u, a));
        }
    return out;
}

RelStructure gaifman_lift(const RelStructure & a_id, const PartitionedGraph & h)
{
    // split A^id's signature into colour symbols (one per base element)
    // and base symbols
    std::set<std::string> colours(h.colours.begin(), h.colours.end());
    RelStructure out;
    for (const auto & name : h.graph.names)
        out.add_element(name);
    int nh = h.graph.n();
    for (std::size_t s = 0; s < a_id.sig.size(); ++s) {
        const auto & sym = a_id.sig.symbols[s];
        int os = out.add_symbol(sym.name, sym.arity);
        bool is_colour = false;
        for (const auto & x : a_id.universe)
            if (sym.name == colour_symbol(x)) {
                if (! colours.count(x))
                    throw DomainError("colour '" + x + "' missing from the partition");
                is_colour = true;
                int ci = h.colour_index(x);
                for (int v = 0; v < nh; ++v)
                    if (h.colour_of[v] == ci)
                        out.add_tuple(os, {v});
                break;
            }
        if (is_colour)
            continue;
        // all tuples whose distinct coordinates are pairwise adjacent
        Tuple t(sym.arity, 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i < sym.arity && ok; ++i)
                for (int j = i + 1; j < sym.arity && ok; ++j)
                    if (t[i] != t[j] && ! h.graph.has_edge(t[i], t[j]))
                        ok = false;
            if (ok)
                out.add_tuple(os, t);
            int p = 0;
            while (p < sym.arity && ++t[p] == nh)
                t[p++] = 0;
            if (p == sym.arity)
                break;
        }
    }
    return out;
}

PartitionedGraph build_hstar(const AlmostMinorMap & m, const PartitionedGraph & h)
{
    auto rep = validate_almost_minor(m);
    if (! rep.ok())
        throw DomainError("invalid almost-minor map: " + rep.violations.front());
    h.check();
    auto cls = classes_by_source(m.source, h);
    const auto & hn = h.graph.names;

    PartitionedGraph out;
    out.colours = m.target.names;
    // vertex per class element; pair classes take the full product
    std::map<std::pair<int, std::pair<int, int>>, int> pair_vertex; // (y,(a,b)) -> id
    std::map<std::pair<int, int>, int> single_vertex;               // (y,a) -> id
    for (int y = 0; y < m.target.n(); ++y) {
        const auto & im = m.image[y];
        if (im.size() == 1) {
            for (int a : cls[im[0]]) {
                single_vertex[{y, a}] = out.graph.add_vertex(hstar_name(m.target.names[y], hn[a]));
                out.colour_of.push_back(y);
            }
        }
        else {
            for (int a : cls[im[0]])
                for (int b : cls[im[1]]) {
                    int lo = std::min(a, b), hi = std::max(a, b);
                    pair_vertex[{y, {lo, hi}}] = out.graph.add_vertex(
                        hstar_name(m.target.names[y], hn[lo], hn[hi]));
                    out.colour_of.push_back(y);
                }
        }
    }

    auto pair_id = [&](int y, int a, int b) {
        return pair_vertex.at({y, {std::min(a, b), std::max(a, b)}});
    };
    for (auto [y1, y2] : m.target.edges) {
        // orient so a pair node, if any, is second
        int y = y1, yp = y2;
        if (m.image[y].size() == 2)
            std::swap(y, yp);
        const auto & im = m.image[y];
        const auto & imp = m.image[yp];
        if (im.size() == 2)
            throw DomainError("adjacent pair nodes cannot occur in a valid map");
        int x = im[0];
        if (imp.size() == 2) {
            // case (4): projection consistency with the shared singleton
            int xo = imp[0] == x ? imp[1] : imp[0];
            if (imp[0] != x && imp[1] != x)
                throw DomainError("pair node lacks its neighbour's singleton");
            for (int a : cls[x])
                for (int b : cls[xo])
                    out.graph.add_edge(single_vertex.at({y, a}), pair_id(yp, a, b));
        }
        else if (imp[0] == x) {
            // case (1): perfect matching between the two copies
            for (int a : cls[x])
                out.graph.add_edge(single_vertex.at({y, a}), single_vertex.at({yp, a}));
        }
        else if (m.source.has_edge(x, imp[0])) {
            // case (2): copies of the H-edges between the classes
            for (int a : cls[x])
                for (int b : cls[imp[0]])
                    if (h.graph.has_edge(a, b))
                        out.graph.add_edge(single_vertex.at({y, a}), single_vertex.at({yp, b}));
        }
        else {
            // case (3): complete bipartite on a source non-edge
            for (int a : cls[x])
                for (int b : cls[imp[0]])
                    out.graph.add_edge(single_vertex.at({y, a}), single_vertex.at({yp, b}));
        }
    }
    return out;
}

PartialHom star_hom(const AlmostMinorMap & m, const PartitionedGraph & h,
    const PartitionedGraph & hstar, const PartialHom & hom)
{
    const auto & hn = h.graph.names;
    PartialHom out;
    for (int y = 0; y < m.target.n(); ++y) {
        const auto & im = m.image[y];
        std::string name;
        if (im.size() == 1)
            name = hstar_name(m.target.names[y], hn[hom.at(im[0])]);
        else {
            int a = hom.at(im[0]), b = hom.at(im[1]);
            int lo = std::min(a, b), hi = std::max(a, b);
            name = hstar_name(m.target.names[y], hn[lo], hn[hi]);
        }
        out[y] = hstar.graph.vertex(name);
    }
    return out;
}

FactCircuit recover_circuit(const AlmostMinorMap & m, const PartitionedGraph & h,
    const FactCircuit & c)
{
    if (c.left_universe != m.target.names)
        throw DomainError("circuit's left universe is not the target vertex set");
    auto cls = classes_by_source(m.source, h);

    // one chosen singleton witness per source vertex
    std::vector<int> y_of(m.source.n(), -1);
    for (int x = 0; x < m.source.n(); ++x) {
        for (int y = 0; y < m.target.n(); ++y)
            if (m.image[y] == std::vector<int>{x}) {
                y_of[x] = y;
                break;
            }
        if (y_of[x] < 0)
            throw DomainError("no singleton witness for '" + m.source.names[x] + "'");
    }
    std::set<int> keep(y_of.begin(), y_of.end());
    FactCircuit proj = project(c, keep);

    // relabel y_x -> x and v@y@a -> a
    std::vector<int> left_map(c.left_universe.size(), -1);
    for (int x = 0; x < m.source.n(); ++x)
        left_map[y_of[x]] = x;
    std::map<int, int> right_map; // H* vertex id -> H vertex id
    for (int x = 0; x < m.source.n(); ++x)
        for (int a : cls[x]) {
            std::string name = hstar_name(m.target.names[y_of[x]], h.graph.names[a]);
            auto it = std::find(c.right_universe.begin(), c.right_universe.end(), name);
            if (it != c.right_universe.end())
                right_map[static_cast<int>(it - c.right_universe.begin())] = a;
        }

    FactCircuit out;
    out.left_universe = m.source.names;
    out.right_universe = h.graph.names;
    if (proj.empty_flag) {
        out.empty_flag = true;
        out.det_certified = true;
        return out;
    }
    if (proj.unit_flag)
        throw DomainError("projection collapsed to the unit circuit unexpectedly");
    out.gates = proj.gates;
    out.sink = proj.sink;
    for (auto & gate : out.gates) {
        if (gate.kind != GateKind::Input)
            continue;
        if (left_map[gate.a] < 0)
            throw DomainError("projected circuit still mentions a non-witness vertex");
        auto it = right_map.find(gate.b);
        if (it == right_map.end())
            throw DomainError("projected circuit maps a witness outside its copy class");
        gate.a = left_map[gate.a];
        gate.b = it->second;
    }
    return out;
}

FactCircuit individualisation_restrict(const FactCircuit & c, const RelStructure & cst)
{
    // the colour classes P_a (a ranging over C's left universe) must
    // partition Cst's universe
    std::vector<int> colour_count(cst.universe.size(), 0);
    std::map<int, std::set<int>> filters;
    for (std::size_t a = 0; a < c.left_universe.size(); ++a) {
        std::set<int> allowed;
        int s = cst.sig.index_of(colour_symbol(c.left_universe[a]));
        if (s >= 0) {
            if (cst.sig.symbols[s].arity != 1)
                throw DomainError("colour symbol '" + cst.sig.symbols[s].name + "' is not unary");
            for (const auto & t : cst.relations[s]) {
                allowed.insert(t[0]);
                ++colour_count[t[0]];
            }
        }
        filters[static_cast<int>(a)] = std::move(allowed);
    }
    for (std::size_t v = 0; v < cst.universe.size(); ++v)
        if (colour_count[v] != 1)
            throw DomainError("colour classes do not partition the universe at '" +
                cst.universe[v] + "'");
    return restrict_values(c, filters);
}

void write_am(std::ostream & out, const AlmostMinorMap & m)
{
    for (int y = 0; y < m.target.n(); ++y) {
        out << m.target.names[y] << " -> ";
        for (std::size_t i = 0; i < m.image[y].size(); ++i)
            out << (i ? "," : "") << m.source.names[m.image[y][i]];
        out << '\n';
    }
}

AlmostMinorMap parse_am(std::istream & in, const Graph & source, const Graph & target)
{
    AlmostMinorMap m;
    m.source = source;
    m.target = target;
    m.image.resize(target.n());
    std::vector<bool> seen(target.n(), false);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::string y, arrow, xs;
        if (! (ss >> y))
            continue;
        if (! (ss >> arrow >> xs) || arrow != "->")
            throw DomainError("malformed map line: " + line);
        int yid = target.vertex(y);
        if (seen[yid])
            throw DomainError("duplicate map line for '" + y + "'");
        seen[yid] = true;
        std::vector<int> im;
        std::istringstream xss(xs);
        std::string x;
        while (std::getline(xss, x, ','))
            im.push_back(source.vertex(x));
        std::sort(im.begin(), im.end());
        im.erase(std::unique(im.begin(), im.end()), im.end());
        m.image[yid] = std::move(im);
    }
    for (int y = 0; y < target.n(); ++y)
        if (! seen[y])
            throw DomainError("map line missing for '" + target.names[y] + "'");
    return m;
}

AlmostMinorMap parse_am_file(const std::string & path, const Graph & source, const Graph & target)
{
    std::ifstream in(path);
    if (! in)
        throw DomainError("cannot open '" + path + "'");
    return parse_am(in, source, target);
}

void write_am_file(const std::string & path, const AlmostMinorMap & m)
{
    std::ofstream out(path);
    if (! out)
        throw DomainError("cannot write '" + path + "'");
    write_am(out, m);
}

}
