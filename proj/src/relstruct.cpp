#include <homrep/relstruct.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace homrep {

int Signature::index_of(const std::string & name) const
{
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i].name == name)
            return static_cast<int>(i);
    return -1;
}

int Signature::add(const std::string & name, int arity)
{
    if (arity < 1)
        throw DomainError("symbol '" + name + "' must have arity >= 1");
    if (has(name))
        throw DomainError("duplicate symbol '" + name + "'");
    symbols.push_back({name, arity});
    return static_cast<int>(symbols.size()) - 1;
}

int RelStructure::add_element(const std::string & name)
{
    if (name.empty())
        throw DomainError("empty element identifier");
    auto it = elem_index.find(name);
    if (it != elem_index.end())
        throw DomainError("duplicate universe element '" + name + "'");
    int id = static_cast<int>(universe.size());
    universe.push_back(name);
    elem_index.emplace(name, id);
    return id;
}

int RelStructure::element(const std::string & name) const
{
    auto it = elem_index.find(name);
    if (it == elem_index.end())
        throw DomainError("unknown element '" + name + "'");
    return it->second;
}

int RelStructure::add_symbol(const std::string & name, int arity)
{
    int idx = sig.add(name, arity);
    relations.emplace_back();
    return idx;
}

void RelStructure::add_tuple(int symbol, Tuple t)
{
    if (symbol < 0 || symbol >= static_cast<int>(sig.symbols.size()))
        throw DomainError("bad symbol index");
    if (static_cast<int>(t.size()) != sig.symbols[symbol].arity)
        throw DomainError("tuple length does not match arity of '" + sig.symbols[symbol].name + "'");
    for (int e : t)
        if (e < 0 || e >= static_cast<int>(universe.size()))
            throw DomainError("tuple component outside universe");
    relations[symbol].insert(std::move(t));
}

void RelStructure::add_tuple(const std::string & symbol, const std::vector<std::string> & elems)
{
    int s = sig.index_of(symbol);
    if (s < 0)
        throw DomainError("unknown symbol '" + symbol + "'");
    Tuple t;
    t.reserve(elems.size());
    for (const auto & e : elems)
        t.push_back(element(e));
    add_tuple(s, std::move(t));
}

std::size_t RelStructure::tuple_count() const
{
    std::size_t total = 0;
    for (const auto & r : relations)
        total += r.size();
    return total;
}

std::vector<int> RelStructure::isolated_elements() const
{
    std::vector<bool> seen(universe.size(), false);
    for (const auto & r : relations)
        for (const auto & t : r)
            for (int e : t)
                seen[e] = true;
    std::vector<int> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (! seen[i])
            out.push_back(static_cast<int>(i));
    return out;
}

int Graph::add_vertex(const std::string & name)
{
    if (name_index.count(name))
        throw DomainError("duplicate vertex '" + name + "'");
    int id = n();
    names.push_back(name);
    name_index.emplace(name, id);
    adj.emplace_back();
    return id;
}

int Graph::vertex(const std::string & name) const
{
    auto it = name_index.find(name);
    if (it == name_index.end())
        throw DomainError("unknown vertex '" + name + "'");
    return it->second;
}

void Graph::add_edge(int u, int v)
{
    if (u == v)
        throw DomainError("self-loop on vertex '" + names.at(u) + "'");
    if (u < 0 || v < 0 || u >= n() || v >= n())
        throw DomainError("edge endpoint outside vertex set");
    auto e = std::minmax(u, v);
    if (edges.insert({e.first, e.second}).second) {
        adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
        adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
    }
}

void Graph::add_edge(const std::string & u, const std::string & v)
{
    add_edge(vertex(u), vertex(v));
}

bool Graph::has_edge(int u, int v) const
{
    auto e = std::minmax(u, v);
    return edges.count({e.first, e.second}) > 0;
}

Graph gaifman_graph(const RelStructure & a)
{
    Graph g;
    for (const auto & name : a.universe)
        g.add_vertex(name);
    for (const auto & r : a.relations)
        for (const auto & t : r)
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j])
                        g.add_edge(t[i], t[j]);
    return g;
}

std::string colour_symbol(const std::string & name)
{
    return "P_" + name;
}

RelStructure individualise(const RelStructure & a)
{
    RelStructure out = a;
    for (int e = 0; e < static_cast<int>(a.universe.size()); ++e) {
        std::string sym = colour_symbol(a.universe[e]);
        if (out.sig.has(sym))
            throw DomainError("individualise: symbol '" + sym + "' already present");
        int s = out.add_symbol(sym, 1);
        out.add_tuple(s, Tuple{e});
    }
    return out;
}

std::vector<std::vector<int>> graph_components(const Graph & g)
{
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0)
            continue;
        int c = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = c;
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[c].push_back(v);
            for (int w : g.adj[v])
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        std::sort(out[c].begin(), out[c].end());
    }
    return out;
}

std::vector<std::vector<int>> connected_components(const RelStructure & a)
{
    return graph_components(gaifman_graph(a));
}

RelStructure graph_structure(const Graph & g)
{
    RelStructure a;
    a.add_symbol("E", 2);
    for (const auto & name : g.names)
        a.add_element(name);
    for (const auto & [u, v] : g.edges) {
        a.add_tuple(0, Tuple{u, v});
        a.add_tuple(0, Tuple{v, u});
    }
    return a;
}

Graph structure_graph(const RelStructure & a)
{
    return gaifman_graph(a);
}

std::vector<std::vector<int>> PartitionedGraph::classes() const
{
    std::vector<std::vector<int>> out(colours.size());
    for (int v = 0; v < graph.n(); ++v)
        out.at(colour_of.at(v)).push_back(v);
    return out;
}

int PartitionedGraph::colour_index(const std::string & c) const
{
    for (std::size_t i = 0; i < colours.size(); ++i)
        if (colours[i] == c)
            return static_cast<int>(i);
    return -1;
}

void PartitionedGraph::check() const
{
    if (colour_of.size() != static_cast<std::size_t>(graph.n()))
        throw DomainError("partition does not cover the vertex set");
    for (int c : colour_of)
        if (c < 0 || c >= static_cast<int>(colours.size()))
            throw DomainError("vertex coloured outside the colour index");
}

RelStructure PartitionedGraph::to_structure() const
{
    check();
    RelStructure a;
    a.add_symbol("E", 2);
    std::vector<int> sym(colours.size());
    for (std::size_t i = 0; i < colours.size(); ++i)
        sym[i] = a.add_symbol(colour_symbol(colours[i]), 1);
    for (const auto & name : graph.names)
        a.add_element(name);
    for (const auto & [u, v] : graph.edges) {
        a.add_tuple(0, Tuple{u, v});
        a.add_tuple(0, Tuple{v, u});
    }
    for (int v = 0; v < graph.n(); ++v)
        a.add_tuple(sym[colour_of[v]], Tuple{v});
    return a;
}

PartitionedGraph PartitionedGraph::from_structure(const RelStructure & a)
{
    PartitionedGraph pg;
    int esym = a.sig.index_of("E");
    if (esym < 0 || a.sig.symbols[esym].arity != 2)
        throw DomainError("partitioned graph structure needs a binary symbol E");
    for (const auto & name : a.universe)
        pg.graph.add_vertex(name);
    for (const auto & t : a.relations[esym])
        if (t[0] != t[1])
            pg.graph.add_edge(t[0], t[1]);
    pg.colour_of.assign(pg.graph.n(), -1);
    for (std::size_t s = 0; s < a.sig.symbols.size(); ++s) {
        const auto & sym = a.sig.symbols[s];
        if (sym.arity != 1 || sym.name.rfind("P_", 0) != 0)
            continue;
        int c = static_cast<int>(pg.colours.size());
        pg.colours.push_back(sym.name.substr(2));
        for (const auto & t : a.relations[s]) {
            if (pg.colour_of[t[0]] >= 0)
                throw DomainError("vertex '" + a.universe[t[0]] + "' has two colours");
            pg.colour_of[t[0]] = c;
        }
    }
    for (int v = 0; v < pg.graph.n(); ++v)
        if (pg.colour_of[v] < 0)
            throw DomainError("vertex '" + a.universe[v] + "' has no colour");
    return pg;
}

Graph make_path(int n)
{
    if (n < 1)
        throw DomainError("path needs >= 1 vertex");
    Graph g;
    for (int i = 1; i <= n; ++i)
        g.add_vertex("v" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph make_cycle(int n)
{
    if (n < 3)
        throw DomainError("cycle needs >= 3 vertices");
    Graph g = make_path(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph make_clique(int k)
{
    if (k < 1)
        throw DomainError("clique needs >= 1 vertex");
    Graph g;
    for (int i = 1; i <= k; ++i)
        g.add_vertex("u" + std::to_string(i));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            g.add_edge(i, j);
    return g;
}

Graph make_grid(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw DomainError("grid needs positive dimensions");
    Graph g;
    auto id = [&](int i, int j) { return i * cols + j; };
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j)
            g.add_vertex("v" + std::to_string(i) + "_" + std::to_string(j));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (i + 1 < rows)
                g.add_edge(id(i, j), id(i + 1, j));
            if (j + 1 < cols)
                g.add_edge(id(i, j), id(i, j + 1));
        }
    return g;
}

Graph make_biclique(int a, int b)
{
    if (a < 1 || b < 1)
        throw DomainError("biclique needs positive side sizes");
    Graph g;
    for (int i = 1; i <= a; ++i)
        g.add_vertex("l" + std::to_string(i));
    for (int i = 1; i <= b; ++i)
        g.add_vertex("r" + std::to_string(i));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            g.add_edge(i, a + j);
    return g;
}

namespace {

std::vector<std::string> tokenize(const std::string & line)
{
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#')
            break;
        toks.push_back(t);
    }
    return toks;
}

std::vector<std::string> split_tuple(const std::string & tok)
{
    if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
        throw DomainError("malformed tuple token '" + tok + "'");
    std::vector<std::string> parts;
    std::string cur;
    for (char c : tok.substr(1, tok.size() - 2)) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        }
        else
            cur += c;
    }
    parts.push_back(cur);
    for (const auto & p : parts)
        if (p.empty())
            throw DomainError("empty component in tuple '" + tok + "'");
    return parts;
}

}

RelStructure parse_structure(std::istream & in)
{
    RelStructure a;
    bool saw_sig = false, saw_universe = false;
    std::string line;
    while (std::getline(in, line)) {
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        const std::string & kw = toks[0];
        if (kw == "sig") {
            if (saw_sig)
                throw DomainError("duplicate sig line");
            saw_sig = true;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto slash = toks[i].rfind('/');
                if (slash == std::string::npos)
                    throw DomainError("symbol token '" + toks[i] + "' needs name/arity");
                a.add_symbol(toks[i].substr(0, slash), std::stoi(toks[i].substr(slash + 1)));
            }
        }
        else if (kw == "universe") {
            if (saw_universe)
                throw DomainError("duplicate universe line");
            saw_universe = true;
            for (std::size_t i = 1; i < toks.size(); ++i)
                a.add_element(toks[i]);
        }
        else if (kw == "rel") {
            if (toks.size() < 2)
                throw DomainError("rel line needs a symbol");
            for (std::size_t i = 2; i < toks.size(); ++i)
                a.add_tuple(toks[1], split_tuple(toks[i]));
        }
        else
            throw DomainError("unknown keyword '" + kw + "' in structure file");
    }
    if (! saw_sig || ! saw_universe)
        throw DomainError("structure file needs sig and universe lines");
    return a;
}

RelStructure parse_structure_string(const std::string & text)
{
    std::istringstream ss(text);
    return parse_structure(ss);
}

RelStructure parse_structure_file(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw DomainError("cannot open '" + path + "'");
    return parse_structure(in);
}

void write_structure(std::ostream & out, const RelStructure & a)
{
    out << "sig";
    for (const auto & s : a.sig.symbols)
        out << ' ' << s.name << '/' << s.arity;
    out << '\n';
    out << "universe";
    for (const auto & e : a.universe)
        out << ' ' << e;
    out << '\n';
    for (std::size_t s = 0; s < a.sig.symbols.size(); ++s) {
        if (a.relations[s].empty())
            continue;
        out << "rel " << a.sig.symbols[s].name;
        for (const auto & t : a.relations[s]) {
            out << " (";
            for (std::size_t i = 0; i < t.size(); ++i)
                out << (i ? "," : "") << a.universe[t[i]];
            out << ')';
        }
        out << '\n';
    }
}

std::string structure_to_string(const RelStructure & a)
{
    std::ostringstream ss;
    write_structure(ss, a);
    return ss.str();
}

void write_structure_file(const std::string & path, const RelStructure & a)
{
    std::ofstream out(path);
    if (! out)
        throw DomainError("cannot write '" + path + "'");
    write_structure(out, a);
}

}
