#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace homrep {

/// Raised for semantic errors on structures, graphs and their files.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Signature {
    struct Symbol {
        std::string name;
        int arity = 0;
    };

    std::vector<Symbol> symbols;

    int index_of(const std::string & name) const;
    bool has(const std::string & name) const { return index_of(name) >= 0; }
    int add(const std::string & name, int arity);
    std::size_t size() const { return symbols.size(); }
};

using Tuple = std::vector<int>;

/// Finite relational structure. Element identifiers are strings in files,
/// interned to dense integers; canonical order is insertion (= file) order.
struct RelStructure {
    Signature sig;
    std::vector<std::string> universe;
    std::map<std::string, int> elem_index;
    std::vector<std::set<Tuple>> relations; // aligned with sig.symbols

    int add_element(const std::string & name);
    int element(const std::string & name) const;
    bool has_element(const std::string & name) const { return elem_index.count(name) > 0; }
    int add_symbol(const std::string & name, int arity);
    void add_tuple(int symbol, Tuple t);
    void add_tuple(const std::string & symbol, const std::vector<std::string> & elems);

    /// The size measure: total number of tuples over all relations.
    std::size_t tuple_count() const;
    /// Elements occurring in no tuple.
    std::vector<int> isolated_elements() const;
};

struct Graph {
    std::vector<std::string> names;
    std::map<std::string, int> name_index;
    std::set<std::pair<int, int>> edges; // u < v
    std::vector<std::vector<int>> adj;   // sorted neighbour lists

    int n() const { return static_cast<int>(names.size()); }
    std::size_t m() const { return edges.size(); }
    int add_vertex(const std::string & name);
    int vertex(const std::string & name) const;
    void add_edge(int u, int v);
    void add_edge(const std::string & u, const std::string & v);
    bool has_edge(int u, int v) const;
};

Graph gaifman_graph(const RelStructure & a);
RelStructure individualise(const RelStructure & a);
std::vector<std::vector<int>> connected_components(const RelStructure & a);
std::vector<std::vector<int>> graph_components(const Graph & g);

/// Unary colour symbol name used by individualise and partitioned graphs.
std::string colour_symbol(const std::string & name);

/// Graph as a structure with a symmetric binary relation E
/// (both orientations of every edge are tuples).
RelStructure graph_structure(const Graph & g);
/// Inverse view: vertices = universe, edges = Gaifman edges of E.
Graph structure_graph(const RelStructure & a);

/// Vertex-coloured graph whose colour classes partition the vertex set.
/// Size follows the vertex-coloured convention |V| + |E|.
struct PartitionedGraph {
    Graph graph;
    std::vector<std::string> colours;  // the colour index X, ordered
    std::vector<int> colour_of;        // vertex -> index into colours

    std::size_t size() const { return graph.names.size() + graph.m(); }
    std::vector<std::vector<int>> classes() const;
    int colour_index(const std::string & c) const;
    void check() const; // throws unless colour_of is a total map into colours

    RelStructure to_structure() const;
    static PartitionedGraph from_structure(const RelStructure & a);
};

// generators; vertex names are v1..vn (paths/cycles), u1..uk (cliques),
// v<i>_<j> with 1-based row/column (grids)
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_clique(int k);
Graph make_grid(int rows, int cols);
Graph make_biclique(int a, int b);

RelStructure parse_structure(std::istream & in);
RelStructure parse_structure_string(const std::string & text);
RelStructure parse_structure_file(const std::string & path);
void write_structure(std::ostream & out, const RelStructure & a);
std::string structure_to_string(const RelStructure & a);
void write_structure_file(const std::string & path, const RelStructure & a);

}
