#include <homrep/circuit.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace homrep {

std::size_t FactCircuit::wire_count() const
{
    std::size_t w = 0;
    for (const auto & g : gates)
        w += g.children.size();
    return w;
}

int FactCircuit::left_index(const std::string & name) const
{
    auto it = std::find(left_universe.begin(), left_universe.end(), name);
    if (it == left_universe.end())
        throw DomainError("unknown left element '" + name + "'");
    return static_cast<int>(it - left_universe.begin());
}

int FactCircuit::right_index(const std::string & name) const
{
    auto it = std::find(right_universe.begin(), right_universe.end(), name);
    if (it == right_universe.end())
        throw DomainError("unknown right element '" + name + "'");
    return static_cast<int>(it - right_universe.begin());
}

std::vector<int> FactCircuit::topo_order() const
{
    int n = static_cast<int>(gates.size());
    std::vector<int> state(n, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<int> order;
    order.reserve(n);
    // iterative DFS with an explicit (gate, child position) stack
    for (int start = 0; start < n; ++start) {
        if (state[start])
            continue;
        std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
        state[start] = 1;
        while (! stack.empty()) {
            auto & [g, pos] = stack.back();
            if (pos < gates[g].children.size()) {
                int c = gates[g].children[pos++];
                if (c < 0 || c >= n)
                    throw DomainError("wire to unknown gate");
                if (state[c] == 1)
                    throw DomainError("cyclic wiring");
                if (state[c] == 0) {
                    state[c] = 1;
                    stack.push_back({c, 0});
                }
            }
            else {
                state[g] = 2;
                order.push_back(g);
                stack.pop_back();
            }
        }
    }
    return order;
}

std::vector<std::vector<int>> FactCircuit::domains() const
{
    std::vector<std::vector<int>> dom(gates.size());
    for (int g : topo_order()) {
        const Gate & gate = gates[g];
        if (gate.kind == GateKind::Input)
            dom[g] = {gate.a};
        else {
            std::set<int> acc;
            for (int c : gate.children)
                acc.insert(dom[c].begin(), dom[c].end());
            dom[g].assign(acc.begin(), acc.end());
        }
    }
    return dom;
}

WellDefinedReport check_well_defined(const FactCircuit & c)
{
    WellDefinedReport rep;
    if (c.empty_flag || c.unit_flag)
        return rep;
    if (c.sink < 0 || c.sink >= static_cast<int>(c.gates.size())) {
        rep.violations.push_back("missing sink");
        return rep;
    }
    auto dom = c.domains(); // throws on cycles
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        const Gate & gate = c.gates[g];
        if (gate.kind == GateKind::Input) {
            if (gate.a < 0 || gate.a >= static_cast<int>(c.left_universe.size()) ||
                gate.b < 0 || gate.b >= static_cast<int>(c.right_universe.size()))
                rep.violations.push_back("input gate g" + std::to_string(g) + " off-universe");
            continue;
        }
        if (gate.children.empty()) {
            rep.violations.push_back("gate g" + std::to_string(g) + " has no children");
            continue;
        }
        if (gate.kind == GateKind::Union) {
            for (int ch : gate.children)
                if (dom[ch] != dom[gate.children[0]]) {
                    rep.violations.push_back(
                        "union gate g" + std::to_string(g) + " has mismatched child domains");
                    break;
                }
        }
        else {
            std::set<int> seen;
            int dup = -1;
            for (int ch : gate.children)
                for (int v : dom[ch])
                    if (! seen.insert(v).second && dup < 0)
                        dup = v;
            if (dup >= 0)
                rep.violations.push_back("product gate g" + std::to_string(g) +
                    " has overlapping child domains on '" + c.left_universe[dup] + "'");
        }
    }
    // every gate must feed (transitively) into the sink
    {
        std::vector<char> seen(c.gates.size(), 0);
        std::vector<int> stack{c.sink};
        seen[c.sink] = 1;
        while (! stack.empty()) {
            int g = stack.back();
            stack.pop_back();
            for (int ch : c.gates[g].children)
                if (! seen[ch]) {
                    seen[ch] = 1;
                    stack.push_back(ch);
                }
        }
        for (std::size_t g = 0; g < c.gates.size(); ++g)
            if (! seen[g])
                rep.violations.push_back("gate g" + std::to_string(g) + " does not reach the sink");
    }
    return rep;
}

namespace {

// bottom-up per-gate sets, tracking a global budget
std::vector<std::vector<PartialHom>> evaluate(
    const FactCircuit & c, std::size_t budget, DeterminismResult * det)
{
    std::vector<std::vector<PartialHom>> sets(c.gates.size());
    std::size_t total = 0;
    for (int g : c.topo_order()) {
        const Gate & gate = c.gates[g];
        if (gate.kind == GateKind::Input)
            sets[g] = {PartialHom{{gate.a, gate.b}}};
        else if (gate.kind == GateKind::Union) {
            std::set<PartialHom> acc;
            for (int ch : gate.children)
                for (const auto & h : sets[ch])
                    if (! acc.insert(h).second && det) {
                        det->verdict = DeterminismResult::Verdict::Refuted;
                        det->witness_gate = g;
                        det->witness_hom = h;
                        return sets;
                    }
            sets[g].assign(acc.begin(), acc.end());
        }
        else {
            std::vector<PartialHom> acc{PartialHom{}};
            for (int ch : gate.children) {
                std::vector<PartialHom> next;
                next.reserve(acc.size() * sets[ch].size());
                for (const auto & lhs : acc)
                    for (const auto & rhs : sets[ch]) {
                        PartialHom h = lhs;
                        h.insert(rhs.begin(), rhs.end());
                        next.push_back(std::move(h));
                    }
                acc = std::move(next);
                if (acc.size() > budget)
                    throw DomainError("materialisation budget exceeded");
            }
            sets[g] = std::move(acc);
        }
        total += sets[g].size();
        if (total > budget)
            throw DomainError("materialisation budget exceeded");
    }
    return sets;
}

// restriction of the circuit to gates reachable from the sink
FactCircuit reachable_only(const FactCircuit & c)
{
    if (c.empty_flag || c.unit_flag)
        return c;
    std::vector<int> remap(c.gates.size(), -1);
    FactCircuit out;
    out.left_universe = c.left_universe;
    out.right_universe = c.right_universe;
    out.det_certified = c.det_certified;
    std::vector<char> keep(c.gates.size(), 0);
    std::vector<int> stack{c.sink};
    keep[c.sink] = 1;
    while (! stack.empty()) {
        int g = stack.back();
        stack.pop_back();
        for (int ch : c.gates[g].children)
            if (! keep[ch]) {
                keep[ch] = 1;
                stack.push_back(ch);
            }
    }
    for (int g : c.topo_order())
        if (keep[g]) {
            remap[g] = static_cast<int>(out.gates.size());
            Gate copy = c.gates[g];
            for (int & ch : copy.children)
                ch = remap[ch];
            out.gates.push_back(std::move(copy));
        }
    out.sink = remap[c.sink];
    return out;
}

}

FactCircuit trim(const FactCircuit & c)
{
    return reachable_only(c);
}

DeterminismResult check_deterministic(const FactCircuit & c, std::size_t budget)
{
    DeterminismResult res{DeterminismResult::Verdict::Certified, -1, {}};
    if (c.empty_flag || c.unit_flag || c.det_certified)
        return res;
    try {
        evaluate(reachable_only(c), budget, &res);
    }
    catch (const DomainError &) {
        res.verdict = DeterminismResult::Verdict::Unknown;
    }
    return res;
}

FactCircuit transversal(const FactCircuit & c)
{
    if (c.empty_flag || c.unit_flag)
        return c;
    FactCircuit out;
    out.left_universe = c.left_universe;
    out.right_universe = c.right_universe;
    out.det_certified = c.det_certified;
    // unfold the DAG into a tree: every reference to a gate gets its own copy
    std::vector<std::pair<int, int>> stack; // (old gate, new gate)
    auto emit = [&](int old_gate) {
        int id = static_cast<int>(out.gates.size());
        Gate copy = c.gates[old_gate];
        copy.children.clear();
        out.gates.push_back(copy);
        stack.push_back({old_gate, id});
        return id;
    };
    out.sink = emit(c.sink);
    while (! stack.empty()) {
        auto [old_gate, new_gate] = stack.back();
        stack.pop_back();
        for (int ch : c.gates[old_gate].children) {
            int copy = emit(ch); // may reallocate out.gates
            out.gates[new_gate].children.push_back(copy);
        }
    }
    return out;
}

FactCircuit normalize(const FactCircuit & c)
{
    if (c.empty_flag || c.unit_flag)
        return c;
    FactCircuit reach = reachable_only(c);
    FactCircuit out;
    out.left_universe = reach.left_universe;
    out.right_universe = reach.right_universe;
    out.det_certified = reach.det_certified;
    std::vector<int> remap(reach.gates.size(), -1);
    for (int g : reach.topo_order()) {
        const Gate & gate = reach.gates[g];
        if (gate.kind == GateKind::Input) {
            remap[g] = static_cast<int>(out.gates.size());
            out.gates.push_back(gate);
            continue;
        }
        std::vector<int> kids;
        for (int ch : gate.children) {
            int nc = remap[ch];
            // splice grandchildren of a union directly into a parent union
            if (gate.kind == GateKind::Union && out.gates[nc].kind == GateKind::Union)
                kids.insert(kids.end(), out.gates[nc].children.begin(),
                    out.gates[nc].children.end());
            else
                kids.push_back(nc);
        }
        if (kids.size() == 1) {
            remap[g] = kids[0];
            continue;
        }
        remap[g] = static_cast<int>(out.gates.size());
        out.gates.push_back(Gate{gate.kind, -1, -1, std::move(kids)});
    }
    out.sink = remap[reach.sink];
    return reachable_only(out); // drop spliced-over gates
}

FactCircuit flat_representation(const std::vector<PartialHom> & homs,
    const std::vector<std::string> & left_universe,
    const std::vector<std::string> & right_universe)
{
    if (homs.empty())
        return empty_circuit(left_universe, right_universe);
    if (left_universe.empty())
        return unit_circuit(left_universe, right_universe);
    FactCircuit out;
    out.left_universe = left_universe;
    out.right_universe = right_universe;
    out.det_certified = true;
    std::vector<int> rows;
    for (const auto & h : homs) {
        if (h.size() != left_universe.size())
            throw DomainError("flat representation requires total mappings");
        std::vector<int> inputs;
        for (auto [a, b] : h) {
            inputs.push_back(static_cast<int>(out.gates.size()));
            out.gates.push_back(Gate{GateKind::Input, a, b, {}});
        }
        rows.push_back(static_cast<int>(out.gates.size()));
        out.gates.push_back(Gate{GateKind::Product, -1, -1, std::move(inputs)});
    }
    out.sink = static_cast<int>(out.gates.size());
    out.gates.push_back(Gate{GateKind::Union, -1, -1, std::move(rows)});
    return out;
}

std::vector<PartialHom> materialise(const FactCircuit & c, std::size_t budget)
{
    if (c.empty_flag)
        return {};
    if (c.unit_flag)
        return {PartialHom{}};
    FactCircuit reach = reachable_only(c);
    auto sets = evaluate(reach, budget, nullptr);
    return sets[reach.sink];
}

FactCircuit relabel(const FactCircuit & c, const std::vector<std::string> & new_left,
    const std::vector<std::string> & new_right)
{
    if (new_left.size() != c.left_universe.size() || new_right.size() != c.right_universe.size())
        throw DomainError("relabel universes must match in size");
    FactCircuit out = c;
    out.left_universe = new_left;
    out.right_universe = new_right;
    return out;
}

CircuitBuilder::CircuitBuilder(std::vector<std::string> left, std::vector<std::string> right)
{
    circuit.left_universe = std::move(left);
    circuit.right_universe = std::move(right);
}

int CircuitBuilder::input(int a, int b)
{
    auto it = input_cache.find({a, b});
    if (it != input_cache.end())
        return it->second;
    int id = static_cast<int>(circuit.gates.size());
    circuit.gates.push_back(Gate{GateKind::Input, a, b, {}});
    input_cache[{a, b}] = id;
    return id;
}

int CircuitBuilder::union_gate(std::vector<int> children)
{
    int id = static_cast<int>(circuit.gates.size());
    circuit.gates.push_back(Gate{GateKind::Union, -1, -1, std::move(children)});
    return id;
}

int CircuitBuilder::product_gate(std::vector<int> children)
{
    int id = static_cast<int>(circuit.gates.size());
    circuit.gates.push_back(Gate{GateKind::Product, -1, -1, std::move(children)});
    return id;
}

FactCircuit CircuitBuilder::finish(int sink, bool certified)
{
    circuit.sink = sink;
    circuit.det_certified = certified;
    return reachable_only(circuit);
}

FactCircuit empty_circuit(std::vector<std::string> left, std::vector<std::string> right)
{
    FactCircuit c;
    c.left_universe = std::move(left);
    c.right_universe = std::move(right);
    c.empty_flag = true;
    c.det_certified = true;
    return c;
}

FactCircuit unit_circuit(std::vector<std::string> left, std::vector<std::string> right)
{
    FactCircuit c;
    c.left_universe = std::move(left);
    c.right_universe = std::move(right);
    c.unit_flag = true;
    c.det_certified = true;
    return c;
}

void write_circuit(std::ostream & out, const FactCircuit & c)
{
    if (c.empty_flag)
        out << "dcirc EMPTY\n";
    else if (c.unit_flag)
        out << "dcirc UNIT\n";
    else
        out << "dcirc left=" << c.left_universe.size() << " right=" << c.right_universe.size()
            << '\n';
    out << "lelems";
    for (const auto & e : c.left_universe)
        out << ' ' << e;
    out << "\nrelems";
    for (const auto & e : c.right_universe)
        out << ' ' << e;
    out << '\n';
    if (c.det_certified && ! c.empty_flag && ! c.unit_flag)
        out << "cert 1\n";
    if (c.empty_flag || c.unit_flag)
        return;
    auto order = c.topo_order();
    std::vector<int> remap(c.gates.size(), -1);
    int next = 0;
    for (int g : order)
        remap[g] = next++;
    // lines sorted by emitted id keep the file topological
    std::vector<int> by_new(c.gates.size());
    for (std::size_t g = 0; g < c.gates.size(); ++g)
        by_new[remap[g]] = static_cast<int>(g);
    for (std::size_t id = 0; id < by_new.size(); ++id) {
        const Gate & gate = c.gates[by_new[id]];
        out << 'g' << id;
        if (gate.kind == GateKind::Input)
            out << " IN " << c.left_universe[gate.a] << ' ' << c.right_universe[gate.b];
        else {
            out << (gate.kind == GateKind::Union ? " UNION" : " PROD");
            for (int ch : gate.children)
                out << " g" << remap[ch];
        }
        out << '\n';
    }
    out << "sink g" << remap[c.sink] << '\n';
}

FactCircuit parse_circuit(std::istream & in)
{
    FactCircuit c;
    std::string line;
    bool have_header = false;
    auto gate_id = [&](const std::string & tok) {
        if (tok.size() < 2 || tok[0] != 'g')
            throw DomainError("bad gate reference '" + tok + "'");
        int id = std::stoi(tok.substr(1));
        if (id < 0 || id >= static_cast<int>(c.gates.size()))
            throw DomainError("gate '" + tok + "' referenced before definition");
        return id;
    };
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string t0;
        if (! (ss >> t0) || t0[0] == '#')
            continue;
        if (t0 == "dcirc") {
            have_header = true;
            std::string t1;
            ss >> t1;
            if (t1 == "EMPTY")
                c.empty_flag = c.det_certified = true;
            else if (t1 == "UNIT")
                c.unit_flag = c.det_certified = true;
        }
        else if (t0 == "lelems" || t0 == "relems") {
            auto & uni = (t0 == "lelems") ? c.left_universe : c.right_universe;
            std::string e;
            while (ss >> e)
                uni.push_back(e);
        }
        else if (t0 == "cert")
            c.det_certified = true;
        else if (t0 == "sink") {
            std::string t1;
            ss >> t1;
            c.sink = gate_id(t1);
        }
        else if (t0[0] == 'g') {
            std::string kind;
            ss >> kind;
            if (static_cast<int>(c.gates.size()) != std::stoi(t0.substr(1)))
                throw DomainError("gate ids must be consecutive from g0");
            if (kind == "IN") {
                std::string a, b;
                if (! (ss >> a >> b))
                    throw DomainError("malformed input gate line");
                c.gates.push_back(Gate{GateKind::Input, -1, -1, {}});
                c.gates.back().a = c.left_index(a);
                c.gates.back().b = c.right_index(b);
            }
            else if (kind == "UNION" || kind == "PROD") {
                Gate g{kind == "UNION" ? GateKind::Union : GateKind::Product, -1, -1, {}};
                std::string tok;
                while (ss >> tok)
                    g.children.push_back(gate_id(tok));
                c.gates.push_back(std::move(g));
            }
            else
                throw DomainError("unknown gate kind '" + kind + "'");
        }
        else
            throw DomainError("unrecognised circuit line: " + line);
    }
    if (! have_header)
        throw DomainError("missing dcirc header");
    if (! c.empty_flag && ! c.unit_flag && c.sink < 0)
        throw DomainError("missing sink line");
    return c;
}

FactCircuit parse_circuit_file(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw DomainError("cannot open '" + path + "'");
    return parse_circuit(in);
}

void write_circuit_file(const std::string & path, const FactCircuit & c)
{
    std::ofstream out(path);
    if (! out)
        throw DomainError("cannot write '" + path + "'");
    write_circuit(out, c);
}

}
