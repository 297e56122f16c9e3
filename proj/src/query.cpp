#include <homrep/query.hpp>

#include <algorithm>

namespace homrep {

std::uint64_t count_homs(const FactCircuit & c)
{
    if (c.empty_flag)
        return 0;
    if (c.unit_flag)
        return 1;
    if (! c.det_certified) {
        auto res = check_deterministic(c);
        if (res.verdict == DeterminismResult::Verdict::Refuted)
            throw DomainError("circuit is not deterministic; counting would overcount");
        if (res.verdict == DeterminismResult::Verdict::Unknown)
            throw DomainError(
                "circuit determinism unknown; run check_deterministic with a larger budget");
    }
    std::vector<std::uint64_t> cnt(c.gates.size(), 0);
    for (int g : c.topo_order()) {
        const Gate & gate = c.gates[g];
        if (gate.kind == GateKind::Input)
            cnt[g] = 1;
        else if (gate.kind == GateKind::Union) {
            std::uint64_t acc = 0;
            for (int ch : gate.children)
                if (__builtin_add_overflow(acc, cnt[ch], &acc))
                    throw DomainError("homomorphism count overflows 64 bits");
            cnt[g] = acc;
        }
        else {
            std::uint64_t acc = 1;
            for (int ch : gate.children)
                if (__builtin_mul_overflow(acc, cnt[ch], &acc))
                    throw DomainError("homomorphism count overflows 64 bits");
            cnt[g] = acc;
        }
    }
    return cnt[c.sink];
}

FactCircuit project(const FactCircuit & c, const std::set<int> & keep, OpStats * stats)
{
    for (int v : keep)
        if (v < 0 || v >= static_cast<int>(c.left_universe.size()))
            throw DomainError("projection variable outside the left universe");
    if (c.empty_flag)
        return c;
    if (c.unit_flag || keep.empty())
        return c.empty_flag ? c : unit_circuit(c.left_universe, c.right_universe);

    // single bottom-up pass: a gate survives iff its domain meets X; wires
    // to dead children are dropped (their variables were projected away)
    FactCircuit out;
    out.left_universe = c.left_universe;
    out.right_universe = c.right_universe;
    std::vector<int> remap(c.gates.size(), -1);
    std::size_t visits = 0;
    for (int g : c.topo_order()) {
        ++visits;
        const Gate & gate = c.gates[g];
        if (gate.kind == GateKind::Input) {
            if (keep.count(gate.a)) {
                remap[g] = static_cast<int>(out.gates.size());
                out.gates.push_back(gate);
            }
            continue;
        }
        std::vector<int> kids;
        for (int ch : gate.children) {
            ++visits;
            if (remap[ch] >= 0)
                kids.push_back(remap[ch]);
        }
        if (kids.empty())
            continue; // whole domain projected away
        remap[g] = static_cast<int>(out.gates.size());
        out.gates.push_back(Gate{gate.kind, -1, -1, std::move(kids)});
    }
    if (stats)
        stats->gate_visits = visits;
    if (remap[c.sink] < 0)
        return unit_circuit(c.left_universe, c.right_universe);
    out.sink = remap[c.sink];
    return out;
}

FactCircuit project_names(const FactCircuit & c, const std::vector<std::string> & keep,
    OpStats * stats)
{
    std::set<int> ids;
    for (const auto & name : keep)
        ids.insert(c.left_index(name));
    return project(c, ids, stats);
}

FactCircuit restrict_values(const FactCircuit & c, const std::map<int, std::set<int>> & filters)
{
    for (const auto & [v, vals] : filters) {
        if (v < 0 || v >= static_cast<int>(c.left_universe.size()))
            throw DomainError("filter key outside the left universe");
        (void)vals;
    }
    if (c.empty_flag || c.unit_flag)
        return c;

    FactCircuit out;
    out.left_universe = c.left_universe;
    out.right_universe = c.right_universe;
    out.det_certified = c.det_certified;
    std::vector<int> remap(c.gates.size(), -1);
    for (int g : c.topo_order()) {
        const Gate & gate = c.gates[g];
        if (gate.kind == GateKind::Input) {
            auto it = filters.find(gate.a);
            if (it != filters.end() && ! it->second.count(gate.b))
                continue; // filtered out
            remap[g] = static_cast<int>(out.gates.size());
            out.gates.push_back(gate);
            continue;
        }
        std::vector<int> kids;
        bool dead = false;
        for (int ch : gate.children) {
            if (remap[ch] >= 0)
                kids.push_back(remap[ch]);
            else if (gate.kind == GateKind::Product)
                dead = true; // a factor became empty
        }
        if (dead || kids.empty())
            continue;
        remap[g] = static_cast<int>(out.gates.size());
        out.gates.push_back(Gate{gate.kind, -1, -1, std::move(kids)});
    }
    if (remap[c.sink] < 0)
        return empty_circuit(c.left_universe, c.right_universe);
    out.sink = remap[c.sink];
    // restriction can orphan gates whose every parent died
    return trim(out);
}

bool member(const FactCircuit & c, const PartialHom & h)
{
    if (h.size() != c.left_universe.size())
        throw DomainError("membership requires a total mapping");
    if (c.empty_flag)
        return false;
    if (c.unit_flag)
        return h.empty();
    std::map<int, std::set<int>> filters;
    for (auto [a, b] : h)
        filters[a] = {b};
    return ! restrict_values(c, filters).empty_flag;
}

EnumerationCursor::EnumerationCursor(const FactCircuit & c) : circ_(normalize(c))
{
    circ_.det_certified = c.det_certified;
    if (! circ_.empty_flag && ! circ_.unit_flag && ! circ_.det_certified) {
        auto res = check_deterministic(circ_);
        if (res.verdict == DeterminismResult::Verdict::Refuted)
            throw DomainError("circuit is not deterministic; enumeration would repeat");
        if (res.verdict == DeterminismResult::Verdict::Unknown)
            throw DomainError("circuit determinism unknown; certify before enumerating");
        circ_.det_certified = true;
    }
    pos_.assign(circ_.gates.size(), 0);
    value_.assign(circ_.left_universe.size(), -1);
}

bool EnumerationCursor::first(int g)
{
    ++steps_;
    const Gate & gate = circ_.gates[g];
    if (gate.kind == GateKind::Input) {
        value_[gate.a] = gate.b;
        return true;
    }
    if (gate.kind == GateKind::Union) {
        pos_[g] = 0;
        return first(gate.children[0]);
    }
    for (int ch : gate.children)
        first(ch);
    return true;
}

bool EnumerationCursor::advance(int g)
{
    ++steps_;
    const Gate & gate = circ_.gates[g];
    if (gate.kind == GateKind::Input)
        return false;
    if (gate.kind == GateKind::Union) {
        if (advance(gate.children[pos_[g]]))
            return true;
        if (++pos_[g] >= static_cast<int>(gate.children.size()))
            return false;
        return first(gate.children[pos_[g]]);
    }
    // leftmost-fastest odometer
    for (std::size_t i = 0; i < gate.children.size(); ++i) {
        if (advance(gate.children[i]))
            return true;
        first(gate.children[i]);
    }
    return false;
}

std::optional<PartialHom> EnumerationCursor::next()
{
    if (done_)
        return std::nullopt;
    steps_ = 0;
    bool have = false;
    if (circ_.empty_flag)
        have = false;
    else if (circ_.unit_flag)
        have = ! started_;
    else if (! started_)
        have = first(circ_.sink);
    else
        have = advance(circ_.sink);
    started_ = true;
    if (! have) {
        done_ = true;
        return std::nullopt;
    }
    last_delay_ = steps_;
    max_delay_ = std::max(max_delay_, steps_);
    ++emitted_;
    PartialHom h;
    if (! circ_.unit_flag) {
        // active inputs of the current configuration define the mapping;
        // dom(sink) is the full set of assigned variables
        for (std::size_t v = 0; v < value_.size(); ++v)
            if (value_[v] >= 0)
                h[static_cast<int>(v)] = value_[v];
    }
    return h;
}

}
