#include "asub/machine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace asub {

std::string to_string(const Action& a) {
    return (a.dir == Direction::Send ? "!" : "?") + a.msg.str();
}

namespace {

std::vector<Symbol> project(std::span<const Action> w, Direction d) {
    std::vector<Symbol> out;
    for (const Action& a : w)
        if (a.dir == d) out.push_back(a.msg);
    return out;
}

}  // namespace

std::vector<Symbol> sends(std::span<const Action> w) { return project(w, Direction::Send); }
std::vector<Symbol> receives(std::span<const Action> w) { return project(w, Direction::Receive); }

ValidationError::ValidationError(Kind k, const std::string& what)
    : std::runtime_error(what), kind(k) {}

const char* to_string(ValidationError::Kind k) {
    switch (k) {
        case ValidationError::Kind::MixedState: return "MixedState";
        case ValidationError::Kind::NondeterministicChoice: return "NondeterministicChoice";
        case ValidationError::Kind::UnknownState: return "UnknownState";
        case ValidationError::Kind::EmptyMachine: return "EmptyMachine";
    }
    return "?";
}

Machine Machine::validate(const MachineDescription& d) {
    using K = ValidationError::Kind;
    const std::string who = d.name.empty() ? std::string("machine") : "machine " + d.name;
    if (d.initial.empty()) throw ValidationError(K::EmptyMachine, who + " has no initial state");

    std::set<std::string> names;
    if (!d.declared_states.empty()) {
        names.insert(d.declared_states.begin(), d.declared_states.end());
        auto known = [&](const std::string& s) {
            if (!names.count(s))
                throw ValidationError(K::UnknownState, who + ": undeclared state " + s);
        };
        known(d.initial);
        for (const auto& e : d.edges) {
            known(e.from);
            known(e.to);
        }
    } else {
        names.insert(d.initial);
        for (const auto& e : d.edges) {
            names.insert(e.from);
            names.insert(e.to);
        }
    }

    Machine m;
    m.name_ = d.name;
    std::map<std::string, StateId> ids;
    for (const std::string& n : names) {
        ids.emplace(n, static_cast<StateId>(m.states_.size()));
        m.states_.push_back(State{n, {}});
    }
    m.initial_ = ids.at(d.initial);

    for (const auto& e : d.edges) {
        StateId from = ids.at(e.from);
        auto& out = m.states_[from].out;
        for (const Transition& t : out) {
            if (t.action == e.action)
                throw ValidationError(K::NondeterministicChoice,
                                      who + ": state " + e.from + " has two " +
                                          to_string(e.action) + " transitions");
            if (t.action.dir != e.action.dir)
                throw ValidationError(K::MixedState,
                                      who + ": state " + e.from + " both sends and receives");
        }
        out.push_back(Transition{from, e.action, ids.at(e.to)});
    }
    for (State& s : m.states_)
        std::sort(s.out.begin(), s.out.end(),
                  [](const Transition& a, const Transition& b) { return a.action < b.action; });

    for (Direction dir : {Direction::Receive, Direction::Send}) {
        const std::size_t n = m.states_.size();
        // reach[q]: states reachable from q by one or more dir-steps.
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (StateId q = 0; q < n; ++q) {
            std::vector<StateId> stack;
            for (const Transition& t : m.states_[q].out)
                if (t.action.dir == dir) stack.push_back(t.to);
            while (!stack.empty()) {
                StateId u = stack.back();
                stack.pop_back();
                if (reach[q][u]) continue;
                reach[q][u] = true;
                for (const Transition& t : m.states_[u].out)
                    if (t.action.dir == dir) stack.push_back(t.to);
            }
        }
        for (StateId q = 0; q < n; ++q) {
            bool loop = reach[q][q];
            for (StateId u = 0; u < n && !loop; ++u) loop = reach[q][u] && reach[u][u];
            (dir == Direction::Send ? m.states_[q].send_loop : m.states_[q].recv_loop) = loop;
        }
    }
    return m;
}

std::optional<StateId> Machine::find_state(std::string_view name) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), name,
                               [](const State& s, std::string_view n) { return s.name < n; });
    if (it == states_.end() || it->name != name) return std::nullopt;
    return static_cast<StateId>(it - states_.begin());
}

std::optional<StateId> Machine::successor(StateId q, const Action& a) const {
    for (const Transition& t : states_.at(q).out)
        if (t.action == a) return t.to;
    return std::nullopt;
}

StateKind Machine::kind(StateId q) const {
    const auto& out = states_.at(q).out;
    if (out.empty()) return StateKind::Final;
    return out.front().action.dir == Direction::Send ? StateKind::Sending : StateKind::Receiving;
}

std::vector<Symbol> Machine::in_set(StateId q) const {
    std::vector<Symbol> out;
    for (const Transition& t : states_.at(q).out)
        if (t.action.dir == Direction::Receive) out.push_back(t.action.msg);
    return out;
}

std::vector<Symbol> Machine::out_set(StateId q) const {
    std::vector<Symbol> out;
    for (const Transition& t : states_.at(q).out)
        if (t.action.dir == Direction::Send) out.push_back(t.action.msg);
    return out;
}

bool Machine::loop_detect(StateId q, Direction dir) const {
    const State& s = states_.at(q);
    return dir == Direction::Send ? s.send_loop : s.recv_loop;
}

std::vector<Symbol> Machine::alphabet() const {
    std::set<Symbol> all;
    for (const State& s : states_)
        for (const Transition& t : s.out) all.insert(t.action.msg);
    return {all.begin(), all.end()};
}

std::size_t Machine::transition_count() const {
    std::size_t n = 0;
    for (const State& s : states_) n += s.out.size();
    return n;
}

MachineDescription Machine::describe() const {
    MachineDescription d;
    d.name = name_;
    d.initial = states_.at(initial_).name;
    for (const State& s : states_)
        for (const Transition& t : s.out)
            d.edges.push_back({s.name, t.action, states_[t.to].name});
    return d;
}

Machine dual(const Machine& m) {
    MachineDescription d = m.describe();
    for (auto& e : d.edges)
        e.action.dir = e.action.dir == Direction::Send ? Direction::Receive : Direction::Send;
    // Keep isolated states (e.g. an unreachable final state) in the dual.
    for (StateId q = 0; q < m.state_count(); ++q) d.declared_states.push_back(m.state_name(q));
    return Machine::validate(d);
}

std::optional<TreeRef> in_tree(const Machine& m, StateId q, TreeStore& store) {
    if (m.loop_detect(q, Direction::Receive)) return std::nullopt;
    if (m.kind(q) != StateKind::Receiving) return store.leaf(q);
    std::vector<Branch> kids;
    for (const Transition& t : m.transitions(q)) kids.push_back({t.action.msg, *in_tree(m, t.to, store)});
    return store.branch(std::move(kids));
}

}  // namespace asub
