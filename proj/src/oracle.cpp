#include "asub/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace asub {

const char* to_string(FifoResult::Kind k) {
    switch (k) {
        case FifoResult::Kind::NoViolation: return "no_violation_within_bounds";
        case FifoResult::Kind::Deadlock: return "deadlock";
        case FifoResult::Kind::Orphan: return "orphan";
    }
    return "?";
}

namespace {

struct Config {
    StateId a;
    StateId b;
    std::vector<Symbol> ab;  // sent by A, read by B
    std::vector<Symbol> ba;  // sent by B, read by A

    std::string key() const {
        std::string k;
        auto put = [&](std::uint32_t v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); };
        put(a);
        put(b);
        put(static_cast<std::uint32_t>(ab.size()));
        for (Symbol s : ab) k += s.str() + '\0';
        put(static_cast<std::uint32_t>(ba.size()));
        for (Symbol s : ba) k += s.str() + '\0';
        return k;
    }
};

struct Move {
    std::string text;
    Config next;
    bool blocked;  // only possible with a longer queue
};

std::vector<Move> moves(const Machine& ma, const Machine& mb, const Config& c, std::size_t k) {
    std::vector<Move> out;
    auto side = [&](const Machine& m, StateId s, bool is_a) {
        const char* who = is_a ? "A" : "B";
        for (const Transition& t : m.transitions(s)) {
            Config n = c;
            auto& outq = is_a ? n.ab : n.ba;
            auto& inq = is_a ? n.ba : n.ab;
            (is_a ? n.a : n.b) = t.to;
            if (t.action.dir == Direction::Send) {
                const bool blocked = outq.size() >= k;
                outq.push_back(t.action.msg);
                out.push_back({std::string(who) + to_string(t.action), std::move(n), blocked});
            } else if (!inq.empty() && inq.front() == t.action.msg) {
                inq.erase(inq.begin());
                out.push_back({std::string(who) + to_string(t.action), std::move(n), false});
            }
        }
    };
    side(ma, c.a, true);
    side(mb, c.b, false);
    return out;
}

}  // namespace

FifoResult bounded_fifo_safe(const Machine& a, const Machine& b, std::size_t k, std::size_t d) {
    FifoResult res;
    struct Seen {
        std::string parent;
        std::string move;
    };
    std::unordered_map<std::string, Seen> seen;
    std::deque<std::pair<Config, std::size_t>> todo;
    Config init{a.initial(), b.initial(), {}, {}};
    seen.emplace(init.key(), Seen{});
    todo.push_back({init, 0});

    auto trace_to = [&](std::string key) {
        std::vector<std::string> t;
        for (;;) {
            const Seen& s = seen.at(key);
            if (s.move.empty()) break;
            t.push_back(s.move);
            key = s.parent;
        }
        std::reverse(t.begin(), t.end());
        return t;
    };

    while (!todo.empty()) {
        auto [c, depth] = std::move(todo.front());
        todo.pop_front();
        ++res.explored;
        const std::string key = c.key();
        const bool both_final = a.is_final(c.a) && b.is_final(c.b);
        if (both_final) {
            if (!c.ab.empty() || !c.ba.empty()) {
                res.kind = FifoResult::Kind::Orphan;
                res.trace = trace_to(key);
                return res;
            }
            continue;
        }
        auto ms = moves(a, b, c, k);
        if (ms.empty()) {
            res.kind = FifoResult::Kind::Deadlock;
            res.trace = trace_to(key);
            return res;
        }
        if (depth >= d) continue;
        for (Move& m : ms) {
            if (m.blocked) continue;
            std::string nk = m.next.key();
            if (seen.count(nk)) continue;
            seen.emplace(nk, Seen{key, m.text});
            todo.push_back({std::move(m.next), depth + 1});
        }
    }
    return res;
}

SimFailResult bounded_sim_fail_from(Simulator& sim, const SimLabel& start, std::uint32_t depth,
                                    std::size_t budget) {
    SimFailResult res;
    // safe[l] = d: no failure within d steps of label l.
    std::unordered_map<SimLabel, std::uint32_t, SimLabelHash> safe;
    std::vector<Action> path;

    std::function<bool(const SimLabel&, std::uint32_t)> go = [&](const SimLabel& l, std::uint32_t d) -> bool {
        if (auto it = safe.find(l); it != safe.end() && it->second >= d) return false;
        if (++res.expanded > budget) {
            res.budget_exhausted = true;
            return false;
        }
        StepResult r = sim.step(l);
        if (r.failure) {
            res.failure_found = true;
            res.reason = *r.failure;
            res.path = path;
            return true;
        }
        if (d > 0)
            for (auto& [a, next] : r.successors) {
                path.push_back(a);
                if (go(next, d - 1)) return true;
                path.pop_back();
                if (res.budget_exhausted) return false;
            }
        auto& s = safe[l];
        s = std::max(s, d);
        return false;
    };
    go(start, depth);
    return res;
}

SimFailResult bounded_sim_fail(const Machine& sub, const Machine& sup, std::uint32_t depth, std::size_t budget) {
    TreeStore store;
    Simulator sim(sub, sup, store);
    return bounded_sim_fail_from(sim, sim.initial_label(), depth, budget);
}

namespace {

std::string msg_name(unsigned i) { return std::string(1, static_cast<char>('a' + i)); }

}  // namespace

Machine random_machine(std::mt19937_64& rng, unsigned max_states, unsigned max_messages, const std::string& name) {
    std::uniform_int_distribution<unsigned> nstates(1, std::max(1u, max_states));
    const unsigned n = nstates(rng);
    std::uniform_int_distribution<unsigned> pick_state(0, n - 1);
    std::uniform_int_distribution<unsigned> pct(0, 99);
    MachineDescription d{name, "q0"};
    for (unsigned s = 0; s < n; ++s) d.declared_states.push_back("q" + std::to_string(s));
    for (unsigned s = 0; s < n; ++s) {
        const unsigned roll = pct(rng);
        if (roll < 20) continue;  // final
        const bool send = roll < 60;
        bool any = false;
        for (unsigned msg = 0; msg < max_messages; ++msg) {
            if (pct(rng) < 50 && !(msg + 1 == max_messages && !any)) continue;
            any = true;
            const Action a = send ? Action::send(msg_name(msg)) : Action::recv(msg_name(msg));
            d.edges.push_back({"q" + std::to_string(s), a, "q" + std::to_string(pick_state(rng))});
        }
    }
    return Machine::validate(d);
}

Machine mutate(std::mt19937_64& rng, const Machine& m, unsigned max_messages) {
    std::uniform_int_distribution<unsigned> pct(0, 99);
    std::uniform_int_distribution<StateId> pick_state(0, static_cast<StateId>(m.state_count() - 1));
    MachineDescription d{m.name() + "_mut", m.state_name(m.initial())};
    for (StateId q = 0; q < m.state_count(); ++q) d.declared_states.push_back(m.state_name(q));
    for (StateId q = 0; q < m.state_count(); ++q) {
        const auto ts = m.transitions(q);
        std::vector<Transition> keep(ts.begin(), ts.end());
        if (m.kind(q) == StateKind::Sending && keep.size() > 1 && pct(rng) < 40)
            keep.erase(keep.begin() + (pct(rng) % keep.size()));
        for (const Transition& t : keep) {
            StateId to = t.to;
            if (pct(rng) < 10) to = pick_state(rng);
            d.edges.push_back({m.state_name(q), t.action, m.state_name(to)});
        }
        if (m.kind(q) == StateKind::Receiving && pct(rng) < 40) {
            for (unsigned msg = 0; msg < max_messages; ++msg) {
                const Action a = Action::recv(msg_name(msg));
                if (m.successor(q, a)) continue;
                d.edges.push_back({m.state_name(q), a, m.state_name(pick_state(rng))});
                break;
            }
        }
    }
    return Machine::validate(d);
}

}  // namespace asub
