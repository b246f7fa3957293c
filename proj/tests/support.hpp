#pragma once

// Shared test helpers. The naive_* functions are deliberately simple
// re-implementations over plain std::map trees; they share no code with the
// library and serve as oracles for it.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "asub/checker.hpp"
#include "asub/machine.hpp"
#include "asub/parser_io.hpp"

namespace asub::test {

inline std::filesystem::path corpus(const std::string& file) { return std::filesystem::path(ASUB_CORPUS_DIR) / file; }

inline Machine load(const std::string& file) {
    auto ms = load_machines(corpus(file));
    if (ms.size() != 1) throw std::runtime_error(file + ": expected one machine");
    return std::move(ms[0]);
}

inline StateId st(const Machine& m, const std::string& name) {
    auto q = m.find_state(name);
    if (!q) throw std::runtime_error("no state " + name + " in " + m.name());
    return *q;
}

// "!nd ?ko !pr" -> actions
inline std::vector<Action> word(const std::string& text) {
    std::vector<Action> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ') {
            ++i;
            continue;
        }
        const char d = text[i++];
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        const std::string msg = text.substr(i, j - i);
        out.push_back(d == '!' ? Action::send(msg) : Action::recv(msg));
        i = j;
    }
    return out;
}

inline std::vector<Symbol> msgs(std::initializer_list<const char*> names) {
    std::vector<Symbol> out;
    for (const char* n : names) out.emplace_back(n);
    return out;
}

// Node reached from the root by following the given actions.
inline NodeId node_at(const SimTree& t, const std::string& path) {
    NodeId n = 0;
    for (const Action& a : word(path)) {
        const auto& ch = t[n].children;
        auto it = std::find_if(ch.begin(), ch.end(), [&](const auto& c) { return c.first == a; });
        if (it == ch.end()) throw std::runtime_error("no child " + to_string(a) + " on path " + path);
        n = it->second;
    }
    return n;
}

// Action paths of the seventeen nodes of the running example's simulation
// tree, indexed by the published node numbers.
inline const std::vector<std::string>& running_example_paths() {
    static const std::vector<std::string> p = {
        "",                                          // n0
        "!nd",                                       // n1
        "!nd ?ok",                                   // n2
        "!nd ?ko",                                   // n3
        "!nd ?ko !pr",                               // n4
        "!nd ?ko !pr !nd",                           // n5
        "!nd ?ko !pr !nd ?ok",                       // n6
        "!nd ?ko !pr !nd ?ko",                       // n7
        "!nd ?ko !pr !nd ?ko !pr",                   // n8
        "!nd ?ko !pr !nd ?ko !pr !nd",               // n9
        "!nd ?ko !pr !nd ?ko !pr !nd ?ko",           // n10
        "!nd ?ko !pr !nd ?ko !pr !nd ?ok",           // n11
        "!nd ?ko !pr !nd ?ko !pr !nd ?ko !pr",       // n12
        "!nd ?ko !pr !nd ?ko !pr !nd ?ko !pr !nd",   // n13
        "!nd ?ko !pr !nd ?ko !pr !nd ?ko !pr !nd ?ok",
        "!nd ?ko !pr !nd ?ko !pr !nd ?ko !pr !nd ?ko",
        "!nd ?ko !pr !nd ?ko !pr !nd ?ko !pr !nd ?ko !pr",
    };
    return p;
}

// Library node id of published node n<k>.
inline NodeId ref_node(const SimTree& t, int k) { return node_at(t, running_example_paths().at(k)); }

inline MachineDescription desc(const std::string& name, const std::string& initial,
                               std::vector<std::tuple<std::string, std::string, std::string>> edges) {
    MachineDescription d{name, initial};
    for (auto& [from, act, to] : edges) {
        const Action a = act[0] == '!' ? Action::send(act.substr(1)) : Action::recv(act.substr(1));
        d.edges.push_back({from, a, to});
    }
    return d;
}

inline Machine mk(const std::string& name, const std::string& initial,
                  std::vector<std::tuple<std::string, std::string, std::string>> edges) {
    return Machine::validate(desc(name, initial, std::move(edges)));
}

// ---- naive oracles ---------------------------------------------------------

struct NTree {
    std::string leaf;                                    // state name when a leaf
    std::map<std::string, std::shared_ptr<NTree>> kids;  // non-empty when a branch
};
using NTreeP = std::shared_ptr<NTree>;

inline std::string show(const NTreeP& t) {
    if (t->kids.empty()) return t->leaf;
    std::string s = "<";
    bool first = true;
    for (const auto& [a, c] : t->kids) {
        if (!first) s += ", ";
        first = false;
        s += a + ": " + show(c);
    }
    return s + ">";
}

inline std::set<std::string> naive_leaves(const NTreeP& t) {
    if (t->kids.empty()) return {t->leaf};
    std::set<std::string> out;
    for (const auto& [a, c] : t->kids) {
        auto l = naive_leaves(c);
        out.insert(l.begin(), l.end());
    }
    return out;
}

inline std::size_t naive_min_height(const NTreeP& t) {
    if (t->kids.empty()) return 0;
    std::size_t best = SIZE_MAX;
    for (const auto& [a, c] : t->kids) best = std::min(best, 1 + naive_min_height(c));
    return best;
}

// Unfolds receives from q; a receive path longer than the state count must
// repeat a state, which means a receive cycle.
inline std::optional<NTreeP> naive_in_tree(const Machine& m, StateId q, std::size_t budget = SIZE_MAX) {
    if (budget == SIZE_MAX) budget = m.state_count();
    auto t = std::make_shared<NTree>();
    if (m.kind(q) != StateKind::Receiving) {
        t->leaf = m.state_name(q);
        return t;
    }
    if (budget == 0) return std::nullopt;
    for (const Transition& tr : m.transitions(q)) {
        auto c = naive_in_tree(m, tr.to, budget - 1);
        if (!c) return std::nullopt;
        t->kids[tr.action.msg.str()] = *c;
    }
    return t;
}

inline std::optional<NTreeP> naive_map_leaves(const NTreeP& t,
                                              const std::function<std::optional<NTreeP>(const std::string&)>& f) {
    if (t->kids.empty()) return f(t->leaf);
    auto out = std::make_shared<NTree>();
    for (const auto& [a, c] : t->kids) {
        auto r = naive_map_leaves(c, f);
        if (!r) return std::nullopt;
        out->kids[a] = *r;
    }
    return out;
}

inline std::optional<NTreeP> naive_acc_tree(const Machine& m, StateId q, const std::vector<std::string>& w,
                                            std::size_t from = 0) {
    if (from == w.size()) {
        auto t = std::make_shared<NTree>();
        t->leaf = m.state_name(q);
        return t;
    }
    auto it = naive_in_tree(m, q);
    if (!it) return std::nullopt;
    return naive_map_leaves(*it, [&](const std::string& leaf) -> std::optional<NTreeP> {
        auto nxt = m.successor(*m.find_state(leaf), Action::send(w[from]));
        if (!nxt) return std::nullopt;
        return naive_acc_tree(m, *nxt, w, from + 1);
    });
}

// Straight transcription of the four-clause recursion.
inline std::optional<std::uint64_t> naive_min_acc(const Machine& m, std::uint64_t k, std::set<std::string> q,
                                                  const std::vector<Action>& psi, std::size_t from = 0) {
    if (from == psi.size()) return k;
    const Action& a = psi[from];
    if (a.dir == Direction::Receive) {
        if (k == 0) return std::nullopt;
        return naive_min_acc(m, k - 1, q, psi, from + 1);
    }
    std::size_t least = SIZE_MAX;
    std::set<std::string> next;
    for (const std::string& s : q) {
        auto t = naive_acc_tree(m, *m.find_state(s), {a.msg.str()});
        if (!t) return std::nullopt;
        least = std::min(least, naive_min_height(*t));
        auto l = naive_leaves(*t);
        next.insert(l.begin(), l.end());
    }
    return naive_min_acc(m, k + least, next, psi, from + 1);
}

inline std::string tree_text(const TreeStore& s, TreeRef t, const Machine& m) {
    return to_string(s, t, [&](StateId q) { return m.state_name(q); });
}

}  // namespace asub::test
