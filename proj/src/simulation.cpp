#include "asub/simulation.hpp"

#include <algorithm>

namespace asub {

const char* to_string(Rule r) {
    switch (r) {
        case Rule::In: return "In";
        case Rule::Out: return "Out";
        case Rule::InCtx: return "InCtx";
        case Rule::OutAcc: return "OutAcc";
    }
    return "?";
}

const char* to_string(FailureReason r) {
    switch (r) {
        case FailureReason::FinalMismatch: return "FinalMismatch";
        case FailureReason::InputNotCovered: return "InputNotCovered";
        case FailureReason::OutputNotAllowed: return "OutputNotAllowed";
        case FailureReason::SendLoopWithAccumulation: return "SendLoopWithAccumulation";
        case FailureReason::InTreeUndefined: return "InTreeUndefined";
    }
    return "?";
}

const char* to_string(NodeStatus s) {
    switch (s) {
        case NodeStatus::Interior: return "interior";
        case NodeStatus::SuccessfulLeaf: return "successful_leaf";
        case NodeStatus::FailureLeaf: return "failure_leaf";
        case NodeStatus::LabelRepeat: return "label_repeat";
        case NodeStatus::Growth: return "growth";
        case NodeStatus::Unexpanded: return "unexpanded";
    }
    return "?";
}

const char* to_string(BuildOutcome o) {
    switch (o) {
        case BuildOutcome::AllStopped: return "AllStopped";
        case BuildOutcome::FailureFound: return "FailureFound";
        case BuildOutcome::LimitHit: return "LimitHit";
    }
    return "?";
}

namespace {

bool subset(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

Simulator::Simulator(const Machine& sub, const Machine& sup, TreeStore& store)
    : sub_(sub), sup_(sup), store_(store), in_tree_cache_(sup.state_count()) {}

SimLabel Simulator::initial_label() { return {sub_.initial(), store_.leaf(sup_.initial())}; }

std::optional<TreeRef> Simulator::in_tree(StateId q) {
    auto& slot = in_tree_cache_.at(q);
    if (!slot) slot = asub::in_tree(sup_, q, store_);
    return *slot;
}

std::optional<TreeRef> Simulator::acc_one(StateId q, Symbol a) {
    const auto key = std::make_pair(q, a);
    if (auto it = acc_cache_.find(key); it != acc_cache_.end()) return it->second;
    std::optional<TreeRef> out;
    if (auto t = in_tree(q)) {
        const Action send{Direction::Send, a};
        out = map_leaves(store_, *t, [&](StateId h) -> std::optional<TreeRef> {
            if (auto next = sup_.successor(h, send)) return store_.leaf(*next);
            return std::nullopt;
        });
    }
    acc_cache_.emplace(key, out);
    return out;
}

std::optional<TreeRef> Simulator::acc_tree(StateId q, std::span<const Symbol> word) {
    if (word.empty()) return store_.leaf(q);
    auto first = acc_one(q, word.front());
    if (!first) return std::nullopt;
    auto rest = word.subspan(1);
    return map_leaves(store_, *first, [&](StateId h) { return acc_tree(h, rest); });
}

StepResult Simulator::step(const SimLabel& l) {
    StepResult r;
    const StateId p = l.sub;
    const TreeNode& t = store_.node(l.sup);
    const bool leaf = t.kind == TreeKind::Leaf;
    const StateId q = leaf ? t.payload : 0;

    switch (sub_.kind(p)) {
        case StateKind::Final:
            if (leaf && sup_.is_final(q))
                r.success = true;
            else
                r.failure = FailureReason::FinalMismatch;
            return r;

        case StateKind::Receiving: {
            const auto in_p = sub_.in_set(p);
            if (leaf) {
                if (sup_.kind(q) != StateKind::Receiving) {
                    r.failure = sup_.is_final(q) ? FailureReason::FinalMismatch
                                                 : FailureReason::InputNotCovered;
                    return r;
                }
                if (!subset(sup_.in_set(q), in_p)) {
                    r.failure = FailureReason::InputNotCovered;
                    return r;
                }
                r.rule = Rule::In;
                for (const Transition& tr : sup_.transitions(q))
                    r.successors.push_back(
                        {tr.action, {*sub_.successor(p, tr.action), store_.leaf(tr.to)}});
                return r;
            }
            const std::vector<Branch> kids = t.children;
            std::vector<Symbol> roots;
            for (const Branch& b : kids) roots.push_back(b.label);
            if (!subset(roots, in_p)) {
                r.failure = FailureReason::InputNotCovered;
                return r;
            }
            r.rule = Rule::InCtx;
            for (const Branch& b : kids) {
                const Action a{Direction::Receive, b.label};
                r.successors.push_back({a, {*sub_.successor(p, a), b.child}});
            }
            return r;
        }

        case StateKind::Sending: {
            const auto out_p = sub_.out_set(p);
            if (leaf && sup_.kind(q) == StateKind::Sending) {
                if (!subset(out_p, sup_.out_set(q))) {
                    r.failure = FailureReason::OutputNotAllowed;
                    return r;
                }
                r.rule = Rule::Out;
                for (const Transition& tr : sub_.transitions(p))
                    r.successors.push_back(
                        {tr.action, {tr.to, store_.leaf(*sup_.successor(q, tr.action))}});
                return r;
            }
            if (sub_.loop_detect(p, Direction::Send)) {
                r.failure = FailureReason::SendLoopWithAccumulation;
                return r;
            }
            const std::vector<StateId> leaves = t.leaves;
            for (StateId qj : leaves) {
                auto a = in_tree(qj);
                if (!a) {
                    r.failure = FailureReason::InTreeUndefined;
                    return r;
                }
                for (StateId qjh : store_.node(*a).leaves)
                    if (!subset(out_p, sup_.out_set(qjh))) {
                        r.failure = FailureReason::OutputNotAllowed;
                        return r;
                    }
            }
            r.rule = Rule::OutAcc;
            const TreeRef ctx = l.sup;
            for (const Transition& tr : sub_.transitions(p)) {
                const Symbol msg = tr.action.msg;
                auto next = map_leaves(store_, ctx, [&](StateId h) { return acc_one(h, msg); });
                r.successors.push_back({tr.action, {tr.to, *next}});
            }
            return r;
        }
    }
    return r;
}

std::string Simulator::label_string(const SimLabel& l, std::size_t max_chars) const {
    return sub_.state_name(l.sub) + " \xe2\x89\xa4 " +
           to_string(store_, l.sup, [&](StateId q) { return sup_.state_name(q); }, max_chars);
}

std::optional<std::uint64_t> min_acc(Simulator& sim, std::uint64_t k, std::vector<StateId> leaves,
                                     std::span<const Action> path) {
    for (const Action& a : path) {
        if (a.dir == Direction::Receive) {
            if (k == 0) return std::nullopt;
            --k;
            continue;
        }
        std::uint64_t best = UINT64_MAX;
        std::vector<StateId> next;
        for (StateId q : leaves) {
            auto t = sim.acc_tree(q, std::span<const Symbol>(&a.msg, 1));
            if (!t) return std::nullopt;
            best = std::min<std::uint64_t>(best, min_height(sim.store(), *t));
            const auto& ls = leaf_states(sim.store(), *t);
            next.insert(next.end(), ls.begin(), ls.end());
        }
        if (leaves.empty()) return std::nullopt;
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        k += best;
        leaves = std::move(next);
    }
    return k;
}

std::vector<Action> SimTree::path(NodeId a, NodeId b) const {
    std::vector<Action> out;
    while (b != a) {
        if (b == kNoNode) throw std::invalid_argument("path: not an ancestor");
        out.push_back(nodes.at(b).via);
        b = nodes.at(b).parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

bool SimTree::is_ancestor_or_self(NodeId a, NodeId b) const {
    while (b != kNoNode) {
        if (b == a) return true;
        b = nodes.at(b).parent;
    }
    return false;
}

std::uint32_t SimTree::max_depth() const {
    std::uint32_t d = 0;
    for (const SimNode& n : nodes) d = std::max(d, n.depth);
    return d;
}

std::optional<std::pair<NodeId, NodeId>> find_growth(const Simulator& sim, const SimTree& t,
                                                     std::span<const NodeId> path) {
    if (path.size() < 3) return std::nullopt;
    const TreeStore& store = sim.store();
    const NodeId k = path.back();
    const SimLabel& lk = t[k].label;
    const auto& leaves_k = leaf_states(store, lk.sup);

    std::vector<std::size_t> same;  // positions on the path with the same subtype state
    for (std::size_t pos = 0; pos + 1 < path.size(); ++pos)
        if (t[path[pos]].label.sub == lk.sub) same.push_back(pos);

    for (std::size_t x = 0; x < same.size(); ++x) {
        const NodeId i = path[same[x]];
        const TreeRef ai = t[i].label.sup;
        const auto& leaves_i = leaf_states(store, ai);
        if (!std::includes(leaves_i.begin(), leaves_i.end(), leaves_k.begin(), leaves_k.end()))
            continue;
        for (std::size_t y = x + 1; y < same.size(); ++y) {
            const NodeId j = path[same[y]];
            const auto& leaves_j = leaf_states(store, t[j].label.sup);
            if (!std::includes(leaves_i.begin(), leaves_i.end(), leaves_j.begin(), leaves_j.end()))
                continue;
            std::vector<Action> psi;
            for (std::size_t pos = same[x] + 1; pos <= same[y]; ++pos) psi.push_back(t[path[pos]].via);
            const std::vector<Symbol> omega = receives(psi);

            bool ok = false;
            for (std::size_t len = 0; len <= omega.size() && !ok; ++len) {
                auto prefix = std::span<const Symbol>(omega).first(len);
                auto ei = extract(store, ai, prefix);
                auto ek = extract(store, lk.sup, prefix);
                ok = ei && ek && store.is_leaf(*ei) && store.is_leaf(*ek);
            }
            if (!ok) {
                auto ei = extract(store, ai, omega);
                auto ek = extract(store, lk.sup, omega);
                ok = ei && ek && min_height(store, *ei) <= min_height(store, *ek);
            }
            if (ok) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

SimTree build(Simulator& sim, const BuildOptions& opts) {
    SimTree t;
    struct Frame {
        NodeId node;
        std::vector<std::pair<Action, SimLabel>> succ;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    std::vector<NodeId> path;
    std::unordered_map<SimLabel, NodeId, SimLabelHash> on_path;

    // Classifies node n (already on `path` as its last element). Returns the
    // successors to expand, or nothing if n is a leaf or boundary.
    auto visit = [&](NodeId n) -> std::optional<std::vector<std::pair<Action, SimLabel>>> {
        const SimLabel label = t.nodes[n].label;
        if (auto it = on_path.find(label); it != on_path.end()) {
            t.nodes[n].status = NodeStatus::LabelRepeat;
            t.nodes[n].anc = it->second;
            return std::nullopt;
        }
        StepResult r = sim.step(label);
        t.nodes[n].rule = r.rule;
        if (r.success) {
            t.nodes[n].status = NodeStatus::SuccessfulLeaf;
            return std::nullopt;
        }
        if (r.failure) {
            t.nodes[n].status = NodeStatus::FailureLeaf;
            t.nodes[n].failure = r.failure;
            t.outcome = BuildOutcome::FailureFound;
            t.failure_node = n;
            return std::nullopt;
        }
        if (opts.growth_scope == GrowthScope::AllStates ||
            sim.sub().kind(label.sub) == StateKind::Sending) {
            if (auto g = find_growth(sim, t, path)) {
                t.nodes[n].status = NodeStatus::Growth;
                t.nodes[n].anc = g->first;
                t.nodes[n].growth_mid = g->second;
                return std::nullopt;
            }
        }
        if (t.nodes[n].depth >= opts.max_depth) {
            t.outcome = BuildOutcome::LimitHit;
            return std::nullopt;
        }
        t.nodes[n].status = NodeStatus::Interior;
        return std::move(r.successors);
    };

    t.nodes.push_back(SimNode{sim.initial_label()});
    path.push_back(0);
    if (auto succ = visit(0)) {
        on_path.emplace(t.nodes[0].label, 0);
        stack.push_back({0, std::move(*succ)});
    } else {
        path.pop_back();
    }

    while (!stack.empty() && t.outcome == BuildOutcome::AllStopped) {
        Frame& f = stack.back();
        if (f.next == f.succ.size()) {
            on_path.erase(t.nodes[f.node].label);
            path.pop_back();
            stack.pop_back();
            continue;
        }
        if (t.nodes.size() >= opts.max_nodes) {
            t.outcome = BuildOutcome::LimitHit;
            break;
        }
        auto [action, label] = f.succ[f.next++];
        const NodeId parent = f.node;
        const auto id = static_cast<NodeId>(t.nodes.size());
        SimNode node{label};
        node.parent = parent;
        node.via = action;
        node.depth = t.nodes[parent].depth + 1;
        t.nodes.push_back(std::move(node));
        t.nodes[parent].children.push_back({action, id});

        path.push_back(id);
        if (auto succ = visit(id)) {
            on_path.emplace(label, id);
            stack.push_back({id, std::move(*succ)});  // invalidates f
        } else {
            path.pop_back();
        }
    }
    return t;
}

}  // namespace asub
