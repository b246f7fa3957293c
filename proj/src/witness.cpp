#include "asub/witness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace asub {

const char* to_string(WitnessFailure f) {
    switch (f) {
        case WitnessFailure::NoReceiveOnAncPath: return "NoReceiveOnAncPath";
        case WitnessFailure::AccTreeUndefined: return "AccTreeUndefined";
        case WitnessFailure::LeafSetEscapes: return "LeafSetEscapes";
        case WitnessFailure::MinAccDecreases: return "MinAccDecreases";
        case WitnessFailure::Incompatible: return "Incompatible";
    }
    return "?";
}

// ---- EquationSystem ----

VarId EquationSystem::add_var(std::string name) {
    names_.push_back(std::move(name));
    defs_.emplace_back();
    return static_cast<VarId>(names_.size() - 1);
}

void EquationSystem::define(VarId x, ExprId e) { defs_.at(x) = e; }

ExprId EquationSystem::intern(Expr e) {
    auto key = std::make_tuple(e.kind, e.var, e.branches, e.options);
    auto [it, fresh] = index_.try_emplace(std::move(key), static_cast<ExprId>(exprs_.size()));
    if (fresh) exprs_.push_back(std::move(e));
    return it->second;
}

ExprId EquationSystem::var(VarId x) { return intern(Expr{ExprKind::Var, x}); }

ExprId EquationSystem::input_choice(std::vector<std::pair<Symbol, ExprId>> branches) {
    std::sort(branches.begin(), branches.end());
    Expr e{ExprKind::InputChoice};
    e.branches = std::move(branches);
    return intern(std::move(e));
}

ExprId EquationSystem::silent_choice(std::vector<ExprId> options) {
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    Expr e{ExprKind::SilentChoice};
    e.options = std::move(options);
    return intern(std::move(e));
}

std::optional<VarId> EquationSystem::find(const std::string& name) const {
    for (VarId x = 0; x < names_.size(); ++x)
        if (names_[x] == name) return x;
    return std::nullopt;
}

std::string EquationSystem::expr_string(ExprId id) const {
    const Expr& e = exprs_.at(id);
    std::string out;
    switch (e.kind) {
        case ExprKind::Var: return names_.at(e.var);
        case ExprKind::InputChoice:
            out = "<";
            for (std::size_t i = 0; i < e.branches.size(); ++i) {
                if (i) out += ", ";
                out += e.branches[i].first.str() + ": " + expr_string(e.branches[i].second);
            }
            return out + ">";
        case ExprKind::SilentChoice:
            out = "+{";
            for (std::size_t i = 0; i < e.options.size(); ++i) {
                if (i) out += ", ";
                out += expr_string(e.options[i]);
            }
            return out + "}";
    }
    return out;
}

std::string EquationSystem::to_string() const {
    std::string out;
    for (VarId x = 0; x < names_.size(); ++x)
        if (defs_[x]) out += names_[x] + " = " + expr_string(*defs_[x]) + "\n";
    return out;
}

// ---- structural conditions ----

namespace {

NodeId resolve(const CandidateSubtree& c, NodeId n) {
    auto it = c.anc.find(n);
    return it == c.anc.end() ? n : it->second;
}

std::set<NodeId> anc_image(const CandidateSubtree& c) {
    std::set<NodeId> img;
    for (auto [b, a] : c.anc) img.insert(a);
    return img;
}

}  // namespace

WitnessReport check_conditions(Simulator& sim, const SimTree& t, const CandidateSubtree& c) {
    WitnessReport rep;
    auto fail = [&](WitnessFailure f, NodeId at, NodeId other, std::string detail) {
        rep.ok = false;
        rep.failure = f;
        rep.at = at;
        rep.other = other;
        rep.detail = std::move(detail);
        return rep;
    };

    for (NodeId b : c.boundary) {
        const NodeId a = c.anc.at(b);
        if (receives(t.path(a, b)).empty())
            return fail(WitnessFailure::NoReceiveOnAncPath, b, a,
                        "no receive between node " + std::to_string(a) + " and boundary node " +
                            std::to_string(b));
    }

    const TreeStore& store = sim.store();
    const std::set<NodeId> img = anc_image(c);
    for (NodeId n : img) {
        const TreeRef an = t[n].label.sup;
        const std::uint64_t base = min_height(store, an);
        struct Item {
            NodeId node;
            std::optional<std::vector<StateId>> leaves;  // undefined once acc fails
            std::optional<std::uint64_t> k;              // undefined once min_acc fails
        };
        std::vector<Item> work;
        auto advance = [&](const Item& from, const Action& a, NodeId to) {
            Item next{to, from.leaves, from.k};
            if (a.dir == Direction::Receive) {
                if (next.k && *next.k > 0)
                    --*next.k;
                else
                    next.k.reset();
                return next;
            }
            if (!next.leaves) {
                next.k.reset();
                return next;
            }
            std::vector<StateId> leaves;
            std::uint64_t best = UINT64_MAX;
            for (StateId q : *from.leaves) {
                auto acc = sim.acc_tree(q, std::span<const Symbol>(&a.msg, 1));
                if (!acc) {
                    next.leaves.reset();
                    next.k.reset();
                    return next;
                }
                best = std::min<std::uint64_t>(best, min_height(store, *acc));
                const auto& ls = leaf_states(store, *acc);
                leaves.insert(leaves.end(), ls.begin(), ls.end());
            }
            std::sort(leaves.begin(), leaves.end());
            leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
            next.leaves = std::move(leaves);
            if (next.k) *next.k += best;
            return next;
        };

        Item start{n, leaf_states(store, an), base};
        for (auto it = t[n].children.rbegin(); it != t[n].children.rend(); ++it)
            work.push_back(advance(start, it->first, it->second));
        while (!work.empty()) {
            Item cur = std::move(work.back());
            work.pop_back();
            const bool boundary = c.anc.count(cur.node) > 0;
            if (boundary || img.count(cur.node)) {
                const auto& target = leaf_states(store, t[cur.node].label.sup);
                if (!cur.leaves)
                    return fail(WitnessFailure::AccTreeUndefined, n, cur.node,
                                "accumulation from node " + std::to_string(n) + " to node " +
                                    std::to_string(cur.node) + " is undefined");
                if (!std::includes(target.begin(), target.end(), cur.leaves->begin(),
                                   cur.leaves->end()))
                    return fail(WitnessFailure::LeafSetEscapes, n, cur.node,
                                "leaf states accumulated from node " + std::to_string(n) +
                                    " are not all present at node " + std::to_string(cur.node));
                if (boundary && (!cur.k || *cur.k < base))
                    return fail(WitnessFailure::MinAccDecreases, n, cur.node,
                                "minimal accumulation drops below " + std::to_string(base) +
                                    " between node " + std::to_string(n) + " and boundary node " +
                                    std::to_string(cur.node));
            }
            if (boundary) continue;
            const auto& kids = t[cur.node].children;
            for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                work.push_back(advance(cur, it->first, it->second));
        }
    }
    return rep;
}

// ---- equation systems ----

namespace {

std::string sup_var_name(const Machine& sup, StateId q, NodeId n) {
    return "X_{" + sup.state_name(q) + ",n" + std::to_string(n) + "}";
}

class SupSystemBuilder {
public:
    SupSystemBuilder(Simulator& sim, const SimTree& t, const CandidateSubtree& c)
        : sim_(sim), t_(t), c_(c) {}

    std::optional<EquationSystem> run(WitnessReport* why) {
        const VarId x0 = sys_.add_var("X0");
        sys_.start = x0;
        sys_.define(x0, tree_expr(t_[c_.root].label.sup, c_.root));
        while (!todo_.empty()) {
            auto [q, n] = todo_.back();
            todo_.pop_back();
            const VarId x = vars_.at({q, n});
            std::vector<ExprId> options;
            for (auto [a, child] : t_[n].children) {
                const NodeId target = resolve(c_, child);
                if (a.dir == Direction::Receive) {
                    options.push_back(var_for(q, target));
                    continue;
                }
                auto acc = sim_.acc_tree(q, std::span<const Symbol>(&a.msg, 1));
                if (!acc) {
                    if (why) {
                        why->ok = false;
                        why->failure = WitnessFailure::AccTreeUndefined;
                        why->at = n;
                        why->detail = "state " + sim_.sup().state_name(q) + " cannot accumulate " +
                                      to_string(a) + " at node " + std::to_string(n);
                    }
                    return std::nullopt;
                }
                options.push_back(tree_expr(*acc, target));
            }
            sys_.define(x, options.size() == 1 ? options.front() : sys_.silent_choice(options));
        }
        return std::move(sys_);
    }

private:
    ExprId var_for(StateId q, NodeId n) {
        auto [it, fresh] = vars_.try_emplace({q, n}, 0);
        if (fresh) {
            it->second = sys_.add_var(sup_var_name(sim_.sup(), q, n));
            todo_.push_back({q, n});
        }
        return sys_.var(it->second);
    }

    // Input tree as an expression whose leaves q become X_{q,target}.
    ExprId tree_expr(TreeRef tree, NodeId target) {
        std::map<TreeRef, ExprId> memo;
        std::function<ExprId(TreeRef)> go = [&](TreeRef u) -> ExprId {
            if (auto it = memo.find(u); it != memo.end()) return it->second;
            const TreeNode& node = sim_.store().node(u);
            ExprId e;
            if (node.kind == TreeKind::Leaf) {
                e = var_for(node.payload, target);
            } else {
                std::vector<std::pair<Symbol, ExprId>> branches;
                for (const Branch& b : node.children) branches.push_back({b.label, go(b.child)});
                e = sys_.input_choice(std::move(branches));
            }
            memo.emplace(u, e);
            return e;
        };
        return go(tree);
    }

    Simulator& sim_;
    const SimTree& t_;
    const CandidateSubtree& c_;
    EquationSystem sys_;
    std::map<std::pair<StateId, NodeId>, VarId> vars_;
    std::vector<std::pair<StateId, NodeId>> todo_;
};

}  // namespace

std::optional<EquationSystem> build_sup_system(Simulator& sim, const SimTree& t,
                                               const CandidateSubtree& c, WitnessReport* why) {
    return SupSystemBuilder(sim, t, c).run(why);
}

EquationSystem build_sub_system(const SimTree& t, const CandidateSubtree& c) {
    EquationSystem sys;
    std::map<NodeId, VarId> vars;
    std::vector<NodeId> todo;
    auto var_for = [&](NodeId n) {
        auto [it, fresh] = vars.try_emplace(n, 0);
        if (fresh) {
            it->second = sys.add_var("Y_{n" + std::to_string(n) + "}");
            todo.push_back(n);
        }
        return sys.var(it->second);
    };
    var_for(c.root);
    sys.start = vars.at(c.root);
    while (!todo.empty()) {
        const NodeId n = todo.back();
        todo.pop_back();
        std::vector<ExprId> options;
        std::vector<std::pair<Symbol, ExprId>> branches;
        for (auto [a, child] : t[n].children) {
            const ExprId target = var_for(resolve(c, child));
            if (a.dir == Direction::Send)
                options.push_back(target);
            else
                branches.push_back({a.msg, target});
        }
        sys.define(vars.at(n), branches.empty() ? sys.silent_choice(options)
                                                : sys.input_choice(std::move(branches)));
    }
    return sys;
}

bool compatible(const EquationSystem& left, const EquationSystem& right, std::string* why) {
    std::set<std::pair<ExprId, ExprId>> seen;
    std::vector<std::pair<ExprId, ExprId>> todo;
    auto unfold = [&](const EquationSystem& s, ExprId e) -> std::optional<ExprId> {
        return s.definition(s.expr(e).var);
    };
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };

    const auto l0 = left.definition(left.start);
    const auto r0 = right.definition(right.start);
    if (!l0 || !r0) return fail("start variable undefined");
    todo.push_back({*l0, *r0});
    while (!todo.empty()) {
        auto pr = todo.back();
        todo.pop_back();
        if (!seen.insert(pr).second) continue;
        auto [l, r] = pr;
        const Expr& el = left.expr(l);
        const Expr& er = right.expr(r);
        if (el.kind == ExprKind::Var) {
            auto d = unfold(left, l);
            if (!d) return fail("undefined variable " + left.name(el.var));
            todo.push_back({*d, r});
        } else if (er.kind == ExprKind::Var) {
            auto d = unfold(right, r);
            if (!d) return fail("undefined variable " + right.name(er.var));
            todo.push_back({l, *d});
        } else if (el.kind == ExprKind::SilentChoice) {
            for (ExprId o : el.options) todo.push_back({o, r});
        } else if (er.kind == ExprKind::SilentChoice) {
            for (ExprId o : er.options) todo.push_back({l, o});
        } else {
            for (auto [a, sub] : el.branches) {
                auto it = std::find_if(er.branches.begin(), er.branches.end(),
                                       [&](const auto& b) { return b.first == a; });
                if (it == er.branches.end())
                    return fail("input " + a.str() + " of " + left.expr_string(l) +
                                " missing from " + right.expr_string(r));
                todo.push_back({sub, it->second});
            }
        }
    }
    return true;
}

WitnessReport is_witness(Simulator& sim, const SimTree& t, const CandidateSubtree& c) {
    WitnessReport rep = check_conditions(sim, t, c);
    if (!rep.ok) return rep;
    auto g = build_sup_system(sim, t, c, &rep);
    if (!g) return rep;
    const EquationSystem gp = build_sub_system(t, c);
    std::string why;
    if (!compatible(*g, gp, &why)) {
        rep.ok = false;
        rep.failure = WitnessFailure::Incompatible;
        rep.at = c.root;
        rep.detail = why;
    }
    return rep;
}

}  // namespace asub
