#include "asub/input_tree.hpp"

#include <algorithm>
#include <iterator>

namespace asub {

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool same_shape(const TreeNode& a, const TreeNode& b) {
    return a.kind == b.kind && a.payload == b.payload && a.children == b.children;
}

}  // namespace

TreeRef TreeStore::intern(TreeNode n) {
    std::size_t h = combine(static_cast<std::size_t>(n.kind), n.payload);
    for (const Branch& b : n.children) h = combine(combine(h, b.label.hash()), b.child);
    n.hash = h;
    auto [lo, hi] = index_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
        if (same_shape(nodes_[it->second], n)) return it->second;
    auto ref = static_cast<TreeRef>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(h, ref);
    return ref;
}

TreeRef TreeStore::leaf(StateId q) {
    TreeNode n{TreeKind::Leaf, q};
    n.leaves = {q};
    return intern(std::move(n));
}

TreeRef TreeStore::hole(HoleId i) {
    TreeNode n{TreeKind::Hole, i};
    n.hole_count = 1;
    return intern(std::move(n));
}

TreeRef TreeStore::branch(std::vector<Branch> children) {
    if (children.empty()) throw std::invalid_argument("input tree branch without children");
    std::sort(children.begin(), children.end(),
              [](const Branch& a, const Branch& b) { return a.label < b.label; });
    for (std::size_t i = 1; i < children.size(); ++i)
        if (children[i].label == children[i - 1].label)
            throw std::invalid_argument("repeated label in input tree: " + children[i].label.str());

    TreeNode n{TreeKind::Branch};
    n.min_height = UINT32_MAX;
    for (const Branch& b : children) {
        const TreeNode& c = nodes_.at(b.child);
        n.min_height = std::min(n.min_height, c.min_height + 1);
        n.height = std::max(n.height, c.height + 1);
        n.hole_count += c.hole_count;
        std::vector<StateId> merged;
        std::set_union(n.leaves.begin(), n.leaves.end(), c.leaves.begin(), c.leaves.end(),
                       std::back_inserter(merged));
        n.leaves = std::move(merged);
    }
    n.children = std::move(children);
    return intern(std::move(n));
}

MissingHole::MissingHole(HoleId i)
    : std::out_of_range("no filler for hole " + std::to_string(i)), hole(i) {}

std::uint32_t min_height(const TreeStore& s, TreeRef t) { return s.node(t).min_height; }

std::uint32_t height(const TreeStore& s, TreeRef t) { return s.node(t).height; }

const std::vector<StateId>& leaf_states(const TreeStore& s, TreeRef t) { return s.node(t).leaves; }

std::optional<TreeRef> extract(const TreeStore& s, TreeRef t, std::span<const Symbol> word) {
    for (Symbol a : word) {
        const TreeNode& n = s.node(t);
        if (n.kind != TreeKind::Branch) return std::nullopt;
        auto it = std::lower_bound(n.children.begin(), n.children.end(), a,
                                   [](const Branch& b, Symbol x) { return b.label < x; });
        if (it == n.children.end() || it->label != a) return std::nullopt;
        t = it->child;
    }
    return t;
}

namespace {

TreeRef split_rec(TreeStore& s, TreeRef t, std::vector<StateId>& fillers) {
    const TreeNode& n = s.node(t);
    if (n.kind == TreeKind::Leaf) {
        fillers.push_back(n.payload);
        return s.hole(static_cast<HoleId>(fillers.size()));
    }
    if (n.kind == TreeKind::Hole) throw std::invalid_argument("split applied to a context");
    std::vector<Branch> kids = n.children;  // copy: interning may reallocate
    for (Branch& b : kids) b.child = split_rec(s, b.child, fillers);
    return s.branch(std::move(kids));
}

TreeRef fill_rec(TreeStore& s, TreeRef t, std::span<const TreeRef> fillers,
                 std::unordered_map<TreeRef, TreeRef>& memo) {
    const TreeNode& n = s.node(t);
    if (n.hole_count == 0) return t;
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    TreeRef out;
    if (n.kind == TreeKind::Hole) {
        if (n.payload == 0 || n.payload > fillers.size()) throw MissingHole(n.payload);
        out = fillers[n.payload - 1];
    } else {
        std::vector<Branch> kids = n.children;
        for (Branch& b : kids) b.child = fill_rec(s, b.child, fillers, memo);
        out = s.branch(std::move(kids));
    }
    memo.emplace(t, out);
    return out;
}

}  // namespace

Split split(TreeStore& s, TreeRef tree) {
    Split out;
    out.context = split_rec(s, tree, out.fillers);
    return out;
}

TreeRef fill(TreeStore& s, TreeRef context, std::span<const TreeRef> fillers) {
    std::unordered_map<TreeRef, TreeRef> memo;
    return fill_rec(s, context, fillers, memo);
}

std::optional<TreeRef> map_leaves(TreeStore& s, TreeRef t,
                                  const std::function<std::optional<TreeRef>(StateId)>& f) {
    std::unordered_map<TreeRef, std::optional<TreeRef>> memo;
    std::function<std::optional<TreeRef>(TreeRef)> go = [&](TreeRef u) -> std::optional<TreeRef> {
        if (auto it = memo.find(u); it != memo.end()) return it->second;
        std::optional<TreeRef> out;
        const TreeNode& n = s.node(u);
        if (n.kind == TreeKind::Leaf) {
            out = f(n.payload);
        } else if (n.kind == TreeKind::Hole) {
            out = u;
        } else {
            std::vector<Branch> kids = n.children;
            out = TreeRef{};
            for (Branch& b : kids) {
                auto c = go(b.child);
                if (!c) {
                    out.reset();
                    break;
                }
                b.child = *c;
            }
            if (out) out = s.branch(std::move(kids));
        }
        memo.emplace(u, out);
        return out;
    };
    return go(t);
}

std::string to_string(const TreeStore& s, TreeRef t,
                      const std::function<std::string(StateId)>& state_name,
                      std::size_t max_chars) {
    std::string out;
    bool cut = false;
    std::function<void(TreeRef)> go = [&](TreeRef u) {
        if (out.size() > max_chars) {
            cut = true;
            return;
        }
        const TreeNode& n = s.node(u);
        if (n.kind == TreeKind::Leaf) {
            out += state_name(n.payload);
        } else if (n.kind == TreeKind::Hole) {
            out += "[" + std::to_string(n.payload) + "]";
        } else {
            out += "<";
            for (std::size_t i = 0; i < n.children.size() && !cut; ++i) {
                if (i) out += ", ";
                out += n.children[i].label.str() + ": ";
                go(n.children[i].child);
            }
            out += ">";
        }
    };
    go(t);
    if (out.size() > max_chars) cut = true;
    if (cut) {
        out.resize(max_chars > 3 ? max_chars - 3 : 0);
        out += "...";
    }
    return out;
}

}  // namespace asub
