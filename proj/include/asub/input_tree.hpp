#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "asub/symbol.hpp"

namespace asub {

using StateId = std::uint32_t;
using HoleId = std::uint32_t;  // holes are numbered from 1
using TreeRef = std::uint32_t;

enum class TreeKind : std::uint8_t { Leaf, Hole, Branch };

struct Branch {
    Symbol label;
    TreeRef child;
    friend bool operator==(const Branch&, const Branch&) = default;
};

// Node of an input tree or input context. Leaves carry a state, holes a
// hole index, branches a non-empty list of children sorted by label.
struct TreeNode {
    TreeKind kind;
    std::uint32_t payload = 0;
    std::vector<Branch> children;
    std::uint32_t min_height = 0;
    std::uint32_t height = 0;
    std::uint32_t hole_count = 0;
    std::vector<StateId> leaves;  // sorted, distinct
    std::size_t hash = 0;
};

// Hash-consed arena for input trees and contexts. Structurally equal trees
// get the same TreeRef, so sharing keeps exponentially wide trees small.
class TreeStore {
public:
    TreeRef leaf(StateId q);
    TreeRef hole(HoleId i);
    // Children are sorted by label; throws std::invalid_argument on an empty
    // list or a repeated label.
    TreeRef branch(std::vector<Branch> children);

    const TreeNode& node(TreeRef t) const { return nodes_.at(t); }
    TreeKind kind(TreeRef t) const { return nodes_.at(t).kind; }
    bool is_leaf(TreeRef t) const { return kind(t) == TreeKind::Leaf; }
    bool is_hole(TreeRef t) const { return kind(t) == TreeKind::Hole; }
    bool is_branch(TreeRef t) const { return kind(t) == TreeKind::Branch; }
    // True iff t contains no hole, i.e. it is an input tree.
    bool is_tree(TreeRef t) const { return nodes_.at(t).hole_count == 0; }
    std::size_t size() const { return nodes_.size(); }

private:
    TreeRef intern(TreeNode n);

    std::vector<TreeNode> nodes_;
    std::unordered_multimap<std::size_t, TreeRef> index_;
};

class MissingHole : public std::out_of_range {
public:
    explicit MissingHole(HoleId i);
    HoleId hole;
};

std::uint32_t min_height(const TreeStore& s, TreeRef t);
std::uint32_t height(const TreeStore& s, TreeRef t);
const std::vector<StateId>& leaf_states(const TreeStore& s, TreeRef t);

// Residual context reached by following `word` from the root. Leaves are
// treated as holes. Undefined when a label is missing or the word runs past
// a leaf or hole.
std::optional<TreeRef> extract(const TreeStore& s, TreeRef t, std::span<const Symbol> word);

struct Split {
    TreeRef context;
    std::vector<StateId> fillers;  // fillers[i - 1] is the state of hole i
};

// Replaces the leaves of an input tree by holes numbered 1..k in
// depth-first, label-ordered traversal. Does not preserve sharing.
Split split(TreeStore& s, TreeRef tree);

// Replaces hole i by fillers[i - 1]. Throws MissingHole if a hole has no
// filler.
TreeRef fill(TreeStore& s, TreeRef context, std::span<const TreeRef> fillers);

// Replaces every leaf q by f(q); undefined if f is undefined on any leaf.
// Holes are left in place. Shared subtrees are visited once.
std::optional<TreeRef> map_leaves(TreeStore& s, TreeRef t,
                                  const std::function<std::optional<TreeRef>(StateId)>& f);

// Textual form: a leaf prints as its state name, a hole as [i], a branch as
// <a: T, b: T>. Output longer than max_chars is cut and ends in "...".
std::string to_string(const TreeStore& s, TreeRef t,
                      const std::function<std::string(StateId)>& state_name,
                      std::size_t max_chars = std::string::npos);

}  // namespace asub
