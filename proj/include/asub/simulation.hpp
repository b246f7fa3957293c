#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "asub/input_tree.hpp"
#include "asub/machine.hpp"

namespace asub {

// Node label: state of the candidate subtype against an input tree of the
// candidate supertype whose leaves are supertype states.
struct SimLabel {
    StateId sub;
    TreeRef sup;
    friend bool operator==(const SimLabel&, const SimLabel&) = default;
};

struct SimLabelHash {
    std::size_t operator()(const SimLabel& l) const noexcept {
        return (static_cast<std::size_t>(l.sub) << 32) ^ l.sup;
    }
};

enum class Rule : std::uint8_t { In, Out, InCtx, OutAcc };

enum class FailureReason : std::uint8_t {
    FinalMismatch,             // one side final, the other not (or context pending)
    InputNotCovered,           // supertype may receive something the subtype cannot
    OutputNotAllowed,          // subtype sends something the supertype cannot
    SendLoopWithAccumulation,  // sending loop while the supertype still owes inputs
    InTreeUndefined,           // supertype leaf can loop on receives forever
};

const char* to_string(Rule r);
const char* to_string(FailureReason r);

struct StepResult {
    bool success = false;  // successful leaf: both sides final
    std::optional<FailureReason> failure;
    std::optional<Rule> rule;
    std::vector<std::pair<Action, SimLabel>> successors;  // sorted by action
};

// One-step simulation relation between a subtype machine and a supertype
// machine, over a shared TreeStore.
class Simulator {
public:
    Simulator(const Machine& sub, const Machine& sup, TreeStore& store);

    SimLabel initial_label();
    StepResult step(const SimLabel& l);

    // Accumulated input tree of supertype state q after sending `word`.
    std::optional<TreeRef> acc_tree(StateId q, std::span<const Symbol> word);
    std::optional<TreeRef> in_tree(StateId q);

    const Machine& sub() const { return sub_; }
    const Machine& sup() const { return sup_; }
    TreeStore& store() { return store_; }
    const TreeStore& store() const { return store_; }

    std::string label_string(const SimLabel& l, std::size_t max_chars = 160) const;

private:
    std::optional<TreeRef> acc_one(StateId q, Symbol a);

    const Machine& sub_;
    const Machine& sup_;
    TreeStore& store_;
    std::vector<std::optional<std::optional<TreeRef>>> in_tree_cache_;
    struct AccKeyHash {
        std::size_t operator()(const std::pair<StateId, Symbol>& k) const noexcept {
            return k.second.hash() * 31 + k.first;
        }
    };
    std::unordered_map<std::pair<StateId, Symbol>, std::optional<TreeRef>, AccKeyHash> acc_cache_;
};

// minimum accumulation along a path (used by the witness conditions).
std::optional<std::uint64_t> min_acc(Simulator& sim, std::uint64_t k,
                                     std::vector<StateId> leaves, std::span<const Action> path);

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

enum class NodeStatus : std::uint8_t {
    Interior,
    SuccessfulLeaf,
    FailureLeaf,
    LabelRepeat,  // label equals that of an ancestor
    Growth,       // stopped by the accumulation growth check
    Unexpanded,   // cut off by a limit
};

const char* to_string(NodeStatus s);

struct SimNode {
    SimLabel label;
    NodeId parent = kNoNode;
    Action via{};  // action on the edge from the parent
    std::uint32_t depth = 0;
    NodeStatus status = NodeStatus::Unexpanded;
    std::optional<Rule> rule;
    std::optional<FailureReason> failure;
    NodeId anc = kNoNode;       // for LabelRepeat and Growth
    NodeId growth_mid = kNoNode;  // middle node of the growth triple
    std::vector<std::pair<Action, NodeId>> children;
};

// Which nodes are tested against the growth condition. SendingStates
// restricts the test to nodes whose subtype state is sending; AllStates
// tests every node.
enum class GrowthScope : std::uint8_t { SendingStates, AllStates };

struct BuildOptions {
    std::size_t max_nodes = 1'000'000;
    std::uint32_t max_depth = 10'000;
    GrowthScope growth_scope = GrowthScope::SendingStates;
};

enum class BuildOutcome : std::uint8_t { AllStopped, FailureFound, LimitHit };

const char* to_string(BuildOutcome o);

struct SimTree {
    std::vector<SimNode> nodes;  // nodes[0] is the root, ids follow creation order
    BuildOutcome outcome = BuildOutcome::AllStopped;
    NodeId failure_node = kNoNode;

    const SimNode& operator[](NodeId n) const { return nodes.at(n); }
    std::size_t size() const { return nodes.size(); }
    // Actions on the path from a to its descendant b.
    std::vector<Action> path(NodeId a, NodeId b) const;
    bool is_ancestor_or_self(NodeId a, NodeId b) const;
    std::uint32_t max_depth() const;
};

// Depth-first construction; children are visited in action order (receives
// before sends, then by message). Stops at the first failure leaf.
SimTree build(Simulator& sim, const BuildOptions& opts = {});

// The growth check on a root-to-node path: returns (n_i, n_j) if the last
// node of `path` forms a growth triple with two earlier nodes.
std::optional<std::pair<NodeId, NodeId>> find_growth(const Simulator& sim, const SimTree& t,
                                                     std::span<const NodeId> path);

}  // namespace asub
