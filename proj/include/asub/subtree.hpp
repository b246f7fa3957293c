#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "asub/simulation.hpp"

namespace asub {

// anc for every boundary node of a built tree: label repeats map to the
// repeated ancestor, growth nodes to n_i of their triple.
std::map<NodeId, NodeId> assign_ancestors(const SimTree& t);

struct CandidateSubtree {
    NodeId root;
    std::vector<NodeId> nodes;     // every node of the subtree, in id order
    std::vector<NodeId> boundary;  // boundary nodes, in id order
    std::map<NodeId, NodeId> anc;  // restricted to the boundary
    std::uint32_t depth = 0;       // nodes on the longest root-to-boundary path
};

enum class ExtractionProblem : std::uint8_t {
    None,
    SuccessfulLeafInside,  // a successful leaf lies below a candidate root
    AncestorOutside,       // a boundary node's ancestor lies above the candidate root
};

const char* to_string(ExtractionProblem p);

struct Extraction {
    std::vector<CandidateSubtree> candidates;  // ordered by root id
    ExtractionProblem problem = ExtractionProblem::None;
    NodeId problem_node = kNoNode;
};

// Roots are the minimal nodes among ancestors reached from a boundary node
// with a different label; each candidate takes all boundary nodes below
// its root.
Extraction extract_candidates(const SimTree& t, const std::map<NodeId, NodeId>& anc);

}  // namespace asub
