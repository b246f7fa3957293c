#include "asub/subtree.hpp"

#include <algorithm>

namespace asub {

const char* to_string(ExtractionProblem p) {
    switch (p) {
        case ExtractionProblem::None: return "None";
        case ExtractionProblem::SuccessfulLeafInside: return "SuccessfulLeafInside";
        case ExtractionProblem::AncestorOutside: return "AncestorOutside";
    }
    return "?";
}

std::map<NodeId, NodeId> assign_ancestors(const SimTree& t) {
    std::map<NodeId, NodeId> anc;
    for (NodeId n = 0; n < t.size(); ++n)
        if (t[n].status == NodeStatus::LabelRepeat || t[n].status == NodeStatus::Growth)
            anc.emplace(n, t[n].anc);
    return anc;
}

Extraction extract_candidates(const SimTree& t, const std::map<NodeId, NodeId>& anc) {
    std::set<NodeId> p;
    for (auto [n, a] : anc)
        if (!(t[n].label == t[a].label)) p.insert(a);

    std::vector<NodeId> roots;
    for (NodeId n : p) {
        bool minimal = true;
        for (NodeId up = t[n].parent; up != kNoNode && minimal; up = t[up].parent)
            minimal = !p.count(up);
        if (minimal) roots.push_back(n);
    }

    Extraction out;
    for (NodeId r : roots) {
        CandidateSubtree c{r};
        std::vector<std::pair<NodeId, std::uint32_t>> todo{{r, 1}};
        while (!todo.empty()) {
            auto [n, len] = todo.back();
            todo.pop_back();
            c.nodes.push_back(n);
            const SimNode& node = t[n];
            if (node.status == NodeStatus::SuccessfulLeaf && out.problem == ExtractionProblem::None) {
                out.problem = ExtractionProblem::SuccessfulLeafInside;
                out.problem_node = n;
            }
            if (auto it = anc.find(n); it != anc.end()) {
                c.boundary.push_back(n);
                c.anc.emplace(n, it->second);
                c.depth = std::max(c.depth, len);
                if (!t.is_ancestor_or_self(r, it->second) && out.problem == ExtractionProblem::None) {
                    out.problem = ExtractionProblem::AncestorOutside;
                    out.problem_node = n;
                }
                continue;
            }
            for (auto [a, child] : node.children) todo.push_back({child, len + 1});
        }
        std::sort(c.nodes.begin(), c.nodes.end());
        std::sort(c.boundary.begin(), c.boundary.end());
        out.candidates.push_back(std::move(c));
    }
    return out;
}

}  // namespace asub
