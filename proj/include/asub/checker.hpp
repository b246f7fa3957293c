#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asub/machine.hpp"
#include "asub/simulation.hpp"
#include "asub/subtree.hpp"
#include "asub/witness.hpp"

namespace asub {

enum class VerdictValue : std::uint8_t { True, False, Unknown };
enum class DirectionMode : std::uint8_t { Direct, Dual, Both };
enum class UnknownCause : std::uint8_t { LimitHit, SuccessfulLeafInside, AncestorOutside, NotWitness };

const char* to_string(VerdictValue v);
const char* to_string(UnknownCause c);

// Outcome of the procedure on one ordered pair of machines. `dual` marks the
// (dual(M2), dual(M1)) run. The report owns everything its tree refers to.
struct DirectionReport {
    bool dual = false;
    std::shared_ptr<const Machine> sub;
    std::shared_ptr<const Machine> sup;
    std::shared_ptr<TreeStore> store;
    SimTree tree;
    std::map<NodeId, NodeId> anc;
    Extraction extraction;
    std::vector<WitnessReport> witness;  // one per candidate, in candidate order
    VerdictValue value = VerdictValue::Unknown;
    std::optional<UnknownCause> cause;
    double millis = 0;

    // Fresh simulator over this report's machines and store.
    Simulator simulator() const { return Simulator(*sub, *sup, *store); }
    std::string label(NodeId n, std::size_t max_chars = 160) const;
    std::string summary() const;
};

struct CheckOptions {
    BuildOptions build;
    DirectionMode mode = DirectionMode::Both;
};

struct Verdict {
    VerdictValue value = VerdictValue::Unknown;
    std::vector<DirectionReport> runs;  // in execution order
    // Index into runs of the run that decided the verdict, if any.
    std::optional<std::size_t> decided_by;
    std::string evidence() const;
};

DirectionReport check_direction(const Machine& sub, const Machine& sup, const BuildOptions& opts = {},
                                bool dual = false);

// Direct run first; with mode Both the dual run follows an unknown result.
Verdict check(const Machine& m1, const Machine& m2, const CheckOptions& opts = {});

}  // namespace asub
