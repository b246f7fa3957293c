#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include "asub/simulation.hpp"
#include "asub/subtree.hpp"

namespace asub {

using VarId = std::uint32_t;
using ExprId = std::uint32_t;

enum class ExprKind : std::uint8_t { Var, InputChoice, SilentChoice };

struct Expr {
    ExprKind kind;
    VarId var = 0;                                    // Var
    std::vector<std::pair<Symbol, ExprId>> branches;  // InputChoice, sorted by label
    std::vector<ExprId> options;                      // SilentChoice, sorted, distinct
    friend bool operator==(const Expr&, const Expr&) = default;
};

// System of equations X = E over input-tree expressions. Expressions are
// hash-consed within the system.
class EquationSystem {
public:
    VarId add_var(std::string name);
    void define(VarId x, ExprId e);

    ExprId var(VarId x);
    ExprId input_choice(std::vector<std::pair<Symbol, ExprId>> branches);
    ExprId silent_choice(std::vector<ExprId> options);

    const Expr& expr(ExprId e) const { return exprs_.at(e); }
    std::size_t var_count() const { return names_.size(); }
    const std::string& name(VarId x) const { return names_.at(x); }
    std::optional<VarId> find(const std::string& name) const;
    std::optional<ExprId> definition(VarId x) const { return defs_.at(x); }

    VarId start = 0;

    // "X = E" lines, one per defined variable in id order.
    std::string to_string() const;
    std::string expr_string(ExprId e) const;

private:
    ExprId intern(Expr e);
    std::vector<std::string> names_;
    std::vector<std::optional<ExprId>> defs_;
    std::vector<Expr> exprs_;
    std::map<std::tuple<ExprKind, VarId, std::vector<std::pair<Symbol, ExprId>>, std::vector<ExprId>>,
             ExprId>
        index_;
};

enum class WitnessFailure : std::uint8_t {
    NoReceiveOnAncPath,
    AccTreeUndefined,
    LeafSetEscapes,
    MinAccDecreases,
    Incompatible,
};

const char* to_string(WitnessFailure f);

struct WitnessReport {
    bool ok = true;
    std::optional<WitnessFailure> failure;
    NodeId at = kNoNode;       // node where the failing check was made
    NodeId other = kNoNode;    // second node involved, if any
    std::string detail;
};

// Structural conditions on a candidate subtree: receives on every
// ancestor-to-boundary path, leaf sets kept under accumulation, and the
// minimal accumulation never shrinking at the boundary.
WitnessReport check_conditions(Simulator& sim, const SimTree& t, const CandidateSubtree& c);

// Equation system describing the supertype input trees reachable through the
// candidate, with one variable per (supertype state, interior node) pair.
// Variables unreachable from the start are left out.
std::optional<EquationSystem> build_sup_system(Simulator& sim, const SimTree& t,
                                               const CandidateSubtree& c, WitnessReport* why = nullptr);

// Equation system describing the subtype inputs, one variable per interior
// node.
EquationSystem build_sub_system(const SimTree& t, const CandidateSubtree& c);

// Coinductive compatibility of two systems, starting from their start
// variables. On failure, *why receives the offending pair.
bool compatible(const EquationSystem& left, const EquationSystem& right, std::string* why = nullptr);

WitnessReport is_witness(Simulator& sim, const SimTree& t, const CandidateSubtree& c);

}  // namespace asub
