#pragma once

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "asub/input_tree.hpp"
#include "asub/symbol.hpp"

namespace asub {

// Receive sorts before send.
enum class Direction : std::uint8_t { Receive, Send };

struct Action {
    Direction dir;
    Symbol msg;

    static Action send(std::string_view m) { return {Direction::Send, Symbol(m)}; }
    static Action recv(std::string_view m) { return {Direction::Receive, Symbol(m)}; }

    friend bool operator==(const Action&, const Action&) = default;
    friend std::strong_ordering operator<=>(const Action&, const Action&) = default;
};

std::string to_string(const Action& a);  // "!m" or "?m"

std::vector<Symbol> sends(std::span<const Action> w);
std::vector<Symbol> receives(std::span<const Action> w);

enum class StateKind : std::uint8_t { Final, Sending, Receiving };

struct Transition {
    StateId from;
    Action action;
    StateId to;
};

// Unvalidated machine as written in a file or assembled by hand.
struct MachineDescription {
    struct Edge {
        std::string from;
        Action action;
        std::string to;
    };
    std::string name;
    std::string initial;
    std::vector<Edge> edges;
    // When non-empty, every state used by an edge or as initial must be listed.
    std::vector<std::string> declared_states;
};

class ValidationError : public std::runtime_error {
public:
    enum class Kind { MixedState, NondeterministicChoice, UnknownState, EmptyMachine };
    ValidationError(Kind k, const std::string& what);
    Kind kind;
};

const char* to_string(ValidationError::Kind k);

// Deterministic communicating machine with no mixed states. States are
// numbered in lexicographic order of their names.
class Machine {
public:
    // Throws ValidationError.
    static Machine validate(const MachineDescription& d);

    const std::string& name() const { return name_; }
    std::size_t state_count() const { return states_.size(); }
    const std::string& state_name(StateId q) const { return states_.at(q).name; }
    std::optional<StateId> find_state(std::string_view name) const;
    StateId initial() const { return initial_; }

    // Outgoing transitions of q, sorted by action.
    std::span<const Transition> transitions(StateId q) const { return states_.at(q).out; }
    std::optional<StateId> successor(StateId q, const Action& a) const;
    StateKind kind(StateId q) const;
    bool is_final(StateId q) const { return kind(q) == StateKind::Final; }

    std::vector<Symbol> in_set(StateId q) const;
    std::vector<Symbol> out_set(StateId q) const;

    // True iff some state reachable from q through dir-actions lies on a
    // non-empty dir-cycle.
    bool loop_detect(StateId q, Direction dir) const;

    // All messages appearing on transitions, sorted.
    std::vector<Symbol> alphabet() const;
    std::size_t transition_count() const;

    MachineDescription describe() const;

private:
    struct State {
        std::string name;
        std::vector<Transition> out;
        bool recv_loop = false;
        bool send_loop = false;
    };
    std::string name_;
    std::vector<State> states_;
    StateId initial_ = 0;
};

// Swaps sends and receives.
Machine dual(const Machine& m);

// Input tree of q: the tree of receive paths from q up to the first
// non-receiving states. Undefined if q can reach a receive cycle through
// receives.
std::optional<TreeRef> in_tree(const Machine& m, StateId q, TreeStore& store);

}  // namespace asub
