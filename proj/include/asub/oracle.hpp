#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "asub/machine.hpp"
#include "asub/simulation.hpp"

namespace asub {

// Brute-force cross-checks used by the tests and the debug `oracle` command.

struct FifoResult {
    enum class Kind { NoViolation, Deadlock, Orphan };
    Kind kind = Kind::NoViolation;
    std::vector<std::string> trace;  // moves from the initial configuration
    std::size_t explored = 0;
};

const char* to_string(FifoResult::Kind k);

// Explores A | B over two FIFO queues holding at most k messages each, up to
// D steps. A send blocked only by the bound is not a deadlock; an orphan is
// a final/final configuration with a non-empty queue.
FifoResult bounded_fifo_safe(const Machine& a, const Machine& b, std::size_t k, std::size_t d);

struct SimFailResult {
    bool failure_found = false;
    std::vector<Action> path;  // from the start label to the failing node
    FailureReason reason{};
    bool budget_exhausted = false;
    std::size_t expanded = 0;
};

// Expands the one-step simulation relation to the given depth without any
// termination check.
SimFailResult bounded_sim_fail(const Machine& sub, const Machine& sup, std::uint32_t depth,
                               std::size_t budget = 2'000'000);
SimFailResult bounded_sim_fail_from(Simulator& sim, const SimLabel& start, std::uint32_t depth,
                                    std::size_t budget = 2'000'000);

// Valid machine with 1..max_states states over messages a, b, c, ...
Machine random_machine(std::mt19937_64& rng, unsigned max_states, unsigned max_messages,
                       const std::string& name = "r");

// A machine derived from m by dropping some sends and adding some receives;
// such pairs are often, not always, related.
Machine mutate(std::mt19937_64& rng, const Machine& m, unsigned max_messages);

}  // namespace asub
