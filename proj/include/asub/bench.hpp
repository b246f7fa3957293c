#pragma once

#include <string>
#include <utility>
#include <vector>

#include "asub/checker.hpp"

namespace asub {

// Parametric pair: the subtype sends a0..an then receives one of b0..bm
// and loops; the supertype sends one ai, receives one bj and loops.
std::pair<Machine, Machine> gen_bench(unsigned n, unsigned m);

struct BenchMetrics {
    std::size_t nodes = 0;               // simulation-tree nodes over all runs
    std::uint32_t sim_depth = 0;         // deepest node, in edges, of the deciding run
    std::size_t candidates = 0;          // candidates of the deciding run
    std::uint32_t candidate_depth = 0;   // longest root-to-boundary path, in nodes
    std::uint32_t max_context_depth = 0; // tallest input tree in any label
};

BenchMetrics measure(const Verdict& v);

struct BenchRow {
    unsigned n = 0;
    unsigned m = 0;
    VerdictValue verdict = VerdictValue::Unknown;
    double ms_mean = 0;
    double ms_stddev = 0;
    std::size_t nodes_peak = 0;
    BenchMetrics metrics;
};

// "n=1..8,m=1..8" (single values allowed) -> cells in row-major order.
// Throws std::invalid_argument on malformed input.
std::vector<std::pair<unsigned, unsigned>> parse_grid(const std::string& spec);

std::vector<BenchRow> run_suite(const std::vector<std::pair<unsigned, unsigned>>& grid, unsigned reps,
                                const CheckOptions& opts = {});

// Header n,m,verdict,ms_mean,ms_stddev,nodes_peak
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace asub
