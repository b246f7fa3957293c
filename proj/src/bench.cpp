#include "asub/bench.hpp"

#include <chrono>
#include <cmath>
#include <regex>
#include <sstream>

namespace asub {

std::pair<Machine, Machine> gen_bench(unsigned n, unsigned m) {
    if (n == 0 || m == 0) throw std::invalid_argument("bench parameters must be positive");
    MachineDescription sub{"bench_sub", "s0"};
    for (unsigned i = 0; i <= n; ++i)
        sub.edges.push_back({"s" + std::to_string(i), Action::send("a" + std::to_string(i)),
                             "s" + std::to_string(i + 1)});
    for (unsigned j = 0; j <= m; ++j)
        sub.edges.push_back({"s" + std::to_string(n + 1), Action::recv("b" + std::to_string(j)), "s0"});

    MachineDescription sup{"bench_super", "t0"};
    for (unsigned i = 0; i <= n; ++i) sup.edges.push_back({"t0", Action::send("a" + std::to_string(i)), "t1"});
    for (unsigned j = 0; j <= m; ++j) sup.edges.push_back({"t1", Action::recv("b" + std::to_string(j)), "t0"});
    return {Machine::validate(sub), Machine::validate(sup)};
}

BenchMetrics measure(const Verdict& v) {
    BenchMetrics out;
    for (const auto& r : v.runs) out.nodes += r.tree.size();
    if (v.runs.empty()) return out;
    const DirectionReport& r = v.runs.at(v.decided_by.value_or(0));
    out.sim_depth = r.tree.max_depth();
    out.candidates = r.extraction.candidates.size();
    for (const auto& c : r.extraction.candidates) out.candidate_depth = std::max(out.candidate_depth, c.depth);
    for (const SimNode& n : r.tree.nodes)
        out.max_context_depth = std::max(out.max_context_depth, height(*r.store, n.label.sup));
    return out;
}

std::vector<std::pair<unsigned, unsigned>> parse_grid(const std::string& spec) {
    static const std::regex re(R"(^\s*n\s*=\s*(\d+)(?:\.\.(\d+))?\s*,\s*m\s*=\s*(\d+)(?:\.\.(\d+))?\s*$)");
    std::smatch mt;
    if (!std::regex_match(spec, mt, re)) throw std::invalid_argument("grid must look like n=1..8,m=1..8");
    auto num = [&](int i, int fallback) { return mt[i].matched ? std::stoul(mt[i].str()) : std::stoul(mt[fallback].str()); };
    const unsigned n0 = num(1, 1), n1 = num(2, 1), m0 = num(3, 3), m1 = num(4, 3);
    if (n0 == 0 || m0 == 0 || n1 < n0 || m1 < m0) throw std::invalid_argument("grid ranges must be positive and ascending");
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned n = n0; n <= n1; ++n)
        for (unsigned m = m0; m <= m1; ++m) out.push_back({n, m});
    return out;
}

std::vector<BenchRow> run_suite(const std::vector<std::pair<unsigned, unsigned>>& grid, unsigned reps,
                                const CheckOptions& opts) {
    std::vector<BenchRow> rows;
    for (auto [n, m] : grid) {
        auto [sub, sup] = gen_bench(n, m);
        BenchRow row{n, m};
        std::vector<double> times;
        for (unsigned r = 0; r < std::max(1u, reps); ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            Verdict v = check(sub, sup, opts);
            times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
            row.verdict = v.value;
            row.metrics = measure(v);
            row.nodes_peak = std::max(row.nodes_peak, row.metrics.nodes);
        }
        double sum = 0;
        for (double t : times) sum += t;
        row.ms_mean = sum / times.size();
        double var = 0;
        for (double t : times) var += (t - row.ms_mean) * (t - row.ms_mean);
        row.ms_stddev = times.size() > 1 ? std::sqrt(var / (times.size() - 1)) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "n,m,verdict,ms_mean,ms_stddev,nodes_peak\n";
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const auto& r : rows)
        out << r.n << ',' << r.m << ',' << to_string(r.verdict) << ',' << r.ms_mean << ',' << r.ms_stddev << ','
            << r.nodes_peak << '\n';
    return out.str();
}

}  // namespace asub
