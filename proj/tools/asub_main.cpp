// asub: command-line front end for the asynchronous subtyping checker.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "asub/bench.hpp"
#include "asub/checker.hpp"
#include "asub/oracle.hpp"
#include "asub/parser_io.hpp"

namespace fs = std::filesystem;
using namespace asub;

namespace {

constexpr int kInputError = 3;

std::pair<Machine, Machine> load_pair(const std::vector<std::string>& files) {
    if (files.size() == 1) {
        auto ms = load_machines(files[0]);
        if (ms.size() != 2)
            throw std::runtime_error(files[0] + ": expected two machine blocks, found " + std::to_string(ms.size()));
        return {std::move(ms[0]), std::move(ms[1])};
    }
    auto one = [](const std::string& f) {
        auto ms = load_machines(f);
        if (ms.size() != 1)
            throw std::runtime_error(f + ": expected one machine block, found " + std::to_string(ms.size()));
        return std::move(ms[0]);
    };
    return {one(files.at(0)), one(files.at(1))};
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

// DOT files for every run of the verdict; returns the paths written.
std::vector<fs::path> write_viz(const Verdict& v, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    auto put = [&](const std::string& name, const std::string& text) {
        written.push_back(dir / name);
        write_file(written.back(), text);
    };
    for (const DirectionReport& r : v.runs) {
        const std::string pre = r.dual ? "dual" : "direct";
        put(pre + "_tree.dot", tree_to_dot(r));
        put(pre + "_candidates.dot", candidates_to_dot(r));
        Simulator sim = r.simulator();
        for (std::size_t i = 0; i < r.extraction.candidates.size(); ++i) {
            const auto& c = r.extraction.candidates[i];
            const std::string tag = pre + "_candidate" + std::to_string(i);
            if (auto g = build_sup_system(sim, r.tree, c)) put(tag + "_sup.dot", system_to_dot(*g, tag + "_sup"));
            put(tag + "_sub.dot", system_to_dot(build_sub_system(r.tree, c), tag + "_sub"));
        }
    }
    return written;
}

struct LimitsFlags {
    std::size_t max_nodes = BuildOptions{}.max_nodes;
    std::uint32_t max_depth = BuildOptions{}.max_depth;
    std::string direction = "both";
    std::string growth = "sending";

    void attach(CLI::App* app) {
        app->add_option("--max-nodes", max_nodes, "Node budget per direction")->check(CLI::PositiveNumber);
        app->add_option("--max-depth", max_depth, "Depth budget per direction")->check(CLI::PositiveNumber);
        app->add_option("--direction", direction, "direct, dual, or both (dual only if direct is unknown)")
            ->check(CLI::IsMember({"direct", "dual", "both"}));
        app->add_option("--growth-scope", growth, "Nodes tested by the growth check: sending or all")
            ->check(CLI::IsMember({"sending", "all"}));
    }

    CheckOptions options() const {
        CheckOptions o;
        o.build.max_nodes = max_nodes;
        o.build.max_depth = max_depth;
        o.build.growth_scope = growth == "all" ? GrowthScope::AllStates : GrowthScope::SendingStates;
        o.mode = direction == "direct" ? DirectionMode::Direct
                 : direction == "dual" ? DirectionMode::Dual
                                       : DirectionMode::Both;
        return o;
    }
};

int exit_code(VerdictValue v) {
    switch (v) {
        case VerdictValue::True: return 0;
        case VerdictValue::False: return 1;
        case VerdictValue::Unknown: return 2;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sound (incomplete) checker for asynchronous subtyping of communicating machines"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    LimitsFlags limits;
    std::string viz_dir;
    auto* check_cmd = app.add_subcommand("check", "Decide SUB <= SUPER: prints true, false or unknown");
    check_cmd->add_option("files", files, "SUB SUPER, or one file holding both machines")
        ->required()
        ->expected(1, 2)
        ->check(CLI::ExistingFile);
    limits.attach(check_cmd);
    check_cmd->add_option("--viz", viz_dir, "Also write DOT files to this directory");

    auto* viz_cmd = app.add_subcommand("viz", "Write DOT files for the tree, candidates and equation systems");
    viz_cmd->add_option("files", files, "SUB SUPER, or one file holding both machines")
        ->required()
        ->expected(1, 2)
        ->check(CLI::ExistingFile);
    viz_cmd->add_option("--out", viz_dir, "Output directory")->required();
    limits.attach(viz_cmd);

    unsigned gen_n = 1, gen_m = 1;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen-bench", "Write the parametric benchmark pair");
    gen_cmd->add_option("--n", gen_n, "Number of anticipated sends minus one")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--m", gen_m, "Number of branches minus one")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", gen_out, "Output directory")->required();

    std::string grid = "n=1..8,m=1..8", csv, metrics;
    unsigned reps = 5;
    auto* bench_cmd = app.add_subcommand("bench", "Time the checker on a grid of benchmark pairs");
    bench_cmd->add_option("--grid", grid, "Grid, e.g. n=1..8,m=1..8")->capture_default_str();
    bench_cmd->add_option("--reps", reps, "Repetitions per cell")->capture_default_str()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", csv, "Write the CSV here instead of stdout");
    bench_cmd->add_option("--metrics", metrics, "Also write tree-shape metrics as CSV");

    std::size_t oracle_k = 6, oracle_depth = 40;
    auto* oracle_cmd = app.add_subcommand("oracle", "Bounded brute-force checks (debugging aid)");
    oracle_cmd->group("");  // hidden from --help
    oracle_cmd->add_option("files", files, "SUB SUPER, or one file holding both machines")
        ->required()
        ->expected(1, 2)
        ->check(CLI::ExistingFile);
    oracle_cmd->add_option("--k", oracle_k, "Queue bound")->capture_default_str();
    oracle_cmd->add_option("--depth", oracle_depth, "Step bound for the simulation oracle")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*check_cmd) {
            auto [sub, sup] = load_pair(files);
            const Verdict v = check(sub, sup, limits.options());
            std::cout << to_string(v.value) << "\n" << v.evidence();
            if (!viz_dir.empty())
                for (const auto& p : write_viz(v, viz_dir)) std::cerr << "wrote " << p.string() << "\n";
            return exit_code(v.value);
        }
        if (*viz_cmd) {
            auto [sub, sup] = load_pair(files);
            const Verdict v = check(sub, sup, limits.options());
            for (const auto& p : write_viz(v, viz_dir)) std::cout << p.string() << "\n";
            return 0;
        }
        if (*gen_cmd) {
            auto [sub, sup] = gen_bench(gen_n, gen_m);
            fs::create_directories(gen_out);
            const std::string stem = "bench_n" + std::to_string(gen_n) + "_m" + std::to_string(gen_m);
            const fs::path a = fs::path(gen_out) / (stem + "_sub.fsm");
            const fs::path b = fs::path(gen_out) / (stem + "_super.fsm");
            write_file(a, serialize(sub));
            write_file(b, serialize(sup));
            std::cout << a.string() << "\n" << b.string() << "\n";
            return 0;
        }
        if (*bench_cmd) {
            const auto rows = run_suite(parse_grid(grid), reps);
            if (csv.empty())
                std::cout << to_csv(rows);
            else
                write_file(csv, to_csv(rows));
            if (!metrics.empty()) {
                std::string m = "n,m,verdict,nodes,sim_depth,candidates,candidate_depth,max_context_depth\n";
                for (const auto& r : rows)
                    m += std::to_string(r.n) + "," + std::to_string(r.m) + "," + to_string(r.verdict) + "," +
                         std::to_string(r.metrics.nodes) + "," + std::to_string(r.metrics.sim_depth) + "," +
                         std::to_string(r.metrics.candidates) + "," + std::to_string(r.metrics.candidate_depth) +
                         "," + std::to_string(r.metrics.max_context_depth) + "\n";
                write_file(metrics, m);
            }
            return 0;
        }
        if (*oracle_cmd) {
            auto [sub, sup] = load_pair(files);
            const FifoResult f = bounded_fifo_safe(sub, dual(sup), oracle_k, 100000);
            std::cout << "fifo: " << to_string(f.kind) << " (" << f.explored << " configurations)\n";
            for (const auto& m : f.trace) std::cout << "  " << m << "\n";
            const SimFailResult s = bounded_sim_fail(sub, sup, static_cast<std::uint32_t>(oracle_depth));
            if (s.failure_found) {
                std::cout << "simulation: failure at depth " << s.path.size() << " (" << to_string(s.reason) << ")\n ";
                for (const auto& a : s.path) std::cout << " " << to_string(a);
                std::cout << "\n";
            } else {
                std::cout << "simulation: " << (s.budget_exhausted ? "budget exhausted" : "no failure") << " within depth "
                          << oracle_depth << "\n";
            }
            return 0;
        }
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
    } catch (const ValidationError& e) {
        std::cerr << "invalid machine (" << to_string(e.kind) << "): " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kInputError;
}
