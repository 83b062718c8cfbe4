#include "boa/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "boa/csv.hpp"
#include "boa/experiments.hpp"
#include "boa/svg.hpp"

namespace boa {

namespace {

Problem make_problem(const std::string& name, std::int64_t n_flag) {
    if (name == "onemax") {
        const std::int64_t n = n_flag > 0 ? n_flag : 50;
        return Problem::onemax(static_cast<std::size_t>(n));
    }
    const std::size_t k = name == "trap4" ? 4 : 5;
    const std::int64_t n = n_flag > 0 ? n_flag : (k == 4 ? 40 : 50);
    if (n <= 0 || n % static_cast<std::int64_t>(k) != 0)
        throw CLI::ValidationError(
            "--n", "must be a positive multiple of " + std::to_string(k) +
                       " for " + name);
    return Problem::concatenated_trap(k, static_cast<std::size_t>(n) / k);
}

Selection parse_selection(const std::string& text) {
    if (text == "truncation") return Selection::truncation();
    const std::string prefix = "tournament:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string arg = text.substr(prefix.size());
        char* end = nullptr;
        const long size = std::strtol(arg.c_str(), &end, 10);
        if (end == nullptr || *end != '\0' || size < 1)
            throw CLI::ValidationError("--selection", "bad tournament size: " + arg);
        return Selection::tournament(static_cast<std::uint32_t>(size));
    }
    throw CLI::ValidationError("--selection",
                               "expected truncation or tournament:<size>");
}

std::vector<double> parse_grid(const std::string& text) {
    if (text == "paper") return paper_grid();
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos);
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size() || v < 0.0 || v >= 1.0)
                throw std::invalid_argument(item);
            grid.push_back(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--grid",
                                       "bad proportion '" + item +
                                           "' (need paper or comma list in [0,1))");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (grid.empty())
        throw CLI::ValidationError("--grid", "empty grid");
    return grid;
}

/// BOA_THREADS caps worker parallelism; 0 means sequential. Unset defaults
/// to the hardware thread count.
unsigned worker_threads() {
    const char* env = std::getenv("BOA_THREADS");
    if (env == nullptr) {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == nullptr || *end != '\0') return 1;
    return static_cast<unsigned>(v);
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& out_path) {
    if (out_path.empty())
        std::cout << csv_to_string(rows);
    else
        write_csv(rows, out_path);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Bayesian optimization algorithm with fitness inheritance"};
    app.require_subcommand(1);

    std::string problem_name = "onemax";
    std::int64_t n_flag = 0;
    double proportion = 0.0;
    std::string grid_text = "paper";
    std::uint32_t experiments = 10;
    std::uint64_t seed = 1;
    std::string metric_text = "bde";
    std::string selection_text = "truncation";
    std::string out_path;
    bool paper_scale = false;

    const auto add_common = [&](CLI::App* cmd, bool with_proportion, bool with_grid) {
        cmd->add_option("--problem", problem_name, "onemax, trap4 or trap5")
            ->check(CLI::IsMember({"onemax", "trap4", "trap5"}));
        cmd->add_option("--n", n_flag, "problem size in bits");
        if (with_proportion)
            cmd->add_option("--proportion", proportion,
                            "fitness inheritance proportion in [0,1)")
                ->check(CLI::Range(0.0, 0.9999999));
        if (with_grid) {
            cmd->add_option("--grid", grid_text,
                            "'paper' or a comma-separated proportion list");
            cmd->add_option("--experiments", experiments,
                            "independent experiments per grid point")
                ->check(CLI::PositiveNumber);
            cmd->add_flag("--paper", paper_scale,
                          "paper-scale protocol: full grid, 30 experiments");
        }
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--metric", metric_text, "bde or bic")
            ->check(CLI::IsMember({"bde", "bic"}));
        cmd->add_option("--selection", selection_text,
                        "truncation or tournament:<size>");
        cmd->add_option("--out", out_path, "output file (stdout when omitted)");
    };

    CLI::App* run_cmd = app.add_subcommand(
        "run", "one experiment: bisect the population size, report mean evaluations");
    add_common(run_cmd, true, false);

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "experiments across an inheritance-proportion grid, CSV output");
    add_common(sweep_cmd, false, true);

    CLI::App* plot_cmd =
        app.add_subcommand("plot", "render sweep CSVs as a two-panel SVG chart");
    std::vector<std::string> plot_inputs;
    plot_cmd->add_option("inputs", plot_inputs, "sweep CSV files")
        ->required()
        ->check(CLI::ExistingFile);
    plot_cmd->add_option("--out", out_path, "output SVG path");

    try {
        app.parse(argc, argv);

        if (run_cmd->parsed() || sweep_cmd->parsed()) {
            const Problem problem = make_problem(problem_name, n_flag);
            ExperimentOptions options;
            options.selection = parse_selection(selection_text);
            options.metric = metric_text == "bic" ? Metric::Bic : Metric::BdePenalized;

            std::vector<double> grid;
            std::uint32_t n_experiments;
            if (run_cmd->parsed()) {
                grid = {proportion};
                n_experiments = 1;
            } else {
                if (paper_scale) {
                    grid = paper_grid();
                    if (sweep_cmd->count("--experiments") == 0) experiments = 30;
                } else {
                    grid = parse_grid(grid_text);
                }
                n_experiments = experiments;
            }

            const std::vector<SweepRow> rows = sweep_proportions(
                problem, grid, n_experiments, seed, options, worker_threads());
            emit_csv(rows, out_path);
            return 0;
        }

        // plot
        std::vector<SweepRow> rows;
        for (const std::string& input : plot_inputs) {
            std::vector<SweepRow> part = read_csv(input);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::vector<std::string> order;
        std::map<std::string, std::vector<SweepRow>> by_problem;
        for (const SweepRow& row : rows) {
            if (by_problem.find(row.problem) == by_problem.end())
                order.push_back(row.problem);
            by_problem[row.problem].push_back(row);
        }
        std::vector<SpeedupSeries> series;
        for (const std::string& name : order)
            series.push_back({name, speedup(by_problem[name])});
        if (out_path.empty()) {
            std::cout << render_speedup_svg(series);
        } else {
            render_speedup_svg(series, out_path);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace boa
