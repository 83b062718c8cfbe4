#include "boa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

#include "boa/rng.hpp"

namespace boa {

BisectionResult bisect_min_popsize(
    const std::function<ProbeOutcome(std::uint64_t, std::uint32_t)>& probe,
    const BisectionOptions& options) {
    BisectionResult result;
    std::uint32_t probe_index = 0;

    const auto run_probe = [&](std::uint64_t population) {
        ProbeOutcome outcome = probe(population, probe_index++);
        result.probes.push_back({population, outcome.success});
        return outcome;
    };

    // Doubling phase.
    std::uint64_t low = 0;  // 0: no failing probe yet
    std::uint64_t high = options.start;
    for (;;) {
        ProbeOutcome outcome = run_probe(high);
        if (outcome.success) {
            result.found = true;
            result.min_population = high;
            result.run_evaluations = std::move(outcome.run_evaluations);
            break;
        }
        low = high;
        if (high >= options.cap) return result;  // diagnostic failure
        high = std::min(high * 2, options.cap);
    }

    // Binary search inside (low, high].
    while (low > 0 &&
           static_cast<double>(high) > options.bracket_ratio * static_cast<double>(low)) {
        const std::uint64_t mid = low + (high - low) / 2;
        if (mid == low || mid == high) break;
        ProbeOutcome outcome = run_probe(mid);
        if (outcome.success) {
            high = mid;
            result.min_population = mid;
            result.run_evaluations = std::move(outcome.run_evaluations);
        } else {
            low = mid;
        }
    }
    return result;
}

SweepRow run_experiment(const Problem& problem, double proportion,
                        std::uint64_t experiment_seed,
                        const ExperimentOptions& options) {
    if (proportion < 0.0 || proportion >= 1.0)
        throw std::invalid_argument("run_experiment: proportion must be in [0,1)");
    if (options.runs_per_probe < 1)
        throw std::invalid_argument("run_experiment: runs_per_probe must be >= 1");

    BoaConfig cfg;
    cfg.inheritance_proportion = proportion;
    cfg.selection = options.selection;
    cfg.metric = options.metric;
    cfg.pseudo_count = options.pseudo_count;
    cfg.model_mode = options.model_mode;
    cfg.max_generations = options.max_generations;
    cfg.success_threshold = options.success_threshold;

    const auto probe = [&](std::uint64_t population, std::uint32_t probe_index) {
        ProbeOutcome outcome;
        outcome.run_evaluations.reserve(options.runs_per_probe);
        BoaConfig probe_cfg = cfg;
        probe_cfg.population_size = static_cast<std::uint32_t>(population);
        for (std::uint32_t run = 0; run < options.runs_per_probe; ++run) {
            RandomStream rng(experiment_seed,
                             std::uint64_t{probe_index} * options.runs_per_probe + run);
            const RunStats stats = run_boa(probe_cfg, problem, rng);
            if (!stats.succeeded) return outcome;  // success requires all runs
            outcome.run_evaluations.push_back(stats.actual_evaluations);
        }
        outcome.success = true;
        return outcome;
    };

    const BisectionResult bisection = bisect_min_popsize(probe, options.bisection);
    if (!bisection.found)
        throw std::runtime_error("run_experiment: bisection hit the population cap without success");

    double total = 0.0;
    for (std::uint64_t evals : bisection.run_evaluations)
        total += static_cast<double>(evals);

    SweepRow row;
    row.problem = problem.name();
    row.n = static_cast<std::uint32_t>(problem.n);
    row.proportion = proportion;
    row.seed = experiment_seed;
    row.min_population = bisection.min_population;
    row.mean_actual_evaluations =
        total / static_cast<double>(bisection.run_evaluations.size());
    return row;
}

std::vector<double> paper_grid() {
    std::vector<double> grid;
    grid.reserve(28);
    for (int i = 0; i <= 9; ++i) grid.push_back(static_cast<double>(i * 100) / 1000.0);
    for (int i = 91; i <= 99; ++i) grid.push_back(static_cast<double>(i * 10) / 1000.0);
    for (int i = 991; i <= 999; ++i) grid.push_back(static_cast<double>(i) / 1000.0);
    return grid;
}

std::vector<SweepRow> sweep_proportions(const Problem& problem,
                                        const std::vector<double>& grid,
                                        std::uint32_t experiments_per_point,
                                        std::uint64_t master_seed,
                                        const ExperimentOptions& options,
                                        unsigned threads) {
    for (double p : grid)
        if (p < 0.0 || p >= 1.0)
            throw std::invalid_argument("sweep_proportions: grid values must be in [0,1)");

    struct Task {
        std::size_t row;
        double proportion;
        std::uint32_t experiment;
    };
    std::vector<Task> tasks;
    tasks.reserve(grid.size() * experiments_per_point);
    for (std::size_t g = 0; g < grid.size(); ++g)
        for (std::uint32_t e = 0; e < experiments_per_point; ++e)
            tasks.push_back({tasks.size(), grid[g], e});

    std::vector<SweepRow> rows(tasks.size());
    const auto run_task = [&](const Task& task) {
        // Seeds keyed by experiment index only, so equal indices pair up
        // across proportions.
        const std::uint64_t seed = mix_seed(master_seed, task.experiment);
        SweepRow row = run_experiment(problem, task.proportion, seed, options);
        row.experiment = task.experiment;
        rows[task.row] = std::move(row);
    };

    if (threads <= 1) {
        for (const Task& task : tasks) run_task(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const unsigned workers =
            std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= tasks.size()) return;
                    run_task(tasks[t]);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

std::vector<ProportionAggregate> speedup(const std::vector<SweepRow>& rows) {
    std::map<double, std::pair<double, std::uint64_t>> sums;
    for (const SweepRow& row : rows) {
        auto& [sum, count] = sums[row.proportion];
        sum += row.mean_actual_evaluations;
        ++count;
    }
    const auto baseline = sums.find(0.0);
    if (baseline == sums.end())
        throw std::invalid_argument("speedup: no proportion-0 baseline present");
    const double base_mean =
        baseline->second.first / static_cast<double>(baseline->second.second);

    std::vector<ProportionAggregate> out;
    out.reserve(sums.size());
    for (const auto& [proportion, sc] : sums) {
        ProportionAggregate agg;
        agg.proportion = proportion;
        agg.mean_evaluations = sc.first / static_cast<double>(sc.second);
        agg.speedup = proportion == 0.0 ? 1.0 : base_mean / agg.mean_evaluations;
        out.push_back(agg);
    }
    return out;
}

}  // namespace boa
