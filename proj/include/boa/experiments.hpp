#ifndef BOA_EXPERIMENTS_HPP
#define BOA_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "boa/engine.hpp"
#include "boa/problems.hpp"

namespace boa {

struct ProbeOutcome {
    bool success = false;
    std::vector<std::uint64_t> run_evaluations;  // one per run, success only
};

struct ProbeRecord {
    std::uint64_t population;
    bool success;
};

struct BisectionResult {
    bool found = false;
    std::uint64_t min_population = 0;
    std::vector<std::uint64_t> run_evaluations;  // from the accepted probe
    std::vector<ProbeRecord> probes;
};

struct BisectionOptions {
    std::uint64_t start = 64;
    std::uint64_t cap = std::uint64_t{1} << 24;
    double bracket_ratio = 1.1;  // stop once high <= ratio * low
};

/// Minimum population size at which the probe succeeds: double from `start`
/// until success, then binary-search the (last failure, first success]
/// bracket until it is within bracket_ratio. The probe callback receives the
/// population size and a sequential probe index.
BisectionResult bisect_min_popsize(
    const std::function<ProbeOutcome(std::uint64_t population, std::uint32_t probe_index)>& probe,
    const BisectionOptions& options = {});

struct SweepRow {
    std::string problem;
    std::uint32_t n = 0;
    double proportion = 0.0;
    std::uint32_t experiment = 0;
    std::uint64_t seed = 0;
    std::uint64_t min_population = 0;
    double mean_actual_evaluations = 0.0;
};

struct ExperimentOptions {
    std::uint32_t runs_per_probe = 10;
    Selection selection;
    Metric metric = Metric::BdePenalized;
    double pseudo_count = 1.0;
    NetworkMode model_mode = NetworkMode::Tree;
    std::int32_t max_generations = -1;  // negative: 5n per run
    double success_threshold = 0.9;
    BisectionOptions bisection;
};

/// One experiment: bisect the minimum population size for (problem,
/// proportion), then report the mean actual-evaluation count of the runs at
/// that size. Every run draws a stream keyed by (experiment seed, probe,
/// run), so results are independent of execution schedule.
SweepRow run_experiment(const Problem& problem, double proportion,
                        std::uint64_t experiment_seed,
                        const ExperimentOptions& options = {});

/// The proportion grid used throughout: 0 to 0.9 by 0.1, 0.91 to 0.99 by
/// 0.01, 0.991 to 0.999 by 0.001 (28 points).
std::vector<double> paper_grid();

/// Cross product of grid x experiments, rows ordered (proportion,
/// experiment). Experiment seeds derive from (master_seed, experiment), so
/// the same experiment index is paired across proportions. `threads` caps
/// worker parallelism (0 or 1 = sequential); results do not depend on it.
std::vector<SweepRow> sweep_proportions(const Problem& problem,
                                        const std::vector<double>& grid,
                                        std::uint32_t experiments_per_point,
                                        std::uint64_t master_seed,
                                        const ExperimentOptions& options = {},
                                        unsigned threads = 0);

struct ProportionAggregate {
    double proportion = 0.0;
    double mean_evaluations = 0.0;
    double speedup = 1.0;
};

/// Per-proportion mean evaluations and the factor by which they shrink
/// relative to proportion 0. Requires a proportion-0 baseline.
std::vector<ProportionAggregate> speedup(const std::vector<SweepRow>& rows);

}  // namespace boa

#endif
