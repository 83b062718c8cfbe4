#ifndef BOA_ENGINE_HPP
#define BOA_ENGINE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "boa/bayesnet.hpp"
#include "boa/individual.hpp"
#include "boa/problems.hpp"
#include "boa/rng.hpp"

namespace boa {

struct Selection {
    enum class Kind { Truncation, Tournament };
    Kind kind = Kind::Truncation;
    double tau = 0.5;          // truncation: keep the top tau fraction
    std::uint32_t tournament_size = 2;

    static Selection truncation(double tau = 0.5) {
        return Selection{Kind::Truncation, tau, 2};
    }
    static Selection tournament(std::uint32_t size) {
        return Selection{Kind::Tournament, 0.5, size};
    }
};

struct BoaConfig {
    std::uint32_t population_size = 100;
    double inheritance_proportion = 0.0;  // in [0, 1)
    Selection selection;
    Metric metric = Metric::BdePenalized;
    double pseudo_count = 1.0;
    NetworkMode model_mode = NetworkMode::Tree;
    std::int32_t max_generations = -1;  // negative: default to 5n
    double success_threshold = 0.9;
};

struct RunStats {
    std::uint64_t actual_evaluations = 0;
    std::uint32_t generations_run = 0;
    bool succeeded = false;
    double best_true_fitness = 0.0;
};

struct GenerationStats {
    std::uint64_t actual_evaluations = 0;  // added by this step
};

/// Parent selection. Truncation keeps the top ceil(tau*N) by assigned
/// fitness (ties to the lower index); tournament draws size members
/// uniformly per slot and keeps the best.
Population select(const Population& pop, const BoaConfig& cfg, RandomStream& rng);

/// Choose exactly round(p * offspring_count) offspring, uniformly at random,
/// to receive estimated fitness; the rest are evaluated for real. Clamped so
/// at least one offspring is always actually evaluated. Returns index sets
/// (estimate, evaluate), each in ascending order.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
inheritance_partition(std::uint32_t offspring_count, double proportion,
                      RandomStream& rng);

/// One full generation: select parents, learn the model from all of them,
/// rebuild fitness statistics from the actually-evaluated parents, sample N
/// offspring, actually evaluate the evaluation share (recording each), then
/// estimate the rest. Offspring fully replace the population.
std::pair<Population, GenerationStats> generation_step(const Population& pop,
                                                       const BoaConfig& cfg,
                                                       const Problem& problem,
                                                       RandomStream& rng);

/// Full run: random initial population (always actually evaluated), then
/// generation steps until the best-by-assigned-fitness member reaches the
/// success threshold or the generation cap is hit. best_true_fitness is an
/// uncounted instrumentation evaluation of the final best member.
RunStats run_boa(const BoaConfig& cfg, const Problem& problem, RandomStream& rng);

}  // namespace boa

#endif
