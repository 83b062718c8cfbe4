#include "boa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "boa/fitness_model.hpp"

namespace boa {

namespace {

void validate(const BoaConfig& cfg) {
    if (cfg.population_size < 2)
        throw std::invalid_argument("BoaConfig: population_size must be >= 2");
    if (cfg.inheritance_proportion < 0.0 || cfg.inheritance_proportion >= 1.0)
        throw std::invalid_argument("BoaConfig: inheritance_proportion must be in [0,1)");
    if (!(cfg.success_threshold > 0.0) || cfg.success_threshold > 1.0)
        throw std::invalid_argument("BoaConfig: success_threshold must be in (0,1]");
    if (cfg.selection.kind == Selection::Kind::Truncation &&
        (!(cfg.selection.tau > 0.0) || cfg.selection.tau > 1.0))
        throw std::invalid_argument("BoaConfig: truncation tau must be in (0,1]");
    if (cfg.selection.kind == Selection::Kind::Tournament &&
        cfg.selection.tournament_size < 1)
        throw std::invalid_argument("BoaConfig: tournament size must be >= 1");
}

void require_evaluated(const Population& pop) {
    for (const Individual& m : pop.members)
        if (m.provenance == Provenance::Unevaluated)
            throw std::logic_error("select: unevaluated member in population");
}

}  // namespace

Population select(const Population& pop, const BoaConfig& cfg, RandomStream& rng) {
    require_evaluated(pop);
    const std::size_t N = pop.size();
    Population parents;
    parents.generation = pop.generation;

    if (cfg.selection.kind == Selection::Kind::Truncation) {
        const std::size_t keep = static_cast<std::size_t>(
            std::ceil(cfg.selection.tau * static_cast<double>(N)));
        std::vector<std::uint32_t> order(N);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) {
                             return pop.members[a].fitness > pop.members[b].fitness;
                         });
        parents.members.reserve(keep);
        for (std::size_t i = 0; i < keep; ++i)
            parents.members.push_back(pop.members[order[i]]);
    } else {
        parents.members.reserve(N);
        for (std::size_t slot = 0; slot < N; ++slot) {
            std::uint64_t winner = rng.next_below(N);
            for (std::uint32_t t = 1; t < cfg.selection.tournament_size; ++t) {
                const std::uint64_t challenger = rng.next_below(N);
                if (pop.members[challenger].fitness > pop.members[winner].fitness ||
                    (pop.members[challenger].fitness == pop.members[winner].fitness &&
                     challenger < winner))
                    winner = challenger;
            }
            parents.members.push_back(pop.members[winner]);
        }
    }
    return parents;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
inheritance_partition(std::uint32_t offspring_count, double proportion,
                      RandomStream& rng) {
    if (proportion < 0.0 || proportion >= 1.0)
        throw std::invalid_argument("inheritance_partition: proportion must be in [0,1)");
    std::uint32_t k = static_cast<std::uint32_t>(
        std::llround(proportion * static_cast<double>(offspring_count)));
    // At least one actual evaluation per generation.
    if (k >= offspring_count && offspring_count > 0) k = offspring_count - 1;

    std::vector<std::uint32_t> idx(offspring_count);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::uint32_t t = 0; t < k; ++t) {
        const std::uint64_t j = t + rng.next_below(offspring_count - t);
        std::swap(idx[t], idx[j]);
    }
    std::vector<std::uint32_t> estimate(idx.begin(), idx.begin() + k);
    std::vector<std::uint32_t> evaluate(idx.begin() + k, idx.end());
    std::sort(estimate.begin(), estimate.end());
    std::sort(evaluate.begin(), evaluate.end());
    return {std::move(estimate), std::move(evaluate)};
}

std::pair<Population, GenerationStats> generation_step(const Population& pop,
                                                       const BoaConfig& cfg,
                                                       const Problem& problem,
                                                       RandomStream& rng) {
    validate(cfg);
    const std::uint32_t N = static_cast<std::uint32_t>(pop.size());

    // (1) selection, (2) model, (3) statistics from actually-evaluated parents
    const Population parents = select(pop, cfg, rng);
    ScoreParams params{cfg.metric, parents.size(), cfg.pseudo_count};
    BayesianNetwork net = learn_network(parents.members, params, cfg.model_mode);
    FitnessStatsPool pool;
    reset_fitness_stats(net, pool);
    for (const Individual& parent : parents.members)
        if (parent.provenance == Provenance::Actual)
            record_actual(net, pool, parent);

    // (4) offspring
    Population next;
    next.generation = pop.generation + 1;
    next.members.reserve(N);
    for (std::uint32_t i = 0; i < N; ++i)
        next.members.emplace_back(sample_individual(net, rng));

    // (5)-(7) evaluation policy: record the actual share first so estimates
    // see this generation's offspring statistics.
    auto [estimate_set, evaluate_set] =
        inheritance_partition(N, cfg.inheritance_proportion, rng);
    for (std::uint32_t i : evaluate_set) {
        Individual& child = next.members[i];
        child.assign_fitness(evaluate(problem, child.bits), Provenance::Actual);
        record_actual(net, pool, child);
    }
    for (std::uint32_t i : estimate_set) {
        Individual& child = next.members[i];
        child.assign_fitness(estimate_fitness(net, pool, child.bits),
                             Provenance::Estimated);
    }

    return {std::move(next), GenerationStats{evaluate_set.size()}};
}

RunStats run_boa(const BoaConfig& cfg, const Problem& problem, RandomStream& rng) {
    validate(cfg);
    const std::int32_t max_generations =
        cfg.max_generations >= 0 ? cfg.max_generations
                                 : static_cast<std::int32_t>(5 * problem.n);

    Population pop = random_population(problem.n, cfg.population_size, rng);
    RunStats stats;
    for (Individual& member : pop.members) {
        member.assign_fitness(evaluate(problem, member.bits), Provenance::Actual);
        ++stats.actual_evaluations;
    }

    const Individual* best = &best_of(pop);
    stats.succeeded = is_success(problem, best->bits, cfg.success_threshold);
    while (!stats.succeeded &&
           stats.generations_run < static_cast<std::uint32_t>(max_generations)) {
        auto [next, gen_stats] = generation_step(pop, cfg, problem, rng);
        pop = std::move(next);
        stats.actual_evaluations += gen_stats.actual_evaluations;
        ++stats.generations_run;
        best = &best_of(pop);
        stats.succeeded = is_success(problem, best->bits, cfg.success_threshold);
    }
    stats.best_true_fitness = evaluate(problem, best->bits);  // not counted
    return stats;
}

}  // namespace boa
