#ifndef BOA_INDIVIDUAL_HPP
#define BOA_INDIVIDUAL_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "boa/bitstring.hpp"
#include "boa/rng.hpp"

namespace boa {

/// How an individual's fitness value was obtained. Estimated fitness is a
/// first-class provenance because estimated individuals must never feed the
/// fitness statistics.
enum class Provenance : std::uint8_t { Unevaluated, Actual, Estimated };

struct Individual {
    BitString bits;
    double fitness = 0.0;
    Provenance provenance = Provenance::Unevaluated;

    Individual() = default;
    explicit Individual(BitString b) : bits(std::move(b)) {}

    void assign_fitness(double f, Provenance p) {
        fitness = f;
        provenance = p;
    }
};

struct Population {
    std::vector<Individual> members;
    std::uint32_t generation = 0;

    std::size_t size() const { return members.size(); }
};

/// N individuals of n bits each, every bit i.i.d. fair, all Unevaluated.
inline Population random_population(std::size_t n, std::size_t N,
                                    RandomStream& rng) {
    if (n == 0) throw std::invalid_argument("random_population: n must be >= 1");
    if (N == 0) throw std::invalid_argument("random_population: N must be >= 1");
    Population pop;
    pop.members.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        Individual ind{BitString(n)};
        ind.bits.randomize(rng);
        pop.members.push_back(std::move(ind));
    }
    return pop;
}

/// Member with maximal assigned fitness; ties go to the lowest index.
inline const Individual& best_of(const Population& pop) {
    if (pop.members.empty())
        throw std::invalid_argument("best_of: empty population");
    const Individual* best = nullptr;
    for (const Individual& m : pop.members) {
        if (m.provenance == Provenance::Unevaluated)
            throw std::logic_error("best_of: unevaluated member");
        if (best == nullptr || m.fitness > best->fitness) best = &m;
    }
    return *best;
}

}  // namespace boa

#endif
