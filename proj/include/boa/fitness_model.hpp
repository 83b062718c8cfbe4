#ifndef BOA_FITNESS_MODEL_HPP
#define BOA_FITNESS_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "boa/bayesnet.hpp"
#include "boa/individual.hpp"

namespace boa {

/// Running mean of every actually-evaluated solution recorded this
/// generation; the anchor term of the fitness estimate.
struct FitnessStatsPool {
    double global_sum = 0.0;
    std::uint64_t global_count = 0;

    double mean() const {
        if (global_count == 0)
            throw std::logic_error("FitnessStatsPool: no actual evaluations recorded");
        return global_sum / static_cast<double>(global_count);
    }
};

/// Route one actually-evaluated solution through every tree and add its
/// fitness to the reached leaf's statistics for the solution's value of the
/// tree's target variable. The pool is incremented once per solution.
inline void record_actual(BayesianNetwork& net, FitnessStatsPool& pool,
                          const BitString& bits, double fitness) {
    for (std::size_t i = 0; i < net.n_vars(); ++i) {
        DecisionTree& tree = net.tree(i);
        TreeNode& leaf = tree.nodes[tree.descend(bits)];
        if (bits.get(i)) {
            leaf.fit_sum1 += fitness;
            ++leaf.fit_count1;
        } else {
            leaf.fit_sum0 += fitness;
            ++leaf.fit_count0;
        }
    }
    pool.global_sum += fitness;
    ++pool.global_count;
}

/// Estimated fitness must never feed the statistics: estimation errors would
/// otherwise propagate through generations.
inline void record_actual(BayesianNetwork& net, FitnessStatsPool& pool,
                          const Individual& ind) {
    if (ind.provenance != Provenance::Actual)
        throw std::logic_error("record_actual: only actually-evaluated solutions may be recorded");
    record_actual(net, pool, ind.bits, ind.fitness);
}

/// Average fitness of solutions reaching this leaf with the target variable
/// equal to x; fallback when the leaf has no data for that value.
inline double leaf_fitness_mean(const TreeNode& leaf, bool x, double fallback) {
    const std::uint32_t cnt = x ? leaf.fit_count1 : leaf.fit_count0;
    if (cnt == 0) return fallback;
    return (x ? leaf.fit_sum1 : leaf.fit_sum0) / static_cast<double>(cnt);
}

/// Average fitness of all recorded solutions satisfying the leaf's path
/// condition. Equals the probability-weighted combination of the per-value
/// means when the probabilities are the empirical frequencies of the same
/// records; with data on one side only it reduces to that side's mean.
inline double leaf_condition_mean(const TreeNode& leaf, double fallback) {
    const std::uint64_t cnt =
        static_cast<std::uint64_t>(leaf.fit_count0) + leaf.fit_count1;
    if (cnt == 0) return fallback;
    return (leaf.fit_sum0 + leaf.fit_sum1) / static_cast<double>(cnt);
}

/// Estimate of the fitness of `bits`: the global mean plus, per variable, the
/// deviation of the conditional mean for the solution's value from the mean
/// under the leaf's condition alone. Leaves with no data for the value
/// contribute nothing.
inline double estimate_fitness(const BayesianNetwork& net,
                               const FitnessStatsPool& pool,
                               const BitString& bits) {
    const double global_mean = pool.mean();
    double estimate = global_mean;
    for (std::size_t i = 0; i < net.n_vars(); ++i) {
        const DecisionTree& tree = net.tree(i);
        const TreeNode& leaf = tree.nodes[tree.descend(bits)];
        const double cond = leaf_condition_mean(leaf, global_mean);
        estimate += leaf_fitness_mean(leaf, bits.get(i), cond) - cond;
    }
    return estimate;
}

/// Zero every leaf's fitness statistics and the pool; structure and model
/// counts stay untouched.
inline void reset_fitness_stats(BayesianNetwork& net, FitnessStatsPool& pool) {
    for (std::size_t i = 0; i < net.n_vars(); ++i) {
        for (TreeNode& node : net.tree(i).nodes) {
            node.fit_sum0 = node.fit_sum1 = 0.0;
            node.fit_count0 = node.fit_count1 = 0;
        }
    }
    pool = FitnessStatsPool{};
}

// ---------------------------------------------------------------------------
// Univariate baseline

/// Probability-vector fitness model: per-position average fitness of a 0 and
/// a 1, plus the global average. The tree estimator collapses to this on an
/// edge-free network fed the same records.
class UmdaFitnessModel {
public:
    explicit UmdaFitnessModel(std::size_t n)
        : sum0_(n, 0.0), sum1_(n, 0.0), cnt0_(n, 0), cnt1_(n, 0) {}

    std::size_t n_vars() const { return sum0_.size(); }
    std::uint64_t global_count() const { return global_count_; }

    void record(const BitString& bits, double fitness) {
        if (bits.size() != n_vars())
            throw std::invalid_argument("UmdaFitnessModel::record: length mismatch");
        for (std::size_t i = 0; i < n_vars(); ++i) {
            if (bits.get(i)) {
                sum1_[i] += fitness;
                ++cnt1_[i];
            } else {
                sum0_[i] += fitness;
                ++cnt0_[i];
            }
        }
        global_sum_ += fitness;
        ++global_count_;
    }

    double estimate(const BitString& bits) const {
        if (global_count_ == 0)
            throw std::logic_error("UmdaFitnessModel: no records");
        if (bits.size() != n_vars())
            throw std::invalid_argument("UmdaFitnessModel::estimate: length mismatch");
        const double global_mean = global_sum_ / static_cast<double>(global_count_);
        double estimate = global_mean;
        for (std::size_t i = 0; i < n_vars(); ++i) {
            const std::uint64_t cnt = bits.get(i) ? cnt1_[i] : cnt0_[i];
            if (cnt == 0) continue;  // missing value contributes nothing
            const double mean =
                (bits.get(i) ? sum1_[i] : sum0_[i]) / static_cast<double>(cnt);
            estimate += mean - global_mean;
        }
        return estimate;
    }

    void reset() {
        std::fill(sum0_.begin(), sum0_.end(), 0.0);
        std::fill(sum1_.begin(), sum1_.end(), 0.0);
        std::fill(cnt0_.begin(), cnt0_.end(), 0);
        std::fill(cnt1_.begin(), cnt1_.end(), 0);
        global_sum_ = 0.0;
        global_count_ = 0;
    }

private:
    std::vector<double> sum0_, sum1_;
    std::vector<std::uint64_t> cnt0_, cnt1_;
    double global_sum_ = 0.0;
    std::uint64_t global_count_ = 0;
};

inline double umda_estimate(const UmdaFitnessModel& model, const BitString& bits) {
    return model.estimate(bits);
}

}  // namespace boa

#endif
