#ifndef BOA_BAYESNET_HPP
#define BOA_BAYESNET_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "boa/bitstring.hpp"
#include "boa/individual.hpp"
#include "boa/rng.hpp"

namespace boa {

// ---------------------------------------------------------------------------
// Scoring

enum class Metric { BdePenalized, Bic };

struct ScoreParams {
    Metric metric = Metric::BdePenalized;
    std::size_t data_size = 0;   // N; 0 lets learn_network fill in |data|
    double pseudo_count = 1.0;   // Dirichlet prior per value (BDe only)
};

inline double xlog2(std::uint64_t k) {
    return k == 0 ? 0.0 : static_cast<double>(k) * std::log2(static_cast<double>(k));
}

constexpr double kLn2 = 0.6931471805599453094;

/// Dirichlet-multinomial marginal likelihood of one leaf, in bits.
inline double bde_loglik_bits(std::uint64_t m0, std::uint64_t m1, double s) {
    const double m = static_cast<double>(m0 + m1);
    return (std::lgamma(2.0 * s) - std::lgamma(2.0 * s + m) +
            std::lgamma(s + static_cast<double>(m0)) +
            std::lgamma(s + static_cast<double>(m1)) - 2.0 * std::lgamma(s)) /
           kLn2;
}

/// Maximized log-likelihood of one leaf, in bits (0*log 0 == 0).
inline double bic_loglik_bits(std::uint64_t m0, std::uint64_t m1) {
    return xlog2(m0) + xlog2(m1) - xlog2(m0 + m1);
}

/// Score of a single leaf holding m0 zeros and m1 ones of the target
/// variable, including the per-leaf description-length penalty of
/// 0.5*log2(N) bits.
inline double leaf_score(std::uint64_t m0, std::uint64_t m1,
                         const ScoreParams& params) {
    if (params.data_size == 0)
        throw std::invalid_argument("leaf_score: data_size must be >= 1");
    const double penalty = 0.5 * std::log2(static_cast<double>(params.data_size));
    const double loglik = params.metric == Metric::BdePenalized
                              ? bde_loglik_bits(m0, m1, params.pseudo_count)
                              : bic_loglik_bits(m0, m1);
    return loglik - penalty;
}

// ---------------------------------------------------------------------------
// Decision trees

/// One node of a per-variable decision tree. Leaves (split_var < 0) carry the
/// Bernoulli counts used for sampling plus fitness statistics restricted to
/// actually-evaluated solutions: sums and counts of fitness for each value of
/// the target variable among solutions reaching the leaf.
struct TreeNode {
    std::int32_t split_var = -1;
    std::int32_t child0 = -1;
    std::int32_t child1 = -1;
    std::uint32_t count0 = 0;
    std::uint32_t count1 = 0;
    double fit_sum0 = 0.0;
    double fit_sum1 = 0.0;
    std::uint32_t fit_count0 = 0;
    std::uint32_t fit_count1 = 0;

    bool is_leaf() const { return split_var < 0; }
};

struct DecisionTree {
    std::int32_t target = 0;
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    DecisionTree() : nodes(1) {}
    explicit DecisionTree(std::int32_t target_var) : target(target_var), nodes(1) {}

    /// Leaf index reached by routing a full assignment through the splits.
    std::int32_t descend(const BitString& bits) const {
        std::int32_t idx = 0;
        while (!nodes[idx].is_leaf())
            idx = bits.get(nodes[idx].split_var) ? nodes[idx].child1 : nodes[idx].child0;
        return idx;
    }

    std::size_t leaf_count() const {
        std::size_t c = 0;
        for (const TreeNode& node : nodes)
            if (node.is_leaf()) ++c;
        return c;
    }
};

/// Laplace-corrected probability of the target being 1 at a leaf; never
/// reaches 0 or 1, so sampling cannot permanently fix a bit.
inline double leaf_probability(const TreeNode& leaf) {
    return (static_cast<double>(leaf.count1) + 1.0) /
           (static_cast<double>(leaf.count0) + static_cast<double>(leaf.count1) + 2.0);
}

// ---------------------------------------------------------------------------
// Network

enum class NetworkMode { Tree, FullCpt };

/// One decision tree per variable plus the dependency DAG implied by the
/// splits (edge j->i iff variable j splits tree i). In FullCpt mode every
/// tree stays complete over its parent set, which makes a classic CPT a
/// special case of the tree representation.
class BayesianNetwork {
public:
    BayesianNetwork() = default;

    explicit BayesianNetwork(std::size_t n_vars, NetworkMode mode = NetworkMode::Tree)
        : mode_(mode), parents_(n_vars), children_(n_vars) {
        trees_.reserve(n_vars);
        for (std::size_t i = 0; i < n_vars; ++i)
            trees_.emplace_back(static_cast<std::int32_t>(i));
    }

    std::size_t n_vars() const { return trees_.size(); }
    NetworkMode mode() const { return mode_; }

    DecisionTree& tree(std::size_t i) { return trees_[i]; }
    const DecisionTree& tree(std::size_t i) const { return trees_[i]; }

    const std::vector<std::int32_t>& parents_of(std::size_t i) const { return parents_[i]; }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (const auto& p : parents_) c += p.size();
        return c;
    }

    bool has_edge(std::int32_t from, std::int32_t to) const {
        for (std::int32_t p : parents_[to])
            if (p == from) return true;
        return false;
    }

    /// True iff adding from->to would close a directed cycle.
    bool would_create_cycle(std::int32_t from, std::int32_t to) const;

    /// Register the dependency from->to (idempotent). Throws if it would
    /// break acyclicity; callers are expected to test first.
    void add_edge(std::int32_t from, std::int32_t to);

    /// Parents-before-children ordering, lowest index first among ready
    /// variables. Cached until the structure changes.
    const std::vector<std::int32_t>& topological_order() const;

private:
    NetworkMode mode_ = NetworkMode::Tree;
    std::vector<DecisionTree> trees_;
    std::vector<std::vector<std::int32_t>> parents_;
    std::vector<std::vector<std::int32_t>> children_;
    mutable std::vector<std::int32_t> topo_cache_;
};

// ---------------------------------------------------------------------------
// Operations

/// Score improvement from splitting the leaf identified by `path` (conditions
/// on ancestor variables) of the tree for `target_var` on `split_var`,
/// counting only individuals that match the path. Reference implementation
/// used for analysis and as an independent check of the greedy learner.
double split_gain(std::int32_t target_var,
                  std::span<const std::pair<std::int32_t, bool>> path,
                  std::int32_t split_var,
                  std::span<const Individual> data,
                  const ScoreParams& params);

/// Greedy structure learning. In Tree mode each iteration applies the single
/// best positive-gain leaf split across all trees; in FullCpt mode each
/// iteration applies the best positive-gain edge, splitting every leaf of the
/// receiving tree at once. Cycle-creating candidates are skipped. Leaf counts
/// come from `data`; fitness statistics start empty.
BayesianNetwork learn_network(std::span<const Individual> data,
                              ScoreParams params,
                              NetworkMode mode = NetworkMode::Tree);

inline std::vector<std::int32_t> topological_order(const BayesianNetwork& net) {
    return net.topological_order();
}

/// Draw one string by assigning variables in ancestral order, each from the
/// Bernoulli at the leaf its already-assigned ancestors select.
BitString sample_individual(const BayesianNetwork& net, RandomStream& rng);

/// Text dump: trees in variable order, each serialized pre-order with lines
/// `node <var>` and `leaf <count0> <count1> <fitsum0> <fitcount0> <fitsum1>
/// <fitcount1>`.
void dump_model(const BayesianNetwork& net, std::ostream& os);

}  // namespace boa

#endif
