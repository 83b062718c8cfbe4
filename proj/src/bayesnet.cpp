#include "boa/bayesnet.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <charconv>
#include <ostream>
#include <string>

namespace boa {

namespace {

// Column-major packed copy of the data: one bit vector per variable, rows
// beyond the data size padded with zeros.
class BitColumns {
public:
    BitColumns(std::span<const Individual> data, std::size_t n_vars)
        : rows_(data.size()),
          words_((data.size() + 63) / 64),
          bits_(words_ * n_vars, 0) {
        for (std::size_t r = 0; r < rows_; ++r) {
            const BitString& b = data[r].bits;
            const std::uint64_t mask = std::uint64_t{1} << (r & 63);
            const std::size_t w = r >> 6;
            for (std::size_t v = 0; v < n_vars; ++v)
                if (b.get(v)) bits_[v * words_ + w] |= mask;
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t words() const { return words_; }

    const std::uint64_t* col(std::size_t v) const { return bits_.data() + v * words_; }

private:
    std::size_t rows_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

std::uint32_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t words) {
    std::uint32_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

// Leaf scorer with lgamma / k*log2(k) lookup tables covering counts up to the
// data size. Produces bit-identical values to leaf_score().
class LeafScorer {
public:
    LeafScorer(const ScoreParams& params)
        : metric_(params.metric),
          pseudo_(params.pseudo_count),
          penalty_(0.5 * std::log2(static_cast<double>(params.data_size))) {
        const std::size_t n = params.data_size;
        if (metric_ == Metric::BdePenalized) {
            lg_s_.resize(n + 1);
            lg_2s_.resize(n + 1);
            for (std::size_t k = 0; k <= n; ++k) {
                lg_s_[k] = std::lgamma(pseudo_ + static_cast<double>(k));
                lg_2s_[k] = std::lgamma(2.0 * pseudo_ + static_cast<double>(k));
            }
        } else {
            xl2_.resize(n + 1);
            for (std::size_t k = 0; k <= n; ++k) xl2_[k] = xlog2(k);
        }
    }

    double operator()(std::uint32_t m0, std::uint32_t m1) const {
        if (metric_ == Metric::BdePenalized)
            return (lg_2s_[0] - lg_2s_[m0 + m1] + lg_s_[m0] + lg_s_[m1] -
                    2.0 * lg_s_[0]) / kLn2 - penalty_;
        return xl2_[m0] + xl2_[m1] - xl2_[m0 + m1] - penalty_;
    }

private:
    Metric metric_;
    double pseudo_;
    double penalty_;
    std::vector<double> lg_s_, lg_2s_, xl2_;
};

struct Candidate {
    double gain;
    std::int32_t var;
};

struct LeafState {
    std::int32_t node;
    std::uint32_t m0, m1;
    std::vector<std::uint64_t> mask;   // rows routed to this leaf
    std::vector<std::int32_t> path;    // split variables above this leaf
    std::vector<Candidate> cands;      // positive gains, best first
};

bool on_path(const LeafState& leaf, std::int32_t v) {
    return std::find(leaf.path.begin(), leaf.path.end(), v) != leaf.path.end();
}

void compute_candidates(LeafState& leaf, std::int32_t target, std::int32_t n_vars,
                        const BitColumns& cols, const LeafScorer& score,
                        std::vector<std::uint64_t>& scratch) {
    leaf.cands.clear();
    const std::size_t words = cols.words();
    const double base = score(leaf.m0, leaf.m1);
    const std::uint64_t* coli = cols.col(static_cast<std::size_t>(target));
    scratch.resize(words);
    for (std::size_t w = 0; w < words; ++w) scratch[w] = leaf.mask[w] & coli[w];

    for (std::int32_t v = 0; v < n_vars; ++v) {
        if (v == target || on_path(leaf, v)) continue;
        const std::uint64_t* colv = cols.col(static_cast<std::size_t>(v));
        const std::uint32_t v1 = and_popcount(leaf.mask.data(), colv, words);
        const std::uint32_t a = and_popcount(scratch.data(), colv, words);
        const std::uint32_t b = v1 - a;            // Xv=1, Xi=0
        const std::uint32_t c = leaf.m1 - a;       // Xv=0, Xi=1
        const std::uint32_t d = leaf.m0 - b;       // Xv=0, Xi=0
        const double gain = score(d, c) + score(b, a) - base;
        if (gain > 0.0) leaf.cands.push_back({gain, v});
    }
    std::sort(leaf.cands.begin(), leaf.cands.end(),
              [](const Candidate& x, const Candidate& y) {
                  return x.gain != y.gain ? x.gain > y.gain : x.var < y.var;
              });
}

}  // namespace

bool BayesianNetwork::would_create_cycle(std::int32_t from, std::int32_t to) const {
    if (from == to) return true;
    // A cycle appears iff `from` is reachable from `to` along existing edges.
    std::vector<std::int32_t> stack{to};
    std::vector<char> seen(n_vars(), 0);
    seen[to] = 1;
    while (!stack.empty()) {
        const std::int32_t u = stack.back();
        stack.pop_back();
        for (std::int32_t w : children_[u]) {
            if (w == from) return true;
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

void BayesianNetwork::add_edge(std::int32_t from, std::int32_t to) {
    if (has_edge(from, to)) return;
    if (would_create_cycle(from, to))
        throw std::logic_error("BayesianNetwork::add_edge: cycle");
    parents_[to].push_back(from);
    std::sort(parents_[to].begin(), parents_[to].end());
    children_[from].push_back(to);
    topo_cache_.clear();
}

const std::vector<std::int32_t>& BayesianNetwork::topological_order() const {
    if (!topo_cache_.empty() || n_vars() == 0) return topo_cache_;
    const std::size_t n = n_vars();
    std::vector<std::size_t> indegree(n);
    for (std::size_t i = 0; i < n; ++i) indegree[i] = parents_[i].size();
    std::vector<char> placed(n, 0);
    topo_cache_.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::int32_t pick = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!placed[i] && indegree[i] == 0) {
                pick = static_cast<std::int32_t>(i);
                break;
            }
        }
        if (pick < 0) {
            topo_cache_.clear();
            throw std::logic_error("topological_order: dependency graph has a cycle");
        }
        placed[pick] = 1;
        topo_cache_.push_back(pick);
        for (std::int32_t w : children_[pick]) --indegree[w];
    }
    return topo_cache_;
}

double split_gain(std::int32_t target_var,
                  std::span<const std::pair<std::int32_t, bool>> path,
                  std::int32_t split_var,
                  std::span<const Individual> data,
                  const ScoreParams& params) {
    if (split_var == target_var)
        throw std::invalid_argument("split_gain: split variable equals target");
    for (const auto& [v, val] : path)
        if (v == split_var)
            throw std::invalid_argument("split_gain: split variable already on path");
    ScoreParams p = params;
    if (p.data_size == 0) p.data_size = data.size();

    std::uint32_t m[2][2] = {{0, 0}, {0, 0}};  // [split value][target value]
    for (const Individual& ind : data) {
        bool match = true;
        for (const auto& [v, val] : path) {
            if (ind.bits.get(v) != val) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        ++m[ind.bits.get(split_var) ? 1 : 0][ind.bits.get(target_var) ? 1 : 0];
    }
    const std::uint32_t m0 = m[0][0] + m[1][0];
    const std::uint32_t m1 = m[0][1] + m[1][1];
    return leaf_score(m[0][0], m[0][1], p) + leaf_score(m[1][0], m[1][1], p) -
           leaf_score(m0, m1, p);
}

namespace {

struct TreeBuild {
    std::vector<LeafState> leaves;  // ascending node index
};

LeafState make_child(const LeafState& parent, std::int32_t node, std::int32_t var,
                     const BitColumns& cols, const std::uint64_t* col_split,
                     bool split_value, const std::uint64_t* col_target) {
    LeafState child;
    child.node = node;
    const std::size_t words = cols.words();
    child.mask.resize(words);
    if (split_value)
        for (std::size_t w = 0; w < words; ++w) child.mask[w] = parent.mask[w] & col_split[w];
    else
        for (std::size_t w = 0; w < words; ++w) child.mask[w] = parent.mask[w] & ~col_split[w];
    std::uint32_t total = 0;
    for (std::size_t w = 0; w < words; ++w) total += std::popcount(child.mask[w]);
    child.m1 = and_popcount(child.mask.data(), col_target, words);
    child.m0 = total - child.m1;
    child.path = parent.path;
    child.path.push_back(var);
    return child;
}

}  // namespace

BayesianNetwork learn_network(std::span<const Individual> data,
                              ScoreParams params, NetworkMode mode) {
    if (data.empty())
        throw std::invalid_argument("learn_network: empty data");
    const std::size_t n = data[0].bits.size();
    for (const Individual& ind : data)
        if (ind.bits.size() != n)
            throw std::invalid_argument("learn_network: ragged data");
    if (params.data_size == 0) params.data_size = data.size();
    if (params.pseudo_count <= 0.0)
        throw std::invalid_argument("learn_network: pseudo_count must be positive");

    BayesianNetwork net(n, mode);
    const BitColumns cols(data, n);
    const LeafScorer score(params);
    const std::int32_t nv = static_cast<std::int32_t>(n);

    std::vector<std::uint64_t> scratch;
    std::vector<TreeBuild> builds(n);

    // Root leaves hold the whole data set.
    std::vector<std::uint64_t> full(cols.words(), ~std::uint64_t{0});
    if (data.size() & 63)
        full.back() = (std::uint64_t{1} << (data.size() & 63)) - 1;
    for (std::size_t i = 0; i < n; ++i) {
        LeafState root;
        root.node = 0;
        root.mask = full;
        root.m1 = and_popcount(full.data(), cols.col(i), cols.words());
        root.m0 = static_cast<std::uint32_t>(data.size()) - root.m1;
        compute_candidates(root, static_cast<std::int32_t>(i), nv, cols, score, scratch);
        net.tree(i).nodes[0].count0 = root.m0;
        net.tree(i).nodes[0].count1 = root.m1;
        builds[i].leaves.push_back(std::move(root));
    }

    const auto apply_split = [&](std::size_t tree_idx, std::size_t leaf_pos,
                                 std::int32_t var) {
        DecisionTree& tree = net.tree(tree_idx);
        TreeBuild& build = builds[tree_idx];
        LeafState leaf = std::move(build.leaves[leaf_pos]);
        build.leaves.erase(build.leaves.begin() +
                           static_cast<std::ptrdiff_t>(leaf_pos));

        const std::int32_t c0 = static_cast<std::int32_t>(tree.nodes.size());
        const std::int32_t c1 = c0 + 1;
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        TreeNode& parent = tree.nodes[leaf.node];
        parent.split_var = var;
        parent.child0 = c0;
        parent.child1 = c1;

        const std::uint64_t* colv = cols.col(static_cast<std::size_t>(var));
        const std::uint64_t* coli = cols.col(tree_idx);
        for (bool value : {false, true}) {
            LeafState child =
                make_child(leaf, value ? c1 : c0, var, cols, colv, value, coli);
            TreeNode& cnode = tree.nodes[child.node];
            cnode.count0 = child.m0;
            cnode.count1 = child.m1;
            compute_candidates(child, static_cast<std::int32_t>(tree_idx), nv, cols,
                               score, scratch);
            build.leaves.push_back(std::move(child));  // node ids only grow
        }
        net.add_edge(var, static_cast<std::int32_t>(tree_idx));
    };

    if (mode == NetworkMode::Tree) {
        for (;;) {
            double best_gain = 0.0;
            std::size_t best_tree = 0, best_leaf = 0;
            std::int32_t best_var = -1;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t l = 0; l < builds[i].leaves.size(); ++l) {
                    for (const Candidate& cand : builds[i].leaves[l].cands) {
                        // Cycle-creating candidates are skipped, not scored.
                        if (!net.has_edge(cand.var, static_cast<std::int32_t>(i)) &&
                            net.would_create_cycle(cand.var, static_cast<std::int32_t>(i)))
                            continue;
                        if (cand.gain > best_gain) {
                            best_gain = cand.gain;
                            best_tree = i;
                            best_leaf = l;
                            best_var = cand.var;
                        }
                        break;  // first admissible candidate is this leaf's best
                    }
                }
            }
            if (best_var < 0) break;
            apply_split(best_tree, best_leaf, best_var);
        }
    } else {
        // FullCpt: one candidate per admissible edge; applying it splits every
        // leaf of the receiving tree, keeping the tree complete over its
        // parent set.
        for (;;) {
            double best_gain = 0.0;
            std::size_t best_tree = 0;
            std::int32_t best_var = -1;
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint64_t* coli = cols.col(i);
                for (std::int32_t v = 0; v < static_cast<std::int32_t>(n); ++v) {
                    if (v == static_cast<std::int32_t>(i)) continue;
                    if (net.has_edge(v, static_cast<std::int32_t>(i))) continue;
                    if (net.would_create_cycle(v, static_cast<std::int32_t>(i))) continue;
                    const std::uint64_t* colv = cols.col(static_cast<std::size_t>(v));
                    double gain = 0.0;
                    for (const LeafState& leaf : builds[i].leaves) {
                        scratch.resize(cols.words());
                        for (std::size_t w = 0; w < cols.words(); ++w)
                            scratch[w] = leaf.mask[w] & coli[w];
                        const std::uint32_t v1 =
                            and_popcount(leaf.mask.data(), colv, cols.words());
                        const std::uint32_t a =
                            and_popcount(scratch.data(), colv, cols.words());
                        const std::uint32_t b = v1 - a;
                        const std::uint32_t c = leaf.m1 - a;
                        const std::uint32_t d = leaf.m0 - b;
                        gain += score(d, c) + score(b, a) - score(leaf.m0, leaf.m1);
                    }
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_tree = i;
                        best_var = v;
                    }
                }
            }
            if (best_var < 0) break;
            // Split every leaf (re-fetch positions as the vector mutates).
            const std::size_t leaves_before = builds[best_tree].leaves.size();
            for (std::size_t k = 0; k < leaves_before; ++k)
                apply_split(best_tree, 0, best_var);
        }
    }

    return net;
}

BitString sample_individual(const BayesianNetwork& net, RandomStream& rng) {
    const std::size_t n = net.n_vars();
    BitString bits(n);
    std::vector<char> assigned(n, 0);
    for (std::int32_t i : net.topological_order()) {
        const DecisionTree& tree = net.tree(static_cast<std::size_t>(i));
        std::int32_t idx = 0;
        while (!tree.nodes[idx].is_leaf()) {
            const std::int32_t sv = tree.nodes[idx].split_var;
            if (!assigned[sv])
                throw std::logic_error("sample_individual: split variable not yet assigned");
            idx = bits.get(sv) ? tree.nodes[idx].child1 : tree.nodes[idx].child0;
        }
        bits.set(static_cast<std::size_t>(i),
                 rng.next_bernoulli(leaf_probability(tree.nodes[idx])));
        assigned[i] = 1;
    }
    return bits;
}

namespace {

void format_double(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void dump_node(const DecisionTree& tree, std::int32_t idx, std::string& out) {
    const TreeNode& node = tree.nodes[idx];
    if (node.is_leaf()) {
        out += "leaf ";
        out += std::to_string(node.count0);
        out += ' ';
        out += std::to_string(node.count1);
        out += ' ';
        format_double(out, node.fit_sum0);
        out += ' ';
        out += std::to_string(node.fit_count0);
        out += ' ';
        format_double(out, node.fit_sum1);
        out += ' ';
        out += std::to_string(node.fit_count1);
        out += '\n';
        return;
    }
    out += "node ";
    out += std::to_string(node.split_var);
    out += '\n';
    dump_node(tree, node.child0, out);
    dump_node(tree, node.child1, out);
}

}  // namespace

void dump_model(const BayesianNetwork& net, std::ostream& os) {
    std::string out;
    for (std::size_t i = 0; i < net.n_vars(); ++i)
        dump_node(net.tree(i), 0, out);
    os << out;
}

}  // namespace boa
