#include "ccit/gbt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ccit {

void ClassifierParams::validate() const {
    if (rounds < 1) throw std::invalid_argument("ClassifierParams: rounds must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("ClassifierParams: max_depth must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw std::invalid_argument("ClassifierParams: learning_rate must be in (0, 1]");
    if (min_leaf < 1) throw std::invalid_argument("ClassifierParams: min_leaf must be >= 1");
    if (!(l2_reg >= 0.0)) throw std::invalid_argument("ClassifierParams: l2_reg must be >= 0");
}

double Tree::leaf_value(const double* row) const {
    std::int32_t cur = 0;
    while (nodes[cur].feature >= 0)
        cur = row[nodes[cur].feature] <= nodes[cur].threshold ? nodes[cur].left : nodes[cur].right;
    return nodes[cur].value;
}

double Model::margin(std::span<const double> features) const {
    if (static_cast<int>(features.size()) != width_)
        throw std::invalid_argument("Model: feature width mismatch");
    double sum = 0.0;
    for (const Tree& t : trees_) sum += t.leaf_value(features.data());
    return base_score_ + learning_rate_ * sum;
}

nlohmann::json Model::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const Tree& t : trees_) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const TreeNode& nd : t.nodes)
            nodes.push_back({{"feature", nd.feature},
                             {"threshold", nd.threshold},
                             {"left", nd.left},
                             {"right", nd.right},
                             {"value", nd.value}});
        trees.push_back(std::move(nodes));
    }
    return {{"base_score", base_score_},
            {"learning_rate", learning_rate_},
            {"feature_width", width_},
            {"trees", std::move(trees)}};
}

Model Model::from_json(const nlohmann::json& doc) {
    Model m;
    m.base_score_ = doc.at("base_score").get<double>();
    m.learning_rate_ = doc.at("learning_rate").get<double>();
    m.width_ = doc.at("feature_width").get<int>();
    for (const auto& tree_doc : doc.at("trees")) {
        Tree t;
        for (const auto& nd : tree_doc)
            t.nodes.push_back({nd.at("feature").get<std::int32_t>(),
                               nd.at("threshold").get<double>(), nd.at("left").get<std::int32_t>(),
                               nd.at("right").get<std::int32_t>(), nd.at("value").get<double>()});
        if (t.nodes.empty()) throw std::invalid_argument("Model::from_json: empty tree");
        m.trees_.push_back(std::move(t));
    }
    return m;
}

namespace {

constexpr double kMinGain = 1e-12;
constexpr double kMinHessian = 1e-16;

double sigmoid(double m) { return 1.0 / (1.0 + std::exp(-m)); }

// log(1 + exp(-s*m)) for label s in {+1 (y=1), -1 (y=0)}, overflow-safe.
double logistic_loss(double margin, int label) {
    const double t = label == 1 ? -margin : margin;
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

struct BuildNode {
    double grad_sum = 0.0, hess_sum = 0.0;
    std::int32_t count = 0;
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1, right = -1;
    double leaf = 0.0;
};

struct SplitCandidate {
    double gain = kMinGain;
    double threshold = 0.0;
    double grad_left = 0.0, hess_left = 0.0;
    std::int32_t count_left = 0;
    bool valid = false;
};

struct ScanState {
    double grad = 0.0, hess = 0.0;
    std::int32_t count = 0;
    double last_value = 0.0;
};

double leaf_score(double g, double h, double l2) { return g * g / (h + l2); }

}  // namespace

Model train(const LabeledDataset& d, const ClassifierParams& params, std::uint64_t seed) {
    (void)seed;  // training has no stochastic component; the seed is part of the
                 // interface so pluggable learners that subsample stay reproducible
    params.validate();
    d.validate();
    const std::size_t n = d.n;
    const int w = d.width;
    if (n == 0) throw std::invalid_argument("train: empty input");
    const std::size_t n_pos = static_cast<std::size_t>(
        std::count(d.labels.begin(), d.labels.end(), 1));
    if (n_pos == 0 || n_pos == n) throw std::invalid_argument("train: single-class input");
    for (double v : d.features)
        if (!std::isfinite(v)) throw std::invalid_argument("train: non-finite feature");

    Model model;
    model.width_ = w;
    model.learning_rate_ = params.learning_rate;
    const double p0 = static_cast<double>(n_pos) / static_cast<double>(n);
    model.base_score_ = std::log(p0 / (1.0 - p0));

    // Presorted row order per feature, value ties broken by row index so the
    // arrangement is a total order.
    std::vector<std::uint32_t> order(static_cast<std::size_t>(w) * n);
    for (int f = 0; f < w; ++f) {
        std::uint32_t* of = order.data() + static_cast<std::size_t>(f) * n;
        std::iota(of, of + n, 0u);
        std::sort(of, of + n, [&](std::uint32_t a, std::uint32_t b) {
            const double va = d.features[a * static_cast<std::size_t>(w) + f];
            const double vb = d.features[b * static_cast<std::size_t>(w) + f];
            return va < vb || (va == vb && a < b);
        });
    }

    std::vector<double> margins(n, model.base_score_);
    std::vector<double> grad(n), hess(n);
    std::vector<std::int32_t> node_of(n);
    const double l2 = params.l2_reg;

    for (int round = 0; round < params.rounds; ++round) {
        double g_total = 0.0, h_total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(margins[i]);
            grad[i] = p - static_cast<double>(d.labels[i]);
            hess[i] = std::max(p * (1.0 - p), kMinHessian);
            g_total += grad[i];
            h_total += hess[i];
        }

        std::vector<BuildNode> nodes(1);
        nodes[0].grad_sum = g_total;
        nodes[0].hess_sum = h_total;
        nodes[0].count = static_cast<std::int32_t>(n);
        std::fill(node_of.begin(), node_of.end(), 0);

        std::int32_t level_begin = 0;
        for (int depth = 0; depth < params.max_depth; ++depth) {
            const std::int32_t level_end = static_cast<std::int32_t>(nodes.size());
            const std::int32_t level_count = level_end - level_begin;
            if (level_count == 0) break;

            std::vector<char> candidate(level_count, 0);
            bool any = false;
            for (std::int32_t k = 0; k < level_count; ++k) {
                if (nodes[level_begin + k].count >= 2 * params.min_leaf) {
                    candidate[k] = 1;
                    any = true;
                }
            }
            if (!any) break;

            // Best split per (feature, level node); features scan independently
            // and are merged in index order, so the result does not depend on
            // the thread schedule.
            std::vector<SplitCandidate> best(static_cast<std::size_t>(w) * level_count);
#pragma omp parallel for schedule(static)
            for (int f = 0; f < w; ++f) {
                SplitCandidate* fbest = best.data() + static_cast<std::size_t>(f) * level_count;
                std::vector<ScanState> state(level_count);
                const std::uint32_t* of = order.data() + static_cast<std::size_t>(f) * n;
                for (std::size_t j = 0; j < n; ++j) {
                    const std::uint32_t i = of[j];
                    const std::int32_t node = node_of[i];
                    if (node < level_begin) continue;  // settled leaf
                    const std::int32_t slot = node - level_begin;
                    if (!candidate[slot]) continue;
                    const double v = d.features[i * static_cast<std::size_t>(w) + f];
                    ScanState& st = state[slot];
                    if (st.count > 0 && v > st.last_value) {
                        const BuildNode& nd = nodes[node];
                        const std::int32_t right_count = nd.count - st.count;
                        if (st.count >= params.min_leaf && right_count >= params.min_leaf) {
                            const double gain =
                                0.5 * (leaf_score(st.grad, st.hess, l2) +
                                       leaf_score(nd.grad_sum - st.grad, nd.hess_sum - st.hess, l2) -
                                       leaf_score(nd.grad_sum, nd.hess_sum, l2));
                            if (gain > fbest[slot].gain) {
                                double thr = st.last_value + 0.5 * (v - st.last_value);
                                if (!(thr < v)) thr = st.last_value;  // midpoint rounded up
                                fbest[slot] = {gain, thr, st.grad, st.hess, st.count, true};
                            }
                        }
                    }
                    st.grad += grad[i];
                    st.hess += hess[i];
                    st.count += 1;
                    st.last_value = v;
                }
            }

            bool split_any = false;
            for (std::int32_t k = 0; k < level_count; ++k) {
                if (!candidate[k]) continue;
                int best_f = -1;
                SplitCandidate chosen;
                for (int f = 0; f < w; ++f) {
                    const SplitCandidate& c = best[static_cast<std::size_t>(f) * level_count + k];
                    if (c.valid && c.gain > chosen.gain) {
                        chosen = c;
                        best_f = f;
                    }
                }
                if (best_f < 0) continue;
                BuildNode& nd = nodes[level_begin + k];
                nd.feature = best_f;
                nd.threshold = chosen.threshold;
                nd.left = static_cast<std::int32_t>(nodes.size());
                nd.right = nd.left + 1;
                BuildNode left, right;
                left.grad_sum = chosen.grad_left;
                left.hess_sum = chosen.hess_left;
                left.count = chosen.count_left;
                right.grad_sum = nd.grad_sum - chosen.grad_left;
                right.hess_sum = nd.hess_sum - chosen.hess_left;
                right.count = nd.count - chosen.count_left;
                nodes.push_back(left);
                nodes.push_back(right);
                split_any = true;
            }
            if (!split_any) break;

            for (std::size_t i = 0; i < n; ++i) {
                const BuildNode& nd = nodes[node_of[i]];
                if (nd.feature >= 0)
                    node_of[i] = d.features[i * static_cast<std::size_t>(w) + nd.feature] <=
                                         nd.threshold
                                     ? nd.left
                                     : nd.right;
            }
            level_begin = level_end;
        }

        for (BuildNode& nd : nodes)
            if (nd.feature < 0) nd.leaf = -nd.grad_sum / (nd.hess_sum + l2);

        for (std::size_t i = 0; i < n; ++i)
            margins[i] += params.learning_rate * nodes[node_of[i]].leaf;

        Tree tree;
        tree.nodes.resize(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k)
            tree.nodes[k] = {nodes[k].feature, nodes[k].threshold, nodes[k].left, nodes[k].right,
                             nodes[k].leaf};
        model.trees_.push_back(std::move(tree));

        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) loss += logistic_loss(margins[i], d.labels[i]);
        loss /= static_cast<double>(n);
        assert(model.round_loss_.empty() || loss <= model.round_loss_.back() + 1e-9);
        model.round_loss_.push_back(loss);
    }

    return model;
}

RiskReport empirical_risk(const Learner& model, const LabeledDataset& d) {
    d.validate();
    if (d.n == 0) throw std::invalid_argument("empirical_risk: empty evaluation set");
    if (d.width != model.feature_width())
        throw std::invalid_argument("empirical_risk: feature width mismatch");
    std::size_t errors1 = 0, errors0 = 0, n1 = 0, n0 = 0;
    for (std::size_t i = 0; i < d.n; ++i) {
        const int pred = model.predict(d.row(i));
        if (d.labels[i] == 1) {
            ++n1;
            errors1 += pred != 1;
        } else {
            ++n0;
            errors0 += pred != 0;
        }
    }
    RiskReport r;
    r.n = d.n;
    r.loss = static_cast<double>(errors1 + errors0) / static_cast<double>(d.n);
    r.error_rate_label1 = n1 ? static_cast<double>(errors1) / static_cast<double>(n1) : 0.0;
    r.error_rate_label0 = n0 ? static_cast<double>(errors0) / static_cast<double>(n0) : 0.0;
    return r;
}

std::unique_ptr<Learner> GbtTrainer::fit(const LabeledDataset& d, std::uint64_t seed) const {
    return std::make_unique<Model>(train(d, params_, seed));
}

}  // namespace ccit
