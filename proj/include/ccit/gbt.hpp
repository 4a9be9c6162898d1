#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ccit/dataset.hpp"

#include "json.hpp"

namespace ccit {

/// Gradient-boosted-trees hyperparameters. The min_leaf floor matters more
/// here than in generic classification: the bootstrap duplicates Y values
/// across rows, and leaves small enough to isolate those duplicates let both
/// classifiers memorize them instead of the distributional signal.
struct ClassifierParams {
    int rounds = 150;            // boosting rounds
    int max_depth = 6;           // split levels per tree
    double learning_rate = 0.1;  // shrinkage in (0, 1]
    int min_leaf = 30;           // minimum samples per leaf
    double l2_reg = 1.0;         // L2 penalty on leaf weights

    void validate() const;
};

/// Minimal prediction interface so alternative classifiers can be swapped in.
class Learner {
public:
    virtual ~Learner() = default;
    virtual double margin(std::span<const double> features) const = 0;
    int predict(std::span<const double> features) const { return margin(features) >= 0.0 ? 1 : 0; }
    virtual int feature_width() const = 0;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // x[feature] <= threshold goes left
    std::int32_t left = -1, right = -1;
    double value = 0.0;  // leaf weight, unscaled
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    double leaf_value(const double* row) const;
};

/// Trained boosted ensemble. Immutable; prediction is a pure function of
/// (model, features) and safe to call concurrently.
class Model final : public Learner {
public:
    double margin(std::span<const double> features) const override;
    int feature_width() const override { return width_; }

    double base_score() const { return base_score_; }
    double learning_rate() const { return learning_rate_; }
    const std::vector<Tree>& trees() const { return trees_; }

    // Training logistic loss after each round; nonincreasing by construction.
    const std::vector<double>& training_loss_curve() const { return round_loss_; }

    // Debug (de)serialization of the tree list; format documented in the
    // README, not wire-stable.
    nlohmann::json to_json() const;
    static Model from_json(const nlohmann::json& doc);

private:
    friend Model train(const LabeledDataset&, const ClassifierParams&, std::uint64_t);
    std::vector<Tree> trees_;
    double base_score_ = 0.0;
    double learning_rate_ = 0.1;
    int width_ = 0;
    std::vector<double> round_loss_;
};

/// Trains by gradient boosting on logistic loss: each round fits a
/// depth-limited regression tree to the negative gradient with exact greedy
/// split search over all (feature, threshold) pairs. Deterministic for fixed
/// (data, params, seed) and independent of the number of threads.
Model train(const LabeledDataset& d, const ClassifierParams& params, std::uint64_t seed);

struct RiskReport {
    double loss = 0.0;  // mean 0-1 loss
    std::size_t n = 0;
    double error_rate_label1 = 0.0;
    double error_rate_label0 = 0.0;
};

/// Empirical 0-1 risk with a per-class breakdown.
RiskReport empirical_risk(const Learner& model, const LabeledDataset& d);

/// Factory interface for pluggable learners.
class Trainer {
public:
    virtual ~Trainer() = default;
    virtual std::unique_ptr<Learner> fit(const LabeledDataset& d, std::uint64_t seed) const = 0;
};

class GbtTrainer final : public Trainer {
public:
    explicit GbtTrainer(ClassifierParams params) : params_(params) {}
    std::unique_ptr<Learner> fit(const LabeledDataset& d, std::uint64_t seed) const override;

private:
    ClassifierParams params_;
};

}  // namespace ccit
