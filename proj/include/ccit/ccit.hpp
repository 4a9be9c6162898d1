#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccit/dataset.hpp"
#include "ccit/gbt.hpp"

#include "json.hpp"

namespace ccit {

enum class Verdict { CI, NotCI };
enum class Variant { V1, V2 };

std::string to_string(Verdict v);
std::string to_string(Variant v);

/// Outcome of one test run.
///
/// v1: statistic = 0.5 - loss_full, NotCI iff loss_full <= 0.5 - tau.
/// v2: statistic = loss_yz - loss_full, NotCI iff loss_full < loss_yz - tau.
/// v1 carries no bias correction and is biased for finite n; prefer v2.
struct TestResult {
    Variant variant = Variant::V2;
    double loss_full = 0.0;
    std::optional<double> loss_yz;  // v2 only
    double statistic = 0.0;
    double tau = 0.0;
    std::size_t n_test = 0;
    Verdict decision = Verdict::CI;
    std::uint64_t seed = 0;
};

/// B runs aggregated. score == mean_statistic; higher means more evidence of
/// dependence. decision is NotCI iff mean_statistic > tau.
struct AggregateResult {
    std::vector<TestResult> runs;
    double mean_statistic = 0.0;
    double score = 0.0;
    Verdict decision = Verdict::CI;
    double tau = 0.0;
    int B = 0;
    std::size_t n_test = 0;
};

/// 1/sqrt(n_test): an upper bound on the expected standard deviation of the
/// test statistic under the null.
double default_tau(std::size_t n_test);

// Decision rules, exact at the boundaries.
inline Verdict v1_decision(double loss_full, double tau) {
    return loss_full <= 0.5 - tau ? Verdict::NotCI : Verdict::CI;
}
inline Verdict v2_decision(double loss_full, double loss_yz, double tau) {
    return loss_full < loss_yz - tau ? Verdict::NotCI : Verdict::CI;
}

TestResult ccit_v1(const Dataset& u, double tau, const ClassifierParams& params, std::uint64_t seed);
TestResult ccit_v2(const Dataset& u, double tau, const ClassifierParams& params, std::uint64_t seed);

/// Runs the chosen variant B times with seeds seed+1 .. seed+B (fresh random
/// partition each run, same data) and averages the statistics. Runs execute
/// in parallel; aggregation is schedule-independent.
AggregateResult ccit_bootstrap(const Dataset& u, int B, double tau, Variant variant,
                               const ClassifierParams& params, std::uint64_t seed);

/// Stable result schema:
/// {variant, B, tau, n_test, decision, score, mean_statistic,
///  runs: [{seed, loss_full, loss_yz, statistic, decision}]}
nlohmann::json to_json(const AggregateResult& agg);

namespace detail {

/// Steps 2-5 shared by both variants: partition, bootstrap, label, split.
struct Pipeline {
    LabeledDataset train, test;
    DimSpec dims;
};
Pipeline build_pipeline(const Dataset& u, std::uint64_t seed);

}  // namespace detail

}  // namespace ccit
