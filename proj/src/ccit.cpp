#include "ccit/ccit.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ccit/bootstrap.hpp"
#include "ccit/rng.hpp"

namespace ccit {

namespace {
constexpr std::size_t kMinPartitionRows = 20;

// Sub-seed streams derived from the run seed.
enum : std::uint64_t { kPartitionStream = 1, kSplitStream = 2, kTrainFullStream = 3, kTrainYzStream = 4 };
}  // namespace

std::string to_string(Verdict v) { return v == Verdict::CI ? "CI" : "NotCI"; }
std::string to_string(Variant v) { return v == Variant::V1 ? "v1" : "v2"; }

double default_tau(std::size_t n_test) {
    if (n_test == 0) throw std::invalid_argument("default_tau: n_test must be positive");
    return 1.0 / std::sqrt(static_cast<double>(n_test));
}

namespace detail {

Pipeline build_pipeline(const Dataset& u, std::uint64_t seed) {
    if (u.size() / 3 < kMinPartitionRows)
        throw std::invalid_argument("ccit: need at least " +
                                    std::to_string(3 * kMinPartitionRows) + " rows");
    const Partition3 parts = partition3(u, derive_seed(seed, kPartitionStream));
    const BootstrapOutput boot = datagen(parts.u2, parts.u3);
    const LabeledDataset labeled = make_labeled(parts.u1, boot.u2_prime);
    auto [train_set, test_set] = split_train_test(labeled, derive_seed(seed, kSplitStream));
    return {std::move(train_set), std::move(test_set), u.dims()};
}

}  // namespace detail

namespace {

void check_args(const Dataset& u, double tau, const ClassifierParams& params) {
    (void)u;
    if (!(tau >= 0.0)) throw std::invalid_argument("ccit: tau must be >= 0");
    params.validate();
}

}  // namespace

TestResult ccit_v1(const Dataset& u, double tau, const ClassifierParams& params,
                   std::uint64_t seed) {
    check_args(u, tau, params);
    const detail::Pipeline p = detail::build_pipeline(u, seed);
    const Model g = train(p.train, params, derive_seed(seed, kTrainFullStream));
    const RiskReport full = empirical_risk(g, p.test);

    TestResult r;
    r.variant = Variant::V1;
    r.loss_full = full.loss;
    r.statistic = 0.5 - full.loss;
    r.tau = tau;
    r.n_test = p.test.n;
    r.decision = v1_decision(full.loss, tau);
    r.seed = seed;
    return r;
}

TestResult ccit_v2(const Dataset& u, double tau, const ClassifierParams& params,
                   std::uint64_t seed) {
    check_args(u, tau, params);
    const detail::Pipeline p = detail::build_pipeline(u, seed);
    const Model g = train(p.train, params, derive_seed(seed, kTrainFullStream));
    const RiskReport full = empirical_risk(g, p.test);

    const LabeledDataset train_yz = drop_x(p.train, p.dims);
    const LabeledDataset test_yz = drop_x(p.test, p.dims);
    const Model g_yz = train(train_yz, params, derive_seed(seed, kTrainYzStream));
    const RiskReport yz = empirical_risk(g_yz, test_yz);

    TestResult r;
    r.variant = Variant::V2;
    r.loss_full = full.loss;
    r.loss_yz = yz.loss;
    r.statistic = yz.loss - full.loss;
    r.tau = tau;
    r.n_test = p.test.n;
    r.decision = v2_decision(full.loss, yz.loss, tau);
    r.seed = seed;
    return r;
}

AggregateResult ccit_bootstrap(const Dataset& u, int B, double tau, Variant variant,
                               const ClassifierParams& params, std::uint64_t seed) {
    if (B < 1) throw std::invalid_argument("ccit_bootstrap: B must be >= 1");
    check_args(u, tau, params);

    AggregateResult agg;
    agg.runs.resize(B);
#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < B; ++b) {
        const std::uint64_t run_seed = seed + 1 + static_cast<std::uint64_t>(b);
        agg.runs[b] = variant == Variant::V1 ? ccit_v1(u, tau, params, run_seed)
                                             : ccit_v2(u, tau, params, run_seed);
    }

    double sum = 0.0;
    for (const TestResult& r : agg.runs) sum += r.statistic;
    agg.mean_statistic = sum / static_cast<double>(B);
    agg.score = agg.mean_statistic;
    agg.tau = tau;
    agg.B = B;
    agg.n_test = agg.runs.front().n_test;
    agg.decision = agg.mean_statistic > tau ? Verdict::NotCI : Verdict::CI;
    return agg;
}

nlohmann::json to_json(const AggregateResult& agg) {
    nlohmann::json runs = nlohmann::json::array();
    for (const TestResult& r : agg.runs) {
        nlohmann::json run{{"seed", r.seed},
                           {"loss_full", r.loss_full},
                           {"statistic", r.statistic},
                           {"decision", to_string(r.decision)}};
        run["loss_yz"] = r.loss_yz ? nlohmann::json(*r.loss_yz) : nlohmann::json(nullptr);
        runs.push_back(std::move(run));
    }
    return {{"variant", agg.runs.empty() ? "" : to_string(agg.runs.front().variant)},
            {"B", agg.B},
            {"tau", agg.tau},
            {"n_test", agg.n_test},
            {"decision", to_string(agg.decision)},
            {"score", agg.score},
            {"mean_statistic", agg.mean_statistic},
            {"runs", std::move(runs)}};
}

}  // namespace ccit
