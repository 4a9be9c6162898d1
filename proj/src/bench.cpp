#include "ccit/bench.hpp"

#include <chrono>
#include <iostream>
#include <stdexcept>

#include "ccit/metrics.hpp"
#include "ccit/rng.hpp"
#include "ccit/synthetic.hpp"

namespace ccit {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nlohmann::json params_json(const ClassifierParams& p) {
    return {{"rounds", p.rounds},
            {"max_depth", p.max_depth},
            {"learning_rate", p.learning_rate},
            {"min_leaf", p.min_leaf},
            {"l2_reg", p.l2_reg}};
}

nlohmann::json tau_json(double tau) {
    return tau < 0.0 ? nlohmann::json("auto") : nlohmann::json(tau);
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& config) {
    if (config.dz.empty()) throw std::invalid_argument("run_benchmark: dz list is empty");
    for (int dz : config.dz)
        if (dz < 1) throw std::invalid_argument("run_benchmark: dz entries must be >= 1");
    if (config.datasets < 2)
        throw std::invalid_argument("run_benchmark: need at least 2 datasets per point");
    if (config.n == 0) throw std::invalid_argument("run_benchmark: n must be positive");
    config.params.validate();

    const double tau = config.tau < 0.0 ? default_tau(config.n) : config.tau;

    BenchReport report;
    report.config = config;
    for (std::size_t pi = 0; pi < config.dz.size(); ++pi) {
        const int dz = config.dz[pi];
        const std::uint64_t point_seed = derive_seed(config.seed, 1000 + pi);
        BenchPoint point;
        point.d_z = dz;
        point.per_dataset.resize(config.datasets);

        // Datasets are independent; the per-run bootstrap parallelism is
        // disabled automatically inside this region.
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < config.datasets; ++i) {
            const auto t0 = std::chrono::steady_clock::now();
            const bool dependent = 2 * i >= config.datasets;  // first half H0
            const PnlConfig pnl = PnlConfig::make(3 * config.n, dz, dependent,
                                                  derive_seed(point_seed, 2 * i));
            const auto [dataset, truth] = gen_pnl(pnl);
            const AggregateResult agg =
                ccit_bootstrap(dataset, config.B, tau, config.variant, config.params,
                               derive_seed(point_seed, 2 * i + 1));
            point.per_dataset[i] = {truth, agg.score, seconds_since(t0)};
        }

        std::vector<double> scores;
        std::vector<int> labels;
        for (const DatasetScore& s : point.per_dataset) {
            scores.push_back(s.score);
            labels.push_back(s.ground_truth == Verdict::NotCI ? 1 : 0);
        }
        point.auc = roc_auc(scores, labels);
        report.points.push_back(std::move(point));
    }
    return report;
}

nlohmann::json to_json(const BenchReport& report, bool include_timings) {
    nlohmann::json points = nlohmann::json::array();
    for (const BenchPoint& p : report.points) {
        nlohmann::json per_dataset = nlohmann::json::array();
        for (const DatasetScore& s : p.per_dataset) {
            nlohmann::json row{{"ground_truth", to_string(s.ground_truth)}, {"score", s.score}};
            if (include_timings) row["runtime_sec"] = s.runtime_sec;
            per_dataset.push_back(std::move(row));
        }
        points.push_back({{"d_z", p.d_z}, {"auc", p.auc}, {"per_dataset", std::move(per_dataset)}});
    }
    const BenchConfig& c = report.config;
    return {{"config",
             {{"family", "pnl"},
              {"n", c.n},
              {"dz", c.dz},
              {"datasets", c.datasets},
              {"B", c.B},
              {"variant", to_string(c.variant)},
              {"tau", tau_json(c.tau)},
              {"seed", c.seed},
              {"params", params_json(c.params)}}},
            {"points", std::move(points)}};
}

GraphBenchReport run_graph_benchmark(const GraphBenchConfig& config) {
    config.params.validate();
    const CausalGraph graph = CausalGraph::load(config.graph_path);
    const Table table = load_table(config.data_path);

    std::vector<Relation> relations;
    GraphBenchReport report;
    {
        std::vector<Relation> ci = gen_ci_relations(graph);
        std::vector<Relation> usable;
        for (Relation& r : ci) {
            if (r.z_nodes.empty()) {
                ++report.skipped_empty_z;
                std::cerr << "warning: skipping CI relation (" << r.x_node << ", " << r.y_node
                          << ") with empty conditioning set\n";
            } else {
                usable.push_back(std::move(r));
            }
        }
        if (config.max_ci > 0 && static_cast<int>(usable.size()) > config.max_ci) {
            // Even-stride subsample keeps the sweep's coverage.
            std::vector<Relation> picked;
            const double step = static_cast<double>(usable.size()) / config.max_ci;
            for (int k = 0; k < config.max_ci; ++k)
                picked.push_back(usable[static_cast<std::size_t>(k * step)]);
            usable = std::move(picked);
        }
        relations = std::move(usable);
    }
    {
        std::vector<Relation> nonci =
            gen_nonci_relations(graph, config.nonci, config.cond_size, derive_seed(config.seed, 1));
        relations.insert(relations.end(), nonci.begin(), nonci.end());
    }
    if (relations.empty()) throw std::runtime_error("graph benchmark: no usable relations");

    report.per_relation.resize(relations.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < relations.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const Dataset dataset = slice_relation(table, relations[i]);
        const double tau =
            config.tau < 0.0 ? default_tau(dataset.size() / 3) : config.tau;
        const AggregateResult agg = ccit_bootstrap(dataset, config.B, tau, config.variant,
                                                   config.params, derive_seed(config.seed, 100 + i));
        report.per_relation[i] = {relations[i], agg.score, seconds_since(t0)};
    }

    std::vector<double> scores;
    std::vector<int> labels;
    for (const RelationScore& s : report.per_relation) {
        scores.push_back(s.score);
        labels.push_back(s.relation.label == Verdict::NotCI ? 1 : 0);
    }
    report.auc = roc_auc(scores, labels);
    return report;
}

nlohmann::json to_json(const GraphBenchReport& report, const GraphBenchConfig& config,
                       bool include_timings) {
    nlohmann::json per_relation = nlohmann::json::array();
    for (const RelationScore& s : report.per_relation) {
        nlohmann::json row{{"x", s.relation.x_node},
                           {"y", s.relation.y_node},
                           {"z", s.relation.z_nodes},
                           {"label", to_string(s.relation.label)},
                           {"score", s.score}};
        if (include_timings) row["runtime_sec"] = s.runtime_sec;
        per_relation.push_back(std::move(row));
    }
    return {{"config",
             {{"family", "graph"},
              {"graph", config.graph_path},
              {"data", config.data_path},
              {"nonci", config.nonci},
              {"cond_size", config.cond_size},
              {"max_ci", config.max_ci},
              {"B", config.B},
              {"variant", to_string(config.variant)},
              {"tau", tau_json(config.tau)},
              {"seed", config.seed},
              {"params", params_json(config.params)}}},
            {"auc", report.auc},
            {"skipped_empty_z", report.skipped_empty_z},
            {"per_relation", std::move(per_relation)}};
}

}  // namespace ccit
