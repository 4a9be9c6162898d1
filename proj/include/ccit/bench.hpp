#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccit/ccit.hpp"
#include "ccit/relations.hpp"

#include "json.hpp"

namespace ccit {

/// Synthetic benchmark: per Z-dimension, `datasets` post-nonlinear datasets
/// (first half conditionally independent, second half dependent), each scored
/// by a B-run bootstrap; AUC of scores against ground truth per dimension.
///
/// n counts samples per partition, so each generated dataset has 3n rows (the
/// test consumes three equal parts) and the evaluation sets have n rows.
struct BenchConfig {
    std::size_t n = 1000;
    std::vector<int> dz = {1, 5, 20};
    int datasets = 40;
    int B = 10;
    Variant variant = Variant::V2;
    ClassifierParams params;
    double tau = -1.0;  // < 0 resolves to default_tau(n_test) per dataset
    std::uint64_t seed = 0;
};

struct DatasetScore {
    Verdict ground_truth = Verdict::CI;
    double score = 0.0;
    double runtime_sec = 0.0;
};

struct BenchPoint {
    int d_z = 0;
    double auc = 0.0;
    std::vector<DatasetScore> per_dataset;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchPoint> points;
};

BenchReport run_benchmark(const BenchConfig& config);

// Timings vary run to run, so they are serialized only on request; the
// default output is byte-identical across re-runs with the same seed.
nlohmann::json to_json(const BenchReport& report, bool include_timings = false);

/// Graph-derived benchmark: CI relations from the blanket sweep plus sampled
/// NotCI relations, each sliced from an observational table and scored.
struct GraphBenchConfig {
    std::string graph_path, data_path;
    int nonci = 50;
    int cond_size = 3;
    int max_ci = 0;  // 0 keeps all CI relations; otherwise an even-stride subsample
    int B = 50;
    Variant variant = Variant::V2;
    ClassifierParams params;
    double tau = -1.0;
    std::uint64_t seed = 0;
};

struct RelationScore {
    Relation relation;
    double score = 0.0;
    double runtime_sec = 0.0;
};

struct GraphBenchReport {
    double auc = 0.0;
    std::vector<RelationScore> per_relation;
    int skipped_empty_z = 0;
};

GraphBenchReport run_graph_benchmark(const GraphBenchConfig& config);

nlohmann::json to_json(const GraphBenchReport& report, const GraphBenchConfig& config,
                       bool include_timings = false);

}  // namespace ccit
