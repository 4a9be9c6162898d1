// Command-line front end: `test`, `bench`, `gen` and `relations` subcommands.
// Machine-readable JSON goes to stdout (or --out), diagnostics to stderr.
// Exit codes: 0 ran, 2 usage error, 3 data error.

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccit/bench.hpp"
#include "ccit/ccit.hpp"
#include "ccit/dataset.hpp"
#include "ccit/relations.hpp"
#include "ccit/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_tau(const std::string& tau_str, std::size_t n_test) {
    if (tau_str == "auto") return ccit::default_tau(n_test);
    try {
        std::size_t pos = 0;
        const double tau = std::stod(tau_str, &pos);
        if (pos != tau_str.size() || tau < 0.0) throw std::invalid_argument("");
        return tau;
    } catch (const std::exception&) {
        throw UsageError("--tau must be 'auto' or a nonnegative number, got '" + tau_str + "'");
    }
}

std::vector<int> parse_int_list(const std::string& expr, const char* flag) {
    std::vector<int> out;
    std::stringstream ss(expr);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v < 1) throw std::invalid_argument("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": invalid list entry '" + tok + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
    return out;
}

ccit::Variant parse_variant(const std::string& s) {
    if (s == "v1") return ccit::Variant::V1;
    if (s == "v2") return ccit::Variant::V2;
    throw UsageError("--variant must be v1 or v2");
}

void emit(const nlohmann::json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output path: " + out_path);
        out << text;
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output path: " + out_path);
        out << text;
    }
}

struct CommonFlags {
    std::uint64_t seed = 0;
    int jobs = 0;
    std::string out;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (mandatory; no wall-clock entropy)")->required();
        cmd->add_option("--jobs", jobs, "worker thread cap (default: all cores)");
        cmd->add_option("--out", out, "output path (default: stdout)");
    }
    void apply_jobs() const {
        if (jobs > 0) omp_set_num_threads(jobs);
    }
};

struct ClassifierFlags {
    ccit::ClassifierParams params;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--rounds", params.rounds, "boosting rounds");
        cmd->add_option("--depth", params.max_depth, "tree depth");
        cmd->add_option("--learning-rate", params.learning_rate, "shrinkage");
        cmd->add_option("--min-leaf", params.min_leaf, "min samples per leaf");
        cmd->add_option("--l2", params.l2_reg, "leaf weight L2 penalty");
    }
};

int cmd_test(const std::string& data, const std::string& x, const std::string& y,
             const std::string& z, int B, const std::string& tau_str,
             const std::string& variant_str, const ClassifierFlags& clf, const CommonFlags& common) {
    if (B < 1) throw UsageError("--B must be >= 1");
    const ccit::Variant variant = parse_variant(variant_str);
    common.apply_jobs();

    const ccit::Dataset dataset = ccit::load_csv(data, ccit::parse_colspec(x, y, z));
    const double tau = parse_tau(tau_str, dataset.size() / 3 == 0 ? 1 : dataset.size() / 3);
    const ccit::AggregateResult agg =
        ccit::ccit_bootstrap(dataset, B, tau, variant, clf.params, common.seed);
    emit(ccit::to_json(agg), common.out);
    return kExitOk;
}

int cmd_bench_pnl(std::size_t n, const std::string& dz_expr, int datasets, int B,
                  const std::string& tau_str, const std::string& variant_str, bool timings,
                  const ClassifierFlags& clf, const CommonFlags& common) {
    common.apply_jobs();
    ccit::BenchConfig config;
    config.n = n;
    config.dz = parse_int_list(dz_expr, "--dz");
    config.datasets = datasets;
    config.B = B;
    config.variant = parse_variant(variant_str);
    config.params = clf.params;
    config.tau = tau_str == "auto" ? -1.0 : parse_tau(tau_str, 1);
    config.seed = common.seed;
    const ccit::BenchReport report = ccit::run_benchmark(config);
    emit(ccit::to_json(report, timings), common.out);
    return kExitOk;
}

int cmd_bench_graph(const std::string& graph, const std::string& data, int nonci, int cond_size,
                    int max_ci, int B, const std::string& tau_str, const std::string& variant_str,
                    bool timings, const ClassifierFlags& clf, const CommonFlags& common) {
    common.apply_jobs();
    ccit::GraphBenchConfig config;
    config.graph_path = graph;
    config.data_path = data;
    config.nonci = nonci;
    config.cond_size = cond_size;
    config.max_ci = max_ci;
    config.B = B;
    config.variant = parse_variant(variant_str);
    config.params = clf.params;
    config.tau = tau_str == "auto" ? -1.0 : parse_tau(tau_str, 1);
    config.seed = common.seed;
    const ccit::GraphBenchReport report = ccit::run_graph_benchmark(config);
    emit(ccit::to_json(report, config, timings), common.out);
    return kExitOk;
}

int cmd_gen(std::size_t n, int dz, bool dependent, double var_eta, bool force,
            const CommonFlags& common) {
    if (common.out.empty()) throw UsageError("gen requires --out <prefix>");
    const std::string csv_path = common.out + ".csv";
    const std::string json_path = common.out + ".json";
    if (!force && (std::filesystem::exists(csv_path) || std::filesystem::exists(json_path)))
        throw std::runtime_error("output exists (use --force to overwrite): " + csv_path);

    const ccit::PnlConfig config = ccit::PnlConfig::make(n, dz, dependent, common.seed, var_eta);
    const auto [dataset, truth] = ccit::gen_pnl(config);

    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open output path: " + csv_path);
    csv << "x0,y0";
    for (int j = 0; j < dz; ++j) csv << ",z" << j;
    csv << "\n";
    csv.precision(17);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto row = dataset.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) csv << (j ? "," : "") << row[j];
        csv << "\n";
    }

    const nlohmann::json sidecar{{"seed", config.seed},     {"a", config.a},
                                 {"b", config.b},           {"c", config.c},
                                 {"var_eta", config.var_eta},
                                 {"ground_truth", ccit::to_string(truth)}};
    std::ofstream meta(json_path);
    if (!meta) throw std::runtime_error("cannot open output path: " + json_path);
    meta << sidecar.dump(2) << "\n";
    std::cerr << "wrote " << csv_path << " and " << json_path << "\n";
    return kExitOk;
}

int cmd_relations(const std::string& graph_path, int nonci, int cond_size,
                  const CommonFlags& common) {
    const ccit::CausalGraph graph = ccit::CausalGraph::load(graph_path);
    std::ostringstream lines;
    auto emit_relation = [&](const ccit::Relation& r) {
        const nlohmann::json row{
            {"x", r.x_node}, {"y", r.y_node}, {"z", r.z_nodes}, {"label", ccit::to_string(r.label)}};
        lines << row.dump() << "\n";
    };
    for (const ccit::Relation& r : ccit::gen_ci_relations(graph)) emit_relation(r);
    if (nonci > 0)
        for (const ccit::Relation& r :
             ccit::gen_nonci_relations(graph, nonci, cond_size, common.seed))
            emit_relation(r);
    emit_text(lines.str(), common.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classifier-based conditional independence testing"};
    app.require_subcommand(1);

    // test
    auto* test = app.add_subcommand("test", "run the CI test on a CSV dataset");
    std::string data, x_expr, y_expr, z_expr;
    int B = 50;
    std::string tau_str = "auto", variant_str = "v2";
    test->add_option("--data", data, "input CSV (header row required)")->required();
    test->add_option("--x", x_expr, "X columns (names or index ranges)")->required();
    test->add_option("--y", y_expr, "Y columns")->required();
    test->add_option("--z", z_expr, "Z columns")->required();
    test->add_option("--B", B, "bootstrap runs (default 50)");
    test->add_option("--tau", tau_str, "decision threshold, number or 'auto' (1/sqrt(n_test))");
    test->add_option("--variant", variant_str, "v1 or v2 (default v2; v1 is biased for finite n)");
    ClassifierFlags test_clf;
    test_clf.add_to(test);
    CommonFlags test_common;
    test_common.add_to(test);

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark harness (synthetic or graph-derived)");
    std::string family = "pnl", dz_expr = "1,5,20", preset;
    std::size_t bench_n = 1000;
    int datasets = 40, bench_B = 10;
    std::string bench_tau = "auto", bench_variant = "v2";
    bool timings = false;
    std::string graph_path, bench_data;
    int nonci = 50, cond_size = 3, max_ci = 0, graph_B = 50;
    bench->add_option("--family", family, "pnl or graph (default pnl)");
    bench->add_option("--preset", preset, "'desk' expands to the desk-scale sweep");
    bench->add_option("--n", bench_n, "samples per partition (each dataset has 3n rows)");
    bench->add_option("--dz", dz_expr, "comma list of Z dimensions");
    bench->add_option("--datasets", datasets, "datasets per dimension (half H0, half H1)");
    bench->add_option("--B", bench_B, "bootstrap runs per dataset");
    bench->add_option("--tau", bench_tau, "threshold, number or 'auto'");
    bench->add_option("--variant", bench_variant, "v1 or v2");
    bench->add_flag("--timings", timings, "include per-dataset runtimes in the JSON");
    bench->add_option("--graph", graph_path, "graph file (family=graph)");
    bench->add_option("--data", bench_data, "observational CSV (family=graph)");
    bench->add_option("--nonci", nonci, "NotCI relations to sample (family=graph)");
    bench->add_option("--cond-size", cond_size, "conditioning set size (family=graph)");
    bench->add_option("--max-ci", max_ci, "cap on CI relations, 0 = all (family=graph)");
    bench->add_option("--graph-B", graph_B, "bootstrap runs per relation (family=graph)");
    ClassifierFlags bench_clf;
    bench_clf.add_to(bench);
    CommonFlags bench_common;
    bench_common.add_to(bench);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a post-nonlinear synthetic dataset");
    std::size_t gen_n = 1000;
    int gen_dz = 1;
    bool dependent = false, force = false;
    double var_eta = 0.25;
    gen->add_option("--n", gen_n, "sample count");
    gen->add_option("--dz", gen_dz, "Z dimension");
    gen->add_flag("--dependent,!--no-dependent", dependent, "generate the dependent (H1) case");
    gen->add_option("--var-eta", var_eta, "noise variance (default 0.25)");
    gen->add_flag("--force", force, "overwrite existing output files");
    CommonFlags gen_common;
    gen_common.add_to(gen);

    // relations
    auto* relations = app.add_subcommand("relations", "emit CI/NotCI relations for a causal graph");
    std::string rel_graph;
    int rel_nonci = 50, rel_cond = 3;
    relations->add_option("--graph", rel_graph, "graph file: one 'parent -> child' per line")
        ->required();
    relations->add_option("--nonci", rel_nonci, "NotCI relations to sample (default 50)");
    relations->add_option("--cond-size", rel_cond, "conditioning set size (default 3)");
    CommonFlags rel_common;
    rel_common.add_to(relations);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*test)
            return cmd_test(data, x_expr, y_expr, z_expr, B, tau_str, variant_str, test_clf,
                            test_common);
        if (*bench) {
            if (preset == "desk") {
                bench_n = 1000;
                dz_expr = "1,5,20";
                datasets = 40;
                bench_B = 10;
                bench_variant = "v2";
                bench_tau = "auto";
            } else if (!preset.empty()) {
                throw UsageError("unknown preset '" + preset + "'");
            }
            if (family == "pnl")
                return cmd_bench_pnl(bench_n, dz_expr, datasets, bench_B, bench_tau, bench_variant,
                                     timings, bench_clf, bench_common);
            if (family == "graph") {
                if (graph_path.empty() || bench_data.empty())
                    throw UsageError("family=graph requires --graph and --data");
                return cmd_bench_graph(graph_path, bench_data, nonci, cond_size, max_ci, graph_B,
                                       bench_tau, bench_variant, timings, bench_clf, bench_common);
            }
            throw UsageError("--family must be pnl or graph");
        }
        if (*gen) return cmd_gen(gen_n, gen_dz, dependent, var_eta, force, gen_common);
        if (*relations) return cmd_relations(rel_graph, rel_nonci, rel_cond, rel_common);
        throw UsageError("no subcommand");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
