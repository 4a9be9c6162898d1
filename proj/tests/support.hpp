// Shared test utilities and independent oracles. Everything here is
// deliberately written against the math, not the library internals, so the
// checks stay meaningful.
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccit/dataset.hpp"
#include "ccit/metrics.hpp"
#include "ccit/relations.hpp"

namespace testsupport {

inline ccit::Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                                  ccit::DimSpec dims) {
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return ccit::Dataset(std::move(flat), rows.size(), dims);
}

// ---- d-separation oracle (reachability over active trails) -----------------

enum class Dir { Up, Down };

inline std::set<int> ancestors_of(const ccit::CausalGraph& g, const std::set<int>& start) {
    std::set<int> anc = start;
    std::deque<int> frontier(start.begin(), start.end());
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        for (int p : g.parents(v))
            if (anc.insert(p).second) frontier.push_back(p);
    }
    return anc;
}

inline bool d_separated(const ccit::CausalGraph& g, const std::string& x, const std::string& y,
                        const std::vector<std::string>& z_names) {
    const int xi = g.index_of(x), yi = g.index_of(y);
    std::set<int> z;
    for (const auto& n : z_names) z.insert(g.index_of(n));
    const std::set<int> anc_z = ancestors_of(g, z);

    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, Dir>> frontier{{xi, Dir::Up}};
    while (!frontier.empty()) {
        const auto [v, dir] = frontier.front();
        frontier.pop_front();
        if (!seen.insert({v, dir == Dir::Up ? 0 : 1}).second) continue;
        if (!z.count(v) && v == yi) return false;  // active trail reaches y
        if (dir == Dir::Up) {
            if (!z.count(v)) {
                for (int p : g.parents(v)) frontier.push_back({p, Dir::Up});
                for (int c : g.children(v)) frontier.push_back({c, Dir::Down});
            }
        } else {
            if (!z.count(v))
                for (int c : g.children(v)) frontier.push_back({c, Dir::Down});
            if (anc_z.count(v))  // collider (or its descendant) observed
                for (int p : g.parents(v)) frontier.push_back({p, Dir::Up});
        }
    }
    return true;
}

// ---- exhaustive pairwise AUC ------------------------------------------------

inline double pairwise_auc(std::span<const double> scores, std::span<const int> labels) {
    double credit = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j])
                credit += 1.0;
            else if (scores[i] == scores[j])
                credit += 0.5;
        }
    }
    return credit / static_cast<double>(pairs);
}

// ---- long-double re-evaluation of the TV bound ------------------------------
// Composed differently from the implementation (log-space products, lgammal)
// so the two routes are independent.

inline long double g_table_eval(const ccit::TVBoundParams& p, long double delta) {
    if (p.g_of.empty()) return 0.0L;
    if (delta <= p.g_of.front().first) return p.g_of.front().second;
    if (delta >= p.g_of.back().first) return p.g_of.back().second;
    for (std::size_t i = 1; i < p.g_of.size(); ++i) {
        if (delta <= p.g_of[i].first) {
            const long double d0 = p.g_of[i - 1].first, v0 = p.g_of[i - 1].second;
            const long double d1 = p.g_of[i].first, v1 = p.g_of[i].second;
            return v0 + (v1 - v0) * (delta - d0) / (d1 - d0);
        }
    }
    return p.g_of.back().second;
}

inline long double theorem1_bound_oracle(std::size_t n, int d_z, const ccit::TVBoundParams& p) {
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double d = static_cast<long double>(d_z);
    const long double log_gamma_d = (d / 2.0L) * std::log(pi) - std::lgamma(d / 2.0L + 1.0L);
    const long double gamma_d = std::exp(log_gamma_d);
    const long double g_val = g_table_eval(p, 2.0L * p.c_d * p.eps * p.eps);

    const long double log_first = std::log(static_cast<long double>(p.c3)) +
                                  std::log(static_cast<long double>(p.radical_constant)) / d +
                                  std::lgamma(1.0L / d) -
                                  (std::log(static_cast<long double>(n)) + log_gamma_d) / d -
                                  std::log(d);
    const long double radical =
        static_cast<long double>(p.beta) / 4.0L * std::exp(log_first) +
        static_cast<long double>(p.beta) * p.eps * g_val / 4.0L;
    const long double tail = std::exp(-0.5L * static_cast<long double>(n) * gamma_d * p.c_d *
                                      std::pow(static_cast<long double>(p.eps), d + 2.0L));
    return 0.5L * std::sqrt(radical) + tail + g_val;
}

}  // namespace testsupport
