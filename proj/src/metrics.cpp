#include "ccit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ccit {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw std::invalid_argument("roc_auc: length mismatch");
    if (scores.empty()) throw std::invalid_argument("roc_auc: empty input");
    std::size_t n1 = 0;
    for (int l : labels) {
        if (l != 0 && l != 1) throw std::invalid_argument("roc_auc: labels must be 0 or 1");
        n1 += l;
    }
    const std::size_t n0 = labels.size() - n1;
    if (n1 == 0 || n0 == 0) throw std::invalid_argument("roc_auc: both classes required");

    // Normalized Mann-Whitney U via mid-ranks: ties contribute 0.5 per pair.
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based average
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1) rank_sum_pos += mid_rank;
        i = j;
    }
    const double u = rank_sum_pos - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
    return u / (static_cast<double>(n1) * static_cast<double>(n0));
}

double tv_histogram_estimate(std::span<const double> sa, std::size_t na,
                             std::span<const double> sb, std::size_t nb, int dim,
                             int bins_per_dim) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("tv_histogram_estimate: dim must be 1 or 2");
    if (na == 0 || nb == 0) throw std::invalid_argument("tv_histogram_estimate: empty sample");
    if (bins_per_dim < 1) throw std::invalid_argument("tv_histogram_estimate: bins must be >= 1");
    const std::size_t d = static_cast<std::size_t>(dim);
    if (sa.size() != na * d || sb.size() != nb * d)
        throw std::invalid_argument("tv_histogram_estimate: buffer size mismatch");

    double lo[2], hi[2];
    for (std::size_t j = 0; j < d; ++j) {
        lo[j] = sa[j];
        hi[j] = sa[j];
    }
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], sa[i * d + j]);
            hi[j] = std::max(hi[j], sa[i * d + j]);
        }
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], sb[i * d + j]);
            hi[j] = std::max(hi[j], sb[i * d + j]);
        }

    const int bins = bins_per_dim;
    auto cell_of = [&](const double* p) {
        std::size_t cell = 0;
        for (std::size_t j = 0; j < d; ++j) {
            int bj = 0;
            const double width = hi[j] - lo[j];
            if (width > 0.0)
                bj = std::min(bins - 1,
                              static_cast<int>((p[j] - lo[j]) / width * static_cast<double>(bins)));
            cell = cell * static_cast<std::size_t>(bins) + static_cast<std::size_t>(bj);
        }
        return cell;
    };

    std::size_t n_cells = 1;
    for (std::size_t j = 0; j < d; ++j) n_cells *= static_cast<std::size_t>(bins);
    std::vector<double> pa(n_cells, 0.0), pb(n_cells, 0.0);
    for (std::size_t i = 0; i < na; ++i) pa[cell_of(sa.data() + i * d)] += 1.0 / static_cast<double>(na);
    for (std::size_t i = 0; i < nb; ++i) pb[cell_of(sb.data() + i * d)] += 1.0 / static_cast<double>(nb);

    double tv = 0.0;
    for (std::size_t c = 0; c < n_cells; ++c) tv += std::abs(pa[c] - pb[c]);
    return 0.5 * tv;
}

double TVBoundParams::g(double delta) const {
    if (g_of.empty()) return 0.0;
    if (delta <= g_of.front().first) return g_of.front().second;
    if (delta >= g_of.back().first) return g_of.back().second;
    for (std::size_t i = 1; i < g_of.size(); ++i) {
        if (delta <= g_of[i].first) {
            const auto [d0, v0] = g_of[i - 1];
            const auto [d1, v1] = g_of[i];
            return v0 + (v1 - v0) * (delta - d0) / (d1 - d0);
        }
    }
    return g_of.back().second;
}

void TVBoundParams::validate() const {
    if (!(beta >= 0.0)) throw std::invalid_argument("TVBoundParams: beta must be >= 0");
    if (!(c3 > 0.0)) throw std::invalid_argument("TVBoundParams: c3 must be > 0");
    if (!(c_d > 0.0)) throw std::invalid_argument("TVBoundParams: c_d must be > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("TVBoundParams: eps must be > 0");
    if (!(radical_constant > 0.0))
        throw std::invalid_argument("TVBoundParams: radical_constant must be > 0");
    for (std::size_t i = 0; i < g_of.size(); ++i) {
        const auto [delta, value] = g_of[i];
        if (value < 0.0 || value > 1.0)
            throw std::invalid_argument("TVBoundParams: G values must lie in [0, 1]");
        if (i > 0 && (delta <= g_of[i - 1].first || value < g_of[i - 1].second))
            throw std::invalid_argument("TVBoundParams: G table must be increasing in delta and "
                                        "nondecreasing in value");
    }
}

double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be >= 1");
    const double dd = static_cast<double>(d);
    return std::pow(M_PI, dd / 2.0) / std::tgamma(dd / 2.0 + 1.0);
}

double theorem1_bound(std::size_t n, int d_z, const TVBoundParams& p) {
    if (n < 1) throw std::invalid_argument("theorem1_bound: n must be >= 1");
    if (d_z < 1) throw std::invalid_argument("theorem1_bound: d_z must be >= 1");
    p.validate();

    const double d = static_cast<double>(d_z);
    const double gamma_d = unit_ball_volume(d_z);
    const double g_val = p.g(2.0 * p.c_d * p.eps * p.eps);

    const double radical =
        p.beta / 4.0 * p.c3 * std::pow(p.radical_constant, 1.0 / d) * std::tgamma(1.0 / d) /
            (std::pow(static_cast<double>(n) * gamma_d, 1.0 / d) * d) +
        p.beta * p.eps * g_val / 4.0;
    const double tail =
        std::exp(-0.5 * static_cast<double>(n) * gamma_d * p.c_d * std::pow(p.eps, d + 2.0));
    return 0.5 * std::sqrt(radical) + tail + g_val;
}

}  // namespace ccit
