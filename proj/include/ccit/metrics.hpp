#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ccit {

/// ROC AUC as the normalized Mann-Whitney U statistic: the probability that a
/// random positive-label score exceeds a random negative-label score, ties
/// credited 0.5. Requires both classes present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

/// Plug-in total-variation estimate between two samples (d <= 2): a common
/// bounding box, a uniform grid of bins_per_dim^d cells, and half the L1
/// distance between the two cell histograms.
double tv_histogram_estimate(std::span<const double> sa, std::size_t na,
                             std::span<const double> sb, std::size_t nb, int dim,
                             int bins_per_dim = 32);

/// Smoothness constants for the bootstrap closeness bound. g_of tabulates the
/// nondecreasing function delta -> G(delta) in [0,1] as breakpoints with
/// linear interpolation (clamped outside, empty table == identically 0).
struct TVBoundParams {
    double beta = 0.0;          // curvature bound
    double c3 = 1.0;            // integral bound
    double c_d = 1.0;           // Hessian bound
    double eps = 0.1;           // localization radius
    double radical_constant = 2.0;  // the per-dimension constant under the radical;
                                    // 2 matches the headline statement, 4 the restated variant
    std::vector<std::pair<double, double>> g_of;

    double g(double delta) const;
    void validate() const;
};

/// Closed-form upper bound b(n) on the total variation distance between the
/// distribution of a bootstrapped sample and the conditionally independent
/// factorization:
///   b(n) = 1/2 * sqrt( beta/4 * c3 * k^(1/d) * Gamma(1/d) / ((n*gamma_d)^(1/d) * d)
///                      + beta * eps * G(2*c_d*eps^2) / 4 )
///          + exp(-1/2 * n * gamma_d * c_d * eps^(d+2)) + G(2*c_d*eps^2)
/// with gamma_d the unit-ball volume and k the radical constant.
double theorem1_bound(std::size_t n, int d_z, const TVBoundParams& p);

/// Volume of the unit l2 ball in R^d.
double unit_ball_volume(int d);

}  // namespace ccit
