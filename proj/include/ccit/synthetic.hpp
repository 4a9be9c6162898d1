#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccit/bootstrap.hpp"
#include "ccit/ccit.hpp"
#include "ccit/dataset.hpp"

namespace ccit {

/// Post-nonlinear-noise family: Z ~ N(1,1)^{d_z}, X = cos(a'Z + eta1) and
/// Y = cos(b'Z + c*X + eta2), with c = 0 in the conditionally independent
/// case. a and b are unit vectors fixed per dataset.
struct PnlConfig {
    std::size_t n = 0;
    int d_z = 1;
    bool dependent = false;
    double var_eta = 0.25;
    double c = 0.0;  // coupling; 0 iff not dependent
    std::vector<double> a, b;
    std::uint64_t seed = 0;

    // Draws a, b (normalized Gaussian directions) and, when dependent,
    // c ~ U[0, 2] from the seed.
    static PnlConfig make(std::size_t n, int d_z, bool dependent, std::uint64_t seed,
                          double var_eta = 0.25);

    void validate(bool allow_noiseless = false) const;
};

/// Standard-normal vector normalized to unit length.
std::vector<double> sample_unit_vector(int d, std::uint64_t seed);

/// Generates the dataset plus its ground-truth verdict (CI iff not dependent).
std::pair<Dataset, Verdict> gen_pnl(const PnlConfig& config);

/// Conditional samplers of the family, with X marginalized out of the
/// dependent-case Y draw; feeds the f^CI oracle.
class PnlSampler final : public ConditionalSampler {
public:
    explicit PnlSampler(PnlConfig config);
    DimSpec dims() const override;
    void sample_z(Rng& rng, double* z_out) const override;
    void sample_x_given_z(Rng& rng, const double* z, double* x_out) const override;
    void sample_y_given_z(Rng& rng, const double* z, double* y_out) const override;

private:
    PnlConfig config_;
    double noise_sd_;
};

PnlSampler pnl_conditional_samplers(const PnlConfig& config);

namespace detail {
// Test hook: accepts var_eta == 0 so unit tests get exact row identities.
// The public gen_pnl rejects noiseless configs.
std::pair<Dataset, Verdict> gen_pnl_impl(const PnlConfig& config);
}  // namespace detail

}  // namespace ccit
