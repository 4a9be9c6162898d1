#include "ccit/synthetic.hpp"

#include <cmath>
#include <stdexcept>

namespace ccit {

namespace {
enum : std::uint64_t { kDirectionStream = 11, kCouplingStream = 12, kDataStream = 13 };

double dot(const std::vector<double>& a, const double* z) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * z[j];
    return s;
}
}  // namespace

std::vector<double> sample_unit_vector(int d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("sample_unit_vector: d must be >= 1");
    Rng rng(seed);
    std::vector<double> v(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (int j = 0; j < d; ++j) {
            v[j] = rng.normal();
            norm2 += v[j] * v[j];
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    return v;
}

PnlConfig PnlConfig::make(std::size_t n, int d_z, bool dependent, std::uint64_t seed,
                          double var_eta) {
    PnlConfig cfg;
    cfg.n = n;
    cfg.d_z = d_z;
    cfg.dependent = dependent;
    cfg.var_eta = var_eta;
    cfg.seed = seed;
    cfg.a = sample_unit_vector(d_z, derive_seed(seed, kDirectionStream));
    cfg.b = sample_unit_vector(d_z, derive_seed(seed, kDirectionStream + 1));
    cfg.c = 0.0;
    if (dependent) {
        Rng rng(derive_seed(seed, kCouplingStream));
        do {
            cfg.c = rng.uniform(0.0, 2.0);
        } while (cfg.c == 0.0);
    }
    return cfg;
}

void PnlConfig::validate(bool allow_noiseless) const {
    if (d_z < 1) throw std::invalid_argument("PnlConfig: d_z must be >= 1");
    if (allow_noiseless ? var_eta < 0.0 : !(var_eta > 0.0))
        throw std::invalid_argument("PnlConfig: var_eta must be positive");
    if (c < 0.0 || c > 2.0) throw std::invalid_argument("PnlConfig: c must be in [0, 2]");
    if (dependent && c == 0.0)
        throw std::invalid_argument("PnlConfig: dependent requires c > 0");
    if (!dependent && c != 0.0)
        throw std::invalid_argument("PnlConfig: c must be 0 when not dependent");
    if (a.size() != static_cast<std::size_t>(d_z) || b.size() != static_cast<std::size_t>(d_z))
        throw std::invalid_argument("PnlConfig: a and b must have d_z entries");
    auto norm2 = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return s;
    };
    if (std::abs(std::sqrt(norm2(a)) - 1.0) > 1e-12 || std::abs(std::sqrt(norm2(b)) - 1.0) > 1e-12)
        throw std::invalid_argument("PnlConfig: a and b must be unit vectors");
}

namespace detail {

std::pair<Dataset, Verdict> gen_pnl_impl(const PnlConfig& config) {
    config.validate(true);
    const DimSpec dims{1, 1, config.d_z};
    const std::size_t w = static_cast<std::size_t>(dims.total());
    const double sd = std::sqrt(config.var_eta);
    std::vector<double> values(config.n * w);
    Rng rng(derive_seed(config.seed, kDataStream));
    for (std::size_t i = 0; i < config.n; ++i) {
        double* row = values.data() + i * w;
        double* z = row + 2;
        for (int j = 0; j < config.d_z; ++j) z[j] = rng.normal(1.0, 1.0);
        const double eta1 = rng.normal(0.0, sd);
        const double eta2 = rng.normal(0.0, sd);
        const double x = std::cos(dot(config.a, z) + eta1);
        row[0] = x;
        row[1] = std::cos(dot(config.b, z) + config.c * x + eta2);
    }
    return {Dataset(std::move(values), config.n, dims),
            config.dependent ? Verdict::NotCI : Verdict::CI};
}

}  // namespace detail

std::pair<Dataset, Verdict> gen_pnl(const PnlConfig& config) {
    config.validate(false);
    return detail::gen_pnl_impl(config);
}

PnlSampler::PnlSampler(PnlConfig config) : config_(std::move(config)) {
    config_.validate(true);
    noise_sd_ = std::sqrt(config_.var_eta);
}

DimSpec PnlSampler::dims() const { return {1, 1, config_.d_z}; }

void PnlSampler::sample_z(Rng& rng, double* z_out) const {
    for (int j = 0; j < config_.d_z; ++j) z_out[j] = rng.normal(1.0, 1.0);
}

void PnlSampler::sample_x_given_z(Rng& rng, const double* z, double* x_out) const {
    x_out[0] = std::cos(dot(config_.a, z) + rng.normal(0.0, noise_sd_));
}

void PnlSampler::sample_y_given_z(Rng& rng, const double* z, double* y_out) const {
    double coupling = 0.0;
    if (config_.dependent) {
        // Marginalize X out with a fresh internal draw, independent of any X
        // the caller generated for this z.
        const double x_star = std::cos(dot(config_.a, z) + rng.normal(0.0, noise_sd_));
        coupling = config_.c * x_star;
    }
    y_out[0] = std::cos(dot(config_.b, z) + coupling + rng.normal(0.0, noise_sd_));
}

PnlSampler pnl_conditional_samplers(const PnlConfig& config) { return PnlSampler(config); }

}  // namespace ccit
