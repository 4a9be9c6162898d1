#include "ccit/synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace ccit;

TEST(SampleUnitVector, OneDimensionIsSign) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto v = sample_unit_vector(1, seed);
        EXPECT_DOUBLE_EQ(std::abs(v[0]), 1.0);
    }
}

TEST(SampleUnitVector, UnitNormAndDeterminism) {
    for (int d : {2, 5, 20}) {
        const auto v = sample_unit_vector(d, 42);
        double norm2 = 0.0;
        for (double x : v) norm2 += x * x;
        EXPECT_NEAR(std::sqrt(norm2), 1.0, 1e-12);
        EXPECT_EQ(v, sample_unit_vector(d, 42));
    }
    EXPECT_THROW(sample_unit_vector(0, 1), std::invalid_argument);
}

TEST(PnlConfig, MakeDrawsCouplingOnlyWhenDependent) {
    const PnlConfig ind = PnlConfig::make(10, 3, false, 5);
    EXPECT_EQ(ind.c, 0.0);
    EXPECT_NO_THROW(ind.validate());
    const PnlConfig dep = PnlConfig::make(10, 3, true, 5);
    EXPECT_GT(dep.c, 0.0);
    EXPECT_LE(dep.c, 2.0);
    EXPECT_DOUBLE_EQ(dep.var_eta, 0.25);  // paper default
}

TEST(PnlConfig, ValidationErrors) {
    PnlConfig cfg = PnlConfig::make(10, 2, false, 1);
    cfg.c = 0.5;  // c must be 0 when independent
    EXPECT_THROW(cfg.validate(), std::invalid_argument);

    cfg = PnlConfig::make(10, 2, true, 1);
    cfg.c = 2.5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);

    cfg = PnlConfig::make(10, 2, true, 1);
    cfg.a = {1.0, 1.0};  // not unit norm
    EXPECT_THROW(cfg.validate(), std::invalid_argument);

    cfg = PnlConfig::make(10, 2, false, 1);
    cfg.var_eta = 0.0;  // noiseless rejected by the public entry point
    EXPECT_THROW(gen_pnl(cfg), std::invalid_argument);
}

TEST(GenPnl, BoundedAndPure) {
    const PnlConfig cfg = PnlConfig::make(500, 4, true, 77);
    const auto [a, v1] = gen_pnl(cfg);
    const auto [b, v2] = gen_pnl(cfg);
    EXPECT_EQ(v1, Verdict::NotCI);
    EXPECT_EQ(v2, Verdict::NotCI);
    EXPECT_EQ(a.values(), b.values());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_LE(std::abs(a.x(i)[0]), 1.0);
        EXPECT_LE(std::abs(a.y(i)[0]), 1.0);
    }
}

TEST(GenPnl, GroundTruthFollowsDependence) {
    const auto [ds_ci, v_ci] = gen_pnl(PnlConfig::make(30, 1, false, 3));
    EXPECT_EQ(v_ci, Verdict::CI);
    const auto [ds_dep, v_dep] = gen_pnl(PnlConfig::make(30, 1, true, 3));
    EXPECT_EQ(v_dep, Verdict::NotCI);
    EXPECT_EQ(ds_ci.size(), 30u);
    EXPECT_EQ(ds_dep.dims(), (DimSpec{1, 1, 1}));
}

TEST(GenPnl, NoiselessHookGivesExactIdentities) {
    PnlConfig cfg = PnlConfig::make(50, 3, false, 9);
    cfg.var_eta = 0.0;
    const auto [ds, truth] = detail::gen_pnl_impl(cfg);
    EXPECT_EQ(truth, Verdict::CI);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double az = 0.0, bz = 0.0;
        for (int j = 0; j < 3; ++j) {
            az += cfg.a[j] * ds.z(i)[j];
            bz += cfg.b[j] * ds.z(i)[j];
        }
        EXPECT_DOUBLE_EQ(ds.x(i)[0], std::cos(az));
        EXPECT_DOUBLE_EQ(ds.y(i)[0], std::cos(bz));
    }
}

TEST(GenPnl, ZMomentsMatchLawOfLargeNumbers) {
    const std::size_t n = 100000;
    const auto [ds, truth] = gen_pnl(PnlConfig::make(n, 2, false, 123));
    (void)truth;
    for (int j = 0; j < 2; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += ds.z(i)[j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) var += (ds.z(i)[j] - mean) * (ds.z(i)[j] - mean);
        var /= static_cast<double>(n - 1);
        EXPECT_NEAR(mean, 1.0, 3.0 / std::sqrt(static_cast<double>(n)));
        EXPECT_NEAR(var, 1.0, 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
    }
}

TEST(PnlSampler, IndependentCaseIsPlainConditional) {
    const PnlConfig cfg = PnlConfig::make(0, 2, false, 31);
    const PnlSampler sampler = pnl_conditional_samplers(cfg);
    Rng r1(5), r2(5);
    std::vector<double> z(2), y1(1), y2(1);
    sampler.sample_z(r1, z.data());
    sampler.sample_z(r2, z.data());
    sampler.sample_y_given_z(r1, z.data(), y1.data());
    sampler.sample_y_given_z(r2, z.data(), y2.data());
    EXPECT_EQ(y1[0], y2[0]);  // same RNG stream, same draw
    EXPECT_LE(std::abs(y1[0]), 1.0);
}

TEST(PnlSampler, DependentCaseDrawsInternalX) {
    // With noise off, the dependent-case y|z still varies across calls at the
    // same z: the internal x* draw is its own randomness.
    PnlConfig cfg = PnlConfig::make(0, 1, true, 32);
    cfg.c = 2.0;
    cfg.var_eta = 1e-12;  // nearly noiseless so variation comes from x*
    const PnlSampler sampler(cfg);
    Rng rng(6);
    const std::vector<double> z{0.3};
    std::vector<double> draws;
    for (int i = 0; i < 16; ++i) {
        double y;
        sampler.sample_y_given_z(rng, z.data(), &y);
        EXPECT_LE(std::abs(y), 1.0);
        draws.push_back(y);
    }
    const double spread = *std::max_element(draws.begin(), draws.end()) -
                          *std::min_element(draws.begin(), draws.end());
    EXPECT_GT(spread, 1e-6);
}
