#include "ccit/bootstrap.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ccit/rng.hpp"
#include "ccit/synthetic.hpp"
#include "support.hpp"

using namespace ccit;
using testsupport::make_dataset;

namespace {

Dataset random_dataset(std::size_t n, DimSpec dims, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n * static_cast<std::size_t>(dims.total()));
    for (double& x : v) x = rng.normal();
    return Dataset(std::move(v), n, dims);
}

std::multiset<std::vector<double>> xz_multiset(const Dataset& ds) {
    std::multiset<std::vector<double>> out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::vector<double> key(ds.x(i).begin(), ds.x(i).end());
        key.insert(key.end(), ds.z(i).begin(), ds.z(i).end());
        out.insert(std::move(key));
    }
    return out;
}

}  // namespace

TEST(Datagen, HandVerifiedExample) {
    // u1 z=0.0 is nearer to u2's z=0.1 than z=2.0, so y'=5 is borrowed.
    const Dataset u1 = make_dataset({{0, 0, 0.0}}, {1, 1, 1});
    const Dataset u2 = make_dataset({{9, 5, 0.1}, {8, 7, 2.0}}, {1, 1, 1});
    const BootstrapOutput out = datagen(u1, u2);
    ASSERT_EQ(out.u2_prime.size(), 1u);
    EXPECT_EQ(out.u2_prime.x(0)[0], 0);
    EXPECT_EQ(out.u2_prime.y(0)[0], 5);
    EXPECT_EQ(out.u2_prime.z(0)[0], 0.0);
    EXPECT_EQ(out.source_map[0], (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(Datagen, SingleNeighbor) {
    const Dataset u1 = make_dataset({{1, 2, 3}}, {1, 1, 1});
    const Dataset u2 = make_dataset({{4, 5, 6}}, {1, 1, 1});
    const BootstrapOutput out = datagen(u1, u2);
    EXPECT_EQ(out.u2_prime.x(0)[0], 1);
    EXPECT_EQ(out.u2_prime.y(0)[0], 5);
    EXPECT_EQ(out.u2_prime.z(0)[0], 3);
}

TEST(Datagen, ExactZMatchUsesThatRow) {
    const Dataset u1 = make_dataset({{0, 0, 1.5}}, {1, 1, 1});
    const Dataset u2 = make_dataset({{1, 11, 9.0}, {2, 22, 1.5}, {3, 33, 1.4}}, {1, 1, 1});
    const BootstrapOutput out = datagen(u1, u2);
    EXPECT_EQ(out.u2_prime.y(0)[0], 22);
    EXPECT_EQ(out.source_map[0].second, 1u);
}

TEST(Datagen, ErrorsOnBadInputs) {
    const Dataset u1 = make_dataset({{1, 2, 3}}, {1, 1, 1});
    const Dataset wide = make_dataset({{1, 2, 3, 4}}, {1, 1, 2});
    EXPECT_THROW(datagen(u1, wide), std::invalid_argument);
    EXPECT_THROW(datagen(u1, Dataset({}, 0, {1, 1, 1})), std::invalid_argument);
}

TEST(Datagen, PreservesXZAndBorrowsYVerbatim) {
    const DimSpec dims{2, 2, 3};
    const Dataset u1 = random_dataset(120, dims, 1);
    const Dataset u2 = random_dataset(90, dims, 2);
    const BootstrapOutput out = datagen(u1, u2);
    ASSERT_EQ(out.u2_prime.size(), u1.size());

    EXPECT_EQ(xz_multiset(out.u2_prime), xz_multiset(u1));

    std::set<std::vector<double>> u2_y;
    for (std::size_t i = 0; i < u2.size(); ++i)
        u2_y.insert({u2.y(i).begin(), u2.y(i).end()});
    for (std::size_t i = 0; i < out.u2_prime.size(); ++i) {
        const std::vector<double> y(out.u2_prime.y(i).begin(), out.u2_prime.y(i).end());
        EXPECT_TRUE(u2_y.count(y)) << "row " << i;
        // source_map names the exact borrowed row
        const std::size_t nn = out.source_map[i].second;
        EXPECT_EQ(y, std::vector<double>(u2.y(nn).begin(), u2.y(nn).end()));
    }
}

TEST(Datagen, MatchesBruteForceReference) {
    const DimSpec dims{1, 1, 4};
    const Dataset u1 = random_dataset(200, dims, 3);
    const Dataset u2 = random_dataset(150, dims, 4);
    const BootstrapOutput fast = datagen(u1, u2);
    const BootstrapOutput ref = datagen_bruteforce(u1, u2);
    EXPECT_EQ(fast.u2_prime.values(), ref.u2_prime.values());
    EXPECT_EQ(fast.source_map, ref.source_map);
}

TEST(Datagen, U2RowOrderIrrelevantWithoutTies) {
    const DimSpec dims{1, 1, 2};
    const Dataset u1 = random_dataset(60, dims, 5);
    const Dataset u2 = random_dataset(40, dims, 6);  // continuous draws: ties have measure zero

    std::vector<std::vector<double>> reversed;
    for (std::size_t i = u2.size(); i > 0; --i)
        reversed.push_back({u2.row(i - 1).begin(), u2.row(i - 1).end()});
    const Dataset u2_rev = make_dataset(reversed, dims);

    const BootstrapOutput a = datagen(u1, u2);
    const BootstrapOutput b = datagen(u1, u2_rev);
    EXPECT_EQ(a.u2_prime.values(), b.u2_prime.values());
}

TEST(FciOracle, EmptyAndDeterministic) {
    const PnlConfig cfg = PnlConfig::make(0, 2, false, 9);
    const PnlSampler sampler(cfg);
    EXPECT_EQ(empirical_fci_oracle(sampler, 0, 1).size(), 0u);
    const Dataset a = empirical_fci_oracle(sampler, 50, 123);
    const Dataset b = empirical_fci_oracle(sampler, 50, 123);
    EXPECT_EQ(a.values(), b.values());
}

TEST(FciOracle, RespectsDims) {
    const PnlConfig cfg = PnlConfig::make(0, 3, true, 10);
    const Dataset ds = empirical_fci_oracle(PnlSampler(cfg), 25, 7);
    EXPECT_EQ(ds.size(), 25u);
    EXPECT_EQ(ds.dims(), (DimSpec{1, 1, 3}));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        EXPECT_LE(std::abs(ds.x(i)[0]), 1.0);
        EXPECT_LE(std::abs(ds.y(i)[0]), 1.0);
    }
}
