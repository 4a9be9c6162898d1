#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccit/dataset.hpp"
#include "ccit/rng.hpp"

namespace ccit {

/// Simulated samples plus the (u1 row, matched u2 neighbor) provenance of
/// every output row. The map is not needed by the test itself but feeds the
/// shared-neighbor diagnostics.
struct BootstrapOutput {
    Dataset u2_prime;
    std::vector<std::pair<std::size_t, std::size_t>> source_map;
};

/// Nearest-neighbor bootstrap: for each row (x, y, z) of u1, emits
/// (x, y', z) where y' comes from the u2 row whose Z-block is the 1-NN of z
/// (ties to the lowest u2 index). Output order follows u1. Queries run in
/// parallel against the immutable index.
BootstrapOutput datagen(const Dataset& u1, const Dataset& u2);

/// Serial reference of datagen using exhaustive NN scans; kept for the
/// property tests and the kernel benchmark.
BootstrapOutput datagen_bruteforce(const Dataset& u1, const Dataset& u2);

/// A known conditional sampler for a synthetic family: draws z, x|z and y|z.
/// Implementations must sample y|z with any x-dependence marginalized out, so
/// composing the three draws yields exact samples of the conditionally
/// independent factorization.
class ConditionalSampler {
public:
    virtual ~ConditionalSampler() = default;
    virtual DimSpec dims() const = 0;
    virtual void sample_z(Rng& rng, double* z_out) const = 0;
    virtual void sample_x_given_z(Rng& rng, const double* z, double* x_out) const = 0;
    virtual void sample_y_given_z(Rng& rng, const double* z, double* y_out) const = 0;
};

/// n exact i.i.d. draws from the conditionally independent factorization of
/// the sampler's family. Verification-only: ground truth for the TV-decay
/// checks.
Dataset empirical_fci_oracle(const ConditionalSampler& gen, std::size_t n, std::uint64_t seed);

}  // namespace ccit
