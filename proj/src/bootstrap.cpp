#include "ccit/bootstrap.hpp"

#include <cstring>
#include <stdexcept>

#include "ccit/nn.hpp"

namespace ccit {

namespace {

BootstrapOutput assemble(const Dataset& u1, const Dataset& u2, const std::vector<NNResult>& nn) {
    const DimSpec dims = u1.dims();
    const std::size_t w = static_cast<std::size_t>(dims.total());
    std::vector<double> values(u1.size() * w);
    BootstrapOutput out;
    out.source_map.resize(u1.size());
    for (std::size_t i = 0; i < u1.size(); ++i) {
        double* row = values.data() + i * w;
        std::memcpy(row, u1.x(i).data(), dims.d_x * sizeof(double));
        std::memcpy(row + dims.d_x, u2.y(nn[i].index).data(), dims.d_y * sizeof(double));
        std::memcpy(row + dims.d_x + dims.d_y, u1.z(i).data(), dims.d_z * sizeof(double));
        out.source_map[i] = {i, nn[i].index};
    }
    out.u2_prime = Dataset(std::move(values), u1.size(), dims);
    return out;
}

void check_inputs(const Dataset& u1, const Dataset& u2) {
    if (u1.dims() != u2.dims()) throw std::invalid_argument("datagen: dimension specs differ");
    if (u2.size() == 0) throw std::invalid_argument("datagen: u2 is empty");
}

}  // namespace

BootstrapOutput datagen(const Dataset& u1, const Dataset& u2) {
    check_inputs(u1, u2);
    const NNIndex index = build_z_index(u2);
    const std::size_t dz = static_cast<std::size_t>(u1.dims().d_z);
    std::vector<double> queries(u1.size() * dz);
    for (std::size_t i = 0; i < u1.size(); ++i)
        std::memcpy(queries.data() + i * dz, u1.z(i).data(), dz * sizeof(double));
    return assemble(u1, u2, index.nearest_batch(queries.data(), u1.size()));
}

BootstrapOutput datagen_bruteforce(const Dataset& u1, const Dataset& u2) {
    check_inputs(u1, u2);
    const std::size_t dz = static_cast<std::size_t>(u2.dims().d_z);
    std::vector<double> pts(u2.size() * dz);
    for (std::size_t i = 0; i < u2.size(); ++i)
        std::memcpy(pts.data() + i * dz, u2.z(i).data(), dz * sizeof(double));
    std::vector<NNResult> nn(u1.size());
    for (std::size_t i = 0; i < u1.size(); ++i)
        nn[i] = nearest_bruteforce(pts, u2.size(), dz, u1.z(i));
    return assemble(u1, u2, nn);
}

Dataset empirical_fci_oracle(const ConditionalSampler& gen, std::size_t n, std::uint64_t seed) {
    const DimSpec dims = gen.dims();
    dims.validate();
    const std::size_t w = static_cast<std::size_t>(dims.total());
    std::vector<double> values(n * w);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = values.data() + i * w;
        double* x = row;
        double* y = row + dims.d_x;
        double* z = row + dims.d_x + dims.d_y;
        gen.sample_z(rng, z);
        gen.sample_x_given_z(rng, z, x);
        gen.sample_y_given_z(rng, z, y);
    }
    return Dataset(std::move(values), n, dims);
}

}  // namespace ccit
