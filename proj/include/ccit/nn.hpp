#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccit/dataset.hpp"

namespace ccit {

struct NNResult {
    std::size_t index = 0;
    double distance = 0.0;

    bool operator==(const NNResult&) const = default;
};

/// Exact 1-nearest-neighbor index over a point set in Euclidean norm.
/// Ties are broken by the smallest stored row index, so queries return
/// exactly what an exhaustive scan with the same rule returns.
class NNIndex {
public:
    // Copies the m x dim point matrix (row-major). Throws on empty input or
    // non-finite entries.
    NNIndex(const double* points, std::size_t count, std::size_t dim);
    NNIndex(const std::vector<double>& points, std::size_t count, std::size_t dim)
        : NNIndex(points.data(), count, dim) {}

    std::size_t size() const { return count_; }
    std::size_t dim() const { return dim_; }

    NNResult nearest(std::span<const double> query) const;

    // Parallel batch form; results are ordered by query index regardless of
    // scheduling.
    std::vector<NNResult> nearest_batch(const double* queries, std::size_t n_queries) const;

private:
    struct Node {
        int axis = -1;  // -1 marks a leaf
        double split = 0.0;
        std::int32_t left = -1, right = -1;  // children for internal nodes
        std::int32_t begin = 0, end = 0;     // perm_ range for leaves
    };

    std::int32_t build(std::int32_t begin, std::int32_t end);
    void search(std::int32_t node, const double* q, NNResult& best, double& best_d2) const;
    void scan_leaf(const Node& node, const double* q, NNResult& best, double& best_d2) const;

    std::vector<double> pts_;         // original row order
    std::vector<std::uint32_t> perm_;
    std::vector<Node> nodes_;
    std::size_t count_ = 0, dim_ = 0;
    std::int32_t root_ = -1;
};

/// Serial exhaustive scan with the same tie rule; the verification oracle for
/// NNIndex and the reference side of the kernel benchmark.
NNResult nearest_bruteforce(const double* points, std::size_t count, std::size_t dim,
                            std::span<const double> query);
NNResult nearest_bruteforce(const std::vector<double>& points, std::size_t count, std::size_t dim,
                            std::span<const double> query);

/// Builds an index over the Z-block of a dataset.
NNIndex build_z_index(const Dataset& ds);

}  // namespace ccit
