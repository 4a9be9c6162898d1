#include "ccit/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ccit {

namespace {
constexpr std::int32_t kLeafSize = 16;

double squared_distance(const double* a, const double* b, std::size_t dim) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
    }
    return d2;
}
}  // namespace

NNIndex::NNIndex(const double* points, std::size_t count, std::size_t dim)
    : pts_(points, points + count * dim), count_(count), dim_(dim) {
    if (count == 0) throw std::invalid_argument("NNIndex: empty point set");
    if (dim == 0) throw std::invalid_argument("NNIndex: zero dimension");
    for (double v : pts_)
        if (!std::isfinite(v)) throw std::invalid_argument("NNIndex: non-finite coordinate");
    perm_.resize(count_);
    std::iota(perm_.begin(), perm_.end(), 0u);
    nodes_.reserve(2 * count_ / kLeafSize + 2);
    root_ = build(0, static_cast<std::int32_t>(count_));
}

std::int32_t NNIndex::build(std::int32_t begin, std::int32_t end) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= kLeafSize) {
        nodes_[id].begin = begin;
        nodes_[id].end = end;
        return id;
    }

    // Split on the axis with the widest extent.
    int axis = 0;
    double best_spread = -1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::int32_t i = begin; i < end; ++i) {
            const double v = pts_[perm_[i] * dim_ + j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            axis = static_cast<int>(j);
        }
    }
    if (best_spread == 0.0) {  // all points identical; no useful split
        nodes_[id].begin = begin;
        nodes_[id].end = end;
        return id;
    }

    const std::int32_t mid = begin + (end - begin) / 2;
    // Tie-break on the original index so the arrangement is a total order.
    std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         const double va = pts_[a * dim_ + axis], vb = pts_[b * dim_ + axis];
                         return va < vb || (va == vb && a < b);
                     });

    const double split = pts_[perm_[mid] * dim_ + axis];
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void NNIndex::scan_leaf(const Node& node, const double* q, NNResult& best, double& best_d2) const {
    for (std::int32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = perm_[i];
        const double d2 = squared_distance(q, pts_.data() + idx * dim_, dim_);
        if (d2 < best_d2 || (d2 == best_d2 && idx < best.index)) {
            best_d2 = d2;
            best.index = idx;
        }
    }
}

void NNIndex::search(std::int32_t node_id, const double* q, NNResult& best, double& best_d2) const {
    const Node& node = nodes_[node_id];
    if (node.axis < 0) {
        scan_leaf(node, q, best, best_d2);
        return;
    }
    const double diff = q[node.axis] - node.split;
    const std::int32_t near = diff <= 0.0 ? node.left : node.right;
    const std::int32_t far = diff <= 0.0 ? node.right : node.left;
    search(near, q, best, best_d2);
    // Visit the far side on exact equality too: it may hold an equidistant
    // point with a smaller index.
    if (diff * diff <= best_d2) search(far, q, best, best_d2);
}

NNResult NNIndex::nearest(std::span<const double> query) const {
    if (query.size() != dim_) throw std::invalid_argument("NNIndex: query dimension mismatch");
    NNResult best{count_, 0.0};
    double best_d2 = std::numeric_limits<double>::infinity();
    best.index = static_cast<std::size_t>(-1);
    search(root_, query.data(), best, best_d2);
    best.distance = std::sqrt(best_d2);
    return best;
}

std::vector<NNResult> NNIndex::nearest_batch(const double* queries, std::size_t n_queries) const {
    std::vector<NNResult> out(n_queries);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_queries); ++i)
        out[i] = nearest({queries + i * dim_, dim_});
    return out;
}

NNResult nearest_bruteforce(const double* points, std::size_t count, std::size_t dim,
                            std::span<const double> query) {
    if (count == 0) throw std::invalid_argument("nearest_bruteforce: empty point set");
    if (query.size() != dim)
        throw std::invalid_argument("nearest_bruteforce: query dimension mismatch");
    std::size_t best = 0;
    double best_d2 = squared_distance(query.data(), points, dim);
    for (std::size_t i = 1; i < count; ++i) {
        const double d2 = squared_distance(query.data(), points + i * dim, dim);
        if (d2 < best_d2) {  // strict: keeps the lowest index on ties
            best_d2 = d2;
            best = i;
        }
    }
    return {best, std::sqrt(best_d2)};
}

NNResult nearest_bruteforce(const std::vector<double>& points, std::size_t count, std::size_t dim,
                            std::span<const double> query) {
    return nearest_bruteforce(points.data(), count, dim, query);
}

NNIndex build_z_index(const Dataset& ds) {
    const std::size_t dz = static_cast<std::size_t>(ds.dims().d_z);
    std::vector<double> z(ds.size() * dz);
    for (std::size_t i = 0; i < ds.size(); ++i)
        std::memcpy(z.data() + i * dz, ds.z(i).data(), dz * sizeof(double));
    return NNIndex(z, ds.size(), dz);
}

}  // namespace ccit
