#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ccit {

/// Column partition of a dataset into X / Y / Z blocks.
struct DimSpec {
    int d_x = 0;
    int d_y = 0;
    int d_z = 0;

    int total() const { return d_x + d_y + d_z; }
    bool operator==(const DimSpec&) const = default;
    void validate() const;  // throws std::invalid_argument on non-positive dims
};

/// Immutable n x (d_x+d_y+d_z) matrix of finite reals, columns laid out
/// as [X-block | Y-block | Z-block].
class Dataset {
public:
    Dataset() = default;
    // `rows` is row-major with n * dims.total() entries; every entry must be finite.
    Dataset(std::vector<double> rows, std::size_t n, DimSpec dims);

    std::size_t size() const { return n_; }
    const DimSpec& dims() const { return dims_; }
    int width() const { return dims_.total(); }

    std::span<const double> row(std::size_t i) const {
        return {rows_.data() + i * static_cast<std::size_t>(width()), static_cast<std::size_t>(width())};
    }
    std::span<const double> x(std::size_t i) const { return row(i).subspan(0, dims_.d_x); }
    std::span<const double> y(std::size_t i) const { return row(i).subspan(dims_.d_x, dims_.d_y); }
    std::span<const double> z(std::size_t i) const {
        return row(i).subspan(static_cast<std::size_t>(dims_.d_x) + dims_.d_y, dims_.d_z);
    }
    const std::vector<double>& values() const { return rows_; }

private:
    std::vector<double> rows_;
    std::size_t n_ = 0;
    DimSpec dims_;
};

/// Feature rows plus binary labels in {0, 1}.
struct LabeledDataset {
    std::vector<double> features;  // row-major, n * width
    std::vector<int> labels;       // length n
    std::size_t n = 0;
    int width = 0;

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * static_cast<std::size_t>(width), static_cast<std::size_t>(width)};
    }
    void validate() const;
};

/// Three equal-sized disjoint parts of a dataset plus the count of rows
/// dropped to equalize sizes.
struct Partition3 {
    Dataset u1, u2, u3;
    std::size_t discarded = 0;
};

// ---- CSV ingestion ---------------------------------------------------------

/// One X/Y/Z column assignment: each block is a list of header names or
/// zero-based indices (ranges "i..j" are inclusive).
struct ColSpec {
    std::vector<std::string> x, y, z;  // raw tokens, resolved against the header
};

/// Parses the three block expressions, e.g. ("a", "b", "c,e") or ("0", "1", "2..4").
ColSpec parse_colspec(const std::string& x_expr, const std::string& y_expr, const std::string& z_expr);

/// Loads a UTF-8 CSV (first row header, comma separated, decimal-point floats),
/// reorders the assigned columns into [X|Y|Z] blocks and drops the rest.
Dataset load_csv(const std::string& path, const ColSpec& spec);

/// Column-named numeric table, used by the graph benchmark to slice relations.
struct Table {
    std::vector<std::string> columns;
    std::vector<double> values;  // row-major, rows * columns.size()
    std::size_t rows = 0;

    double at(std::size_t r, std::size_t c) const { return values[r * columns.size() + c]; }
    int column_index(const std::string& name) const;  // -1 when missing
};

/// Loads a whole CSV as a Table; every cell must parse as a finite real.
Table load_table(const std::string& path);

// ---- Operations ------------------------------------------------------------

/// Shuffles rows with the seeded RNG and splits into three parts of size
/// floor(n/3); the n mod 3 trailing rows are recorded as discarded.
Partition3 partition3(const Dataset& ds, std::uint64_t seed);

/// Rows of u1 labeled 1 followed by rows of u2_prime labeled 0.
LabeledDataset make_labeled(const Dataset& u1, const Dataset& u2_prime);

/// Stratified 50/50 split: each half receives half of each class (the train
/// half gets the extra label-1 row and the test half the extra label-0 row
/// when the per-class count is odd). Deterministic per seed.
std::pair<LabeledDataset, LabeledDataset> split_train_test(const LabeledDataset& d, std::uint64_t seed);

/// Projects features onto the [Y|Z] blocks; labels and row order unchanged.
LabeledDataset drop_x(const LabeledDataset& d, const DimSpec& dims);

}  // namespace ccit
