#include "ccit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ccit/rng.hpp"

namespace ccit {

void DimSpec::validate() const {
    if (d_x < 1 || d_y < 1 || d_z < 1)
        throw std::invalid_argument("DimSpec: d_x, d_y, d_z must all be >= 1");
}

Dataset::Dataset(std::vector<double> rows, std::size_t n, DimSpec dims)
    : rows_(std::move(rows)), n_(n), dims_(dims) {
    dims_.validate();
    if (rows_.size() != n_ * static_cast<std::size_t>(dims_.total()))
        throw std::invalid_argument("Dataset: row buffer size does not match n x width");
    for (double v : rows_)
        if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite entry");
}

void LabeledDataset::validate() const {
    if (labels.size() != n) throw std::invalid_argument("LabeledDataset: label count != row count");
    if (features.size() != n * static_cast<std::size_t>(width))
        throw std::invalid_argument("LabeledDataset: feature buffer size mismatch");
    for (int l : labels)
        if (l != 0 && l != 1) throw std::invalid_argument("LabeledDataset: labels must be 0 or 1");
}

// ---- CSV -------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

double parse_finite(const std::string& cell, std::size_t data_row, const std::string& col_name) {
    const std::string t = trim(cell);
    double v = 0.0;
    const char* b = t.data();
    const char* e = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "CSV parse error at data row " << data_row << ", column '" << col_name
            << "': cannot parse '" << t << "' as a finite real";
        throw std::runtime_error(msg.str());
    }
    return v;
}

struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RawCsv read_csv_cells(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    RawCsv raw;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV (no header): " + path);
    raw.header = split_csv_line(line);
    for (auto& h : raw.header) h = trim(h);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != raw.header.size()) {
            std::ostringstream msg;
            msg << "CSV row " << raw.rows.size() + 1 << " has " << cells.size()
                << " cells, header has " << raw.header.size();
            throw std::runtime_error(msg.str());
        }
        raw.rows.push_back(std::move(cells));
    }
    return raw;
}

std::vector<std::string> split_tokens(const std::string& expr) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : expr) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    std::erase_if(out, [](const std::string& s) { return s.empty(); });
    return out;
}

// Resolves one block's tokens against the header: names, bare indices, or
// inclusive "i..j" ranges.
std::vector<int> resolve_block(const std::vector<std::string>& tokens,
                               const std::vector<std::string>& header, const char* block) {
    std::vector<int> cols;
    for (const auto& tok : tokens) {
        const auto dots = tok.find("..");
        if (dots != std::string::npos && all_digits(tok.substr(0, dots)) &&
            all_digits(tok.substr(dots + 2))) {
            const int lo = std::stoi(tok.substr(0, dots));
            const int hi = std::stoi(tok.substr(dots + 2));
            if (lo > hi) throw std::invalid_argument(std::string("colspec: empty range '") + tok + "'");
            for (int i = lo; i <= hi; ++i) cols.push_back(i);
        } else if (all_digits(tok)) {
            cols.push_back(std::stoi(tok));
        } else {
            const auto it = std::find(header.begin(), header.end(), tok);
            if (it == header.end())
                throw std::runtime_error(std::string("colspec: column '") + tok + "' not in header");
            cols.push_back(static_cast<int>(it - header.begin()));
        }
    }
    if (cols.empty()) throw std::invalid_argument(std::string("colspec: empty ") + block + " block");
    for (int c : cols)
        if (c < 0 || c >= static_cast<int>(header.size()))
            throw std::runtime_error("colspec: column index " + std::to_string(c) + " out of range");
    return cols;
}

}  // namespace

ColSpec parse_colspec(const std::string& x_expr, const std::string& y_expr, const std::string& z_expr) {
    ColSpec spec;
    spec.x = split_tokens(x_expr);
    spec.y = split_tokens(y_expr);
    spec.z = split_tokens(z_expr);
    if (spec.x.empty() || spec.y.empty() || spec.z.empty())
        throw std::invalid_argument("colspec: x, y and z assignments must all be non-empty");
    return spec;
}

Dataset load_csv(const std::string& path, const ColSpec& spec) {
    const RawCsv raw = read_csv_cells(path);
    const auto xs = resolve_block(spec.x, raw.header, "x");
    const auto ys = resolve_block(spec.y, raw.header, "y");
    const auto zs = resolve_block(spec.z, raw.header, "z");

    std::unordered_set<int> seen;
    for (const auto* block : {&xs, &ys, &zs})
        for (int c : *block)
            if (!seen.insert(c).second)
                throw std::invalid_argument("colspec: overlapping assignment for column '" +
                                            raw.header[c] + "'");

    std::vector<int> order;
    order.insert(order.end(), xs.begin(), xs.end());
    order.insert(order.end(), ys.begin(), ys.end());
    order.insert(order.end(), zs.begin(), zs.end());

    const DimSpec dims{static_cast<int>(xs.size()), static_cast<int>(ys.size()),
                       static_cast<int>(zs.size())};
    std::vector<double> values;
    values.reserve(raw.rows.size() * order.size());
    for (std::size_t r = 0; r < raw.rows.size(); ++r)
        for (int c : order) values.push_back(parse_finite(raw.rows[r][c], r + 1, raw.header[c]));
    return Dataset(std::move(values), raw.rows.size(), dims);
}

int Table::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

Table load_table(const std::string& path) {
    const RawCsv raw = read_csv_cells(path);
    Table t;
    t.columns = raw.header;
    t.rows = raw.rows.size();
    t.values.reserve(t.rows * t.columns.size());
    for (std::size_t r = 0; r < raw.rows.size(); ++r)
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            t.values.push_back(parse_finite(raw.rows[r][c], r + 1, t.columns[c]));
    return t;
}

// ---- Operations ------------------------------------------------------------

namespace {

Dataset gather_rows(const Dataset& ds, const std::vector<std::size_t>& idx, std::size_t begin,
                    std::size_t count) {
    const std::size_t w = static_cast<std::size_t>(ds.width());
    std::vector<double> values(count * w);
    for (std::size_t i = 0; i < count; ++i) {
        const auto row = ds.row(idx[begin + i]);
        std::memcpy(values.data() + i * w, row.data(), w * sizeof(double));
    }
    return Dataset(std::move(values), count, ds.dims());
}

}  // namespace

Partition3 partition3(const Dataset& ds, std::uint64_t seed) {
    if (ds.size() < 3) throw std::invalid_argument("partition3: need at least 3 rows");
    std::vector<std::size_t> idx(ds.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    rng.shuffle(idx);
    const std::size_t k = ds.size() / 3;
    Partition3 p;
    p.u1 = gather_rows(ds, idx, 0, k);
    p.u2 = gather_rows(ds, idx, k, k);
    p.u3 = gather_rows(ds, idx, 2 * k, k);
    p.discarded = ds.size() - 3 * k;
    return p;
}

LabeledDataset make_labeled(const Dataset& u1, const Dataset& u2_prime) {
    if (u1.dims() != u2_prime.dims())
        throw std::invalid_argument("make_labeled: dimension specs differ");
    if (u1.size() != u2_prime.size())
        throw std::invalid_argument("make_labeled: row counts differ");
    LabeledDataset d;
    d.width = u1.width();
    d.n = u1.size() + u2_prime.size();
    d.features.reserve(d.n * static_cast<std::size_t>(d.width));
    d.features.insert(d.features.end(), u1.values().begin(), u1.values().end());
    d.features.insert(d.features.end(), u2_prime.values().begin(), u2_prime.values().end());
    d.labels.assign(u1.size(), 1);
    d.labels.resize(d.n, 0);
    return d;
}

std::pair<LabeledDataset, LabeledDataset> split_train_test(const LabeledDataset& d,
                                                           std::uint64_t seed) {
    d.validate();
    if (d.n % 2 != 0) throw std::invalid_argument("split_train_test: dataset size must be even");
    std::vector<std::size_t> ones, zeros;
    for (std::size_t i = 0; i < d.n; ++i) (d.labels[i] == 1 ? ones : zeros).push_back(i);
    if (ones.size() != zeros.size())
        throw std::invalid_argument("split_train_test: class counts must be equal");

    Rng rng(seed);
    rng.shuffle(ones);
    rng.shuffle(zeros);

    // Train takes ceil(n1/2) ones and floor(n0/2) zeros so both halves have
    // exactly n/2 rows even when the per-class count is odd.
    const std::size_t ones_train = (ones.size() + 1) / 2;
    const std::size_t zeros_train = zeros.size() / 2;

    auto gather = [&](const std::vector<std::size_t>& rows) {
        LabeledDataset out;
        out.width = d.width;
        out.n = rows.size();
        out.features.reserve(out.n * static_cast<std::size_t>(d.width));
        out.labels.reserve(out.n);
        for (std::size_t i : rows) {
            const auto row = d.row(i);
            out.features.insert(out.features.end(), row.begin(), row.end());
            out.labels.push_back(d.labels[i]);
        }
        return out;
    };

    std::vector<std::size_t> train_rows(ones.begin(), ones.begin() + ones_train);
    train_rows.insert(train_rows.end(), zeros.begin(), zeros.begin() + zeros_train);
    std::vector<std::size_t> test_rows(ones.begin() + ones_train, ones.end());
    test_rows.insert(test_rows.end(), zeros.begin() + zeros_train, zeros.end());

    return {gather(train_rows), gather(test_rows)};
}

LabeledDataset drop_x(const LabeledDataset& d, const DimSpec& dims) {
    dims.validate();
    if (d.width != dims.total())
        throw std::invalid_argument("drop_x: feature width does not match dims");
    LabeledDataset out;
    out.width = dims.d_y + dims.d_z;
    out.n = d.n;
    out.labels = d.labels;
    out.features.reserve(out.n * static_cast<std::size_t>(out.width));
    for (std::size_t i = 0; i < d.n; ++i) {
        const auto row = d.row(i);
        out.features.insert(out.features.end(), row.begin() + dims.d_x, row.end());
    }
    return out;
}

}  // namespace ccit
