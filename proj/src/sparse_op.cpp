#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bogo/fock.hpp"

namespace bogo {

void SparseOperator::add(std::size_t row, std::size_t col, double value) {
    if (row >= dim_ || col >= dim_) throw std::out_of_range("SparseOperator::add");
    if (value == 0.0) return;
    rows_.push_back(row);
    cols_.push_back(col);
    vals_.push_back(value);
    finalized_ = false;
}

void SparseOperator::finalize(bool enforce_symmetry) {
    std::vector<std::size_t> order(vals_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows_[a] != rows_[b]) return rows_[a] < rows_[b];
        return cols_[a] < cols_[b];
    });
    std::vector<std::size_t> r2, c2;
    std::vector<double> v2;
    for (std::size_t k : order) {
        if (!r2.empty() && r2.back() == rows_[k] && c2.back() == cols_[k]) {
            v2.back() += vals_[k];
        } else {
            r2.push_back(rows_[k]);
            c2.push_back(cols_[k]);
            v2.push_back(vals_[k]);
        }
    }
    rows_ = std::move(r2);
    cols_ = std::move(c2);
    vals_ = std::move(v2);
    if (enforce_symmetry) {
        // overwrite the lower triangle with the upper one; exact arithmetic
        // already makes them equal, this removes last-bit accumulation-order noise
        std::map<std::pair<std::size_t, std::size_t>, double> upper;
        for (std::size_t k = 0; k < vals_.size(); ++k)
            if (rows_[k] <= cols_[k]) upper[{rows_[k], cols_[k]}] = vals_[k];
        for (std::size_t k = 0; k < vals_.size(); ++k)
            if (rows_[k] > cols_[k]) {
                auto it = upper.find({cols_[k], rows_[k]});
                if (it != upper.end()) vals_[k] = it->second;
            }
        symmetric_ = true;
    }
    // drop exact zeros produced by cancellation
    std::size_t w = 0;
    for (std::size_t k = 0; k < vals_.size(); ++k) {
        if (vals_[k] == 0.0) continue;
        rows_[w] = rows_[k];
        cols_[w] = cols_[k];
        vals_[w] = vals_[k];
        ++w;
    }
    rows_.resize(w);
    cols_.resize(w);
    vals_.resize(w);
    finalized_ = true;
}

std::vector<double> SparseOperator::apply(const std::vector<double>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("SparseOperator::apply: size mismatch");
    std::vector<double> y(dim_, 0.0);
    for (std::size_t k = 0; k < vals_.size(); ++k) y[rows_[k]] += vals_[k] * x[cols_[k]];
    return y;
}

double SparseOperator::quad_form(const std::vector<double>& x) const {
    auto y = apply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

SparseOperator SparseOperator::transpose() const {
    SparseOperator t(dim_);
    for (std::size_t k = 0; k < vals_.size(); ++k) t.add(cols_[k], rows_[k], vals_[k]);
    t.finalize(false);
    return t;
}

SparseOperator SparseOperator::multiply(const SparseOperator& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("SparseOperator::multiply: dim mismatch");
    if (!other.finalized_) throw std::logic_error("SparseOperator::multiply: rhs not finalized");
    // row-major CSR-ish walk over `other`
    std::vector<std::size_t> start(other.dim_ + 1, 0);
    for (std::size_t k = 0; k < other.vals_.size(); ++k) ++start[other.rows_[k] + 1];
    for (std::size_t i = 0; i < other.dim_; ++i) start[i + 1] += start[i];
    SparseOperator out(dim_);
    for (std::size_t k = 0; k < vals_.size(); ++k) {
        std::size_t mid = cols_[k];
        for (std::size_t j = start[mid]; j < start[mid + 1]; ++j)
            out.add(rows_[k], other.cols_[j], vals_[k] * other.vals_[j]);
    }
    out.finalize(false);
    return out;
}

SparseOperator SparseOperator::plus(const SparseOperator& other, double scale) const {
    if (dim_ != other.dim_) throw std::invalid_argument("SparseOperator::plus: dim mismatch");
    SparseOperator out(dim_);
    for (std::size_t k = 0; k < vals_.size(); ++k) out.add(rows_[k], cols_[k], vals_[k]);
    for (std::size_t k = 0; k < other.vals_.size(); ++k)
        out.add(other.rows_[k], other.cols_[k], scale * other.vals_[k]);
    out.finalize(false);
    return out;
}

double SparseOperator::max_abs_entry() const {
    double m = 0.0;
    for (double v : vals_) m = std::max(m, std::fabs(v));
    return m;
}

double SparseOperator::max_abs_difference(const SparseOperator& other) const {
    return plus(other, -1.0).max_abs_entry();
}

bool SparseOperator::equal_entries(const SparseOperator& other, double tol) const {
    return max_abs_difference(other) <= tol;
}

}  // namespace bogo
