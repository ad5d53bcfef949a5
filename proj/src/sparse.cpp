// Copyright 2026 The qlmsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlm/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace qlm {

namespace {

void canonicalize(std::vector<SparseEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size();) {
        std::uint64_t r = entries[i].row, c = entries[i].col;
        std::complex<double> v = entries[i].value;
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].row == r && entries[j].col == c) {
            v += entries[j].value;
            ++j;
        }
        if (v != std::complex<double>(0.0, 0.0)) entries[out++] = {r, c, v};
        i = j;
    }
    entries.resize(out);
}

// Row start offsets for canonical (row-sorted) entries.
std::vector<std::size_t> row_starts(const std::vector<SparseEntry>& entries, std::uint64_t dim) {
    std::vector<std::size_t> starts(dim + 1, 0);
    for (const auto& e : entries) ++starts[e.row + 1];
    for (std::uint64_t r = 0; r < dim; ++r) starts[r + 1] += starts[r];
    return starts;
}

}  // namespace

SparseOperator::SparseOperator(std::uint64_t dim, BasisTag tag, std::vector<SparseEntry> entries)
    : dim_(dim), tag_(std::move(tag)), entries_(std::move(entries)) {
    for (const auto& e : entries_) {
        if (e.row >= dim_ || e.col >= dim_) {
            throw Error("sparse entry out of range");
        }
    }
    canonicalize(entries_);
}

SparseOperator SparseOperator::zero(std::uint64_t dim, BasisTag tag) {
    return SparseOperator(dim, std::move(tag), {});
}

SparseOperator SparseOperator::identity(std::uint64_t dim, BasisTag tag) {
    std::vector<SparseEntry> e;
    e.reserve(dim);
    for (std::uint64_t i = 0; i < dim; ++i) e.push_back({i, i, 1.0});
    return SparseOperator(dim, std::move(tag), std::move(e));
}

void SparseOperator::require_same_space(const SparseOperator& other) const {
    if (dim_ != other.dim_) {
        throw BasisMismatchError("operator dimension mismatch: " + std::to_string(dim_) +
                                 " vs " + std::to_string(other.dim_));
    }
    if (!(tag_ == other.tag_)) {
        throw BasisMismatchError("operator basis mismatch: " + tag_.str() + " vs " +
                                 other.tag_.str());
    }
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
    require_same_space(other);
    std::vector<SparseEntry> merged = entries_;
    merged.insert(merged.end(), other.entries_.begin(), other.entries_.end());
    return SparseOperator(dim_, tag_, std::move(merged));
}

SparseOperator SparseOperator::operator-(const SparseOperator& other) const {
    return *this + other.scaled(-1.0);
}

SparseOperator SparseOperator::scaled(std::complex<double> factor) const {
    std::vector<SparseEntry> e = entries_;
    for (auto& x : e) x.value *= factor;
    return SparseOperator(dim_, tag_, std::move(e));
}

SparseOperator SparseOperator::matmul(const SparseOperator& other) const {
    require_same_space(other);
    const auto bstarts = row_starts(other.entries_, dim_);
    std::vector<SparseEntry> out;
    std::vector<std::complex<double>> scratch(dim_, 0.0);
    std::vector<std::uint64_t> touched;
    std::size_t i = 0;
    while (i < entries_.size()) {
        std::uint64_t r = entries_[i].row;
        touched.clear();
        for (; i < entries_.size() && entries_[i].row == r; ++i) {
            std::uint64_t k = entries_[i].col;
            std::complex<double> va = entries_[i].value;
            for (std::size_t j = bstarts[k]; j < bstarts[k + 1]; ++j) {
                std::uint64_t c = other.entries_[j].col;
                if (scratch[c] == std::complex<double>(0.0, 0.0)) touched.push_back(c);
                scratch[c] += va * other.entries_[j].value;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::uint64_t c : touched) {
            if (scratch[c] != std::complex<double>(0.0, 0.0)) out.push_back({r, c, scratch[c]});
            scratch[c] = 0.0;
        }
    }
    return SparseOperator(dim_, tag_, std::move(out));
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<SparseEntry> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back({x.col, x.row, std::conj(x.value)});
    return SparseOperator(dim_, tag_, std::move(e));
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
    if (static_cast<std::uint64_t>(v.size()) != dim_) {
        throw BasisMismatchError("vector length does not match operator dimension");
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (const auto& e : entries_) out[e.row] += e.value * v[e.col];
    return out;
}

bool SparseOperator::is_diagonal() const {
    for (const auto& e : entries_)
        if (e.row != e.col) return false;
    return true;
}

Eigen::VectorXcd SparseOperator::diagonal() const {
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(dim_);
    for (const auto& e : entries_)
        if (e.row == e.col) d[e.row] = e.value;
    return d;
}

double SparseOperator::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
    return m;
}

double SparseOperator::hermiticity_error() const {
    return (*this - adjoint()).max_abs();
}

Eigen::MatrixXcd SparseOperator::to_dense(int dense_budget) const {
    if (dim_ > static_cast<std::uint64_t>(dense_budget)) {
        throw BudgetError("dense materialization of dimension " + std::to_string(dim_) +
                          " exceeds budget " + std::to_string(dense_budget));
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (const auto& e : entries_) m(e.row, e.col) += e.value;
    return m;
}

void SparseOperator::write_coord_text(std::ostream& os) const {
    for (const auto& e : entries_) {
        os << e.row << " " << e.col << " " << e.value.real() << " " << e.value.imag() << "\n";
    }
}

double commutator_norm(const SparseOperator& a, const SparseOperator& b) {
    return (a.matmul(b) - b.matmul(a)).max_abs();
}

}  // namespace qlm
