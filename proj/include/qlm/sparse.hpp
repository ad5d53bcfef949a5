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

#ifndef QLM_SPARSE_HPP
#define QLM_SPARSE_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlm/errors.hpp"

namespace qlm {

inline constexpr int kDefaultDenseBudget = 4096;

// Identifies the vector space an operator or state lives in. Algebraic
// combinations require exactly matching tags.
struct BasisTag {
    enum class Space { Full, Physical };
    Space space = Space::Full;
    std::string id;

    bool operator==(const BasisTag&) const = default;
    std::string str() const {
        return (space == Space::Full ? "full:" : "phys:") + id;
    }
};

struct SparseEntry {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    std::complex<double> value;
};

// Complex sparse matrix in canonical coordinate form: entries sorted by
// (row, col), duplicates merged, exact zeros dropped. Immutable in spirit;
// all algebra returns new operators.
class SparseOperator {
  public:
    SparseOperator() = default;
    SparseOperator(std::uint64_t dim, BasisTag tag, std::vector<SparseEntry> entries);

    static SparseOperator zero(std::uint64_t dim, BasisTag tag);
    static SparseOperator identity(std::uint64_t dim, BasisTag tag);

    std::uint64_t dim() const { return dim_; }
    const BasisTag& tag() const { return tag_; }
    const std::vector<SparseEntry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    SparseOperator operator+(const SparseOperator& other) const;
    SparseOperator operator-(const SparseOperator& other) const;
    SparseOperator scaled(std::complex<double> factor) const;
    SparseOperator matmul(const SparseOperator& other) const;
    SparseOperator adjoint() const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

    bool is_diagonal() const;
    Eigen::VectorXcd diagonal() const;

    double max_abs() const;
    // max |A - A^dag| over entries.
    double hermiticity_error() const;

    Eigen::MatrixXcd to_dense(int dense_budget = kDefaultDenseBudget) const;

    // One "row col re im" line per entry, sorted, for cross-implementation
    // diffing.
    void write_coord_text(std::ostream& os) const;

  private:
    std::uint64_t dim_ = 0;
    BasisTag tag_;
    std::vector<SparseEntry> entries_;

    void require_same_space(const SparseOperator& other) const;
};

// max-absolute-entry of AB - BA.
double commutator_norm(const SparseOperator& a, const SparseOperator& b);

}  // namespace qlm

#endif
