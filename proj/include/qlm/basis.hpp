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

#ifndef QLM_BASIS_HPP
#define QLM_BASIS_HPP

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "qlm/lattice.hpp"
#include "qlm/model.hpp"
#include "qlm/sparse.hpp"

namespace qlm {

// One integer flux label per link, e in [-S, S].
using FluxConfig = std::vector<int>;

// Mixed-radix codec between flux configs and full tensor-basis indices.
// Link 0 is the most significant digit; digit = e + S.
std::uint64_t flux_index(const U1Model& model, const FluxConfig& config);
FluxConfig flux_from_index(const LatticeSpec& lat, const U1Model& model, std::uint64_t index);

std::uint64_t full_dimension(const LatticeSpec& lat, const GaugeModel& model);

BasisTag full_basis_tag(const LatticeSpec& lat, const GaugeModel& model);

// (sum of outgoing flux - sum of incoming flux) - rho_site.
int gauss_residual_u1(const LatticeSpec& lat, const FluxConfig& config, SiteId site,
                      const ChargeConfig& charges);

struct WindingSector {
    int wx = 0;
    int wy = 0;

    auto operator<=>(const WindingSector&) const = default;
};

// Flux summed over the x and y winding cuts (column/row 0).
WindingSector winding_numbers(const LatticeSpec& lat, const FluxConfig& config);

// Gauss-law-satisfying flux configs, lexicographic by link labels, each
// tagged with its winding sector. Immutable after build.
struct PhysicalBasisU1 {
    LatticeSpec lattice;
    U1Model model;
    ChargeConfig charges;
    std::vector<FluxConfig> members;
    std::vector<WindingSector> sectors;
    std::unordered_map<std::uint64_t, int> index_of;  // full index -> member

    int dim() const { return static_cast<int>(members.size()); }
    std::uint64_t full_dim() const;
    BasisTag tag() const;
    BasisTag full_tag() const;

    // Member position for a full-basis index, or -1.
    int find(std::uint64_t full_index) const;
};

PhysicalBasisU1 build_physical_basis_u1(const LatticeSpec& lat, const U1Model& model,
                                        const ChargeConfig& charges);

// Disjoint partition of the basis by winding sector; each part is itself a
// basis whose tag records the sector.
std::map<WindingSector, PhysicalBasisU1> split_by_winding(const PhysicalBasisU1& basis);

// Hermitian Gauss generator G_site^a in the full SU(2) tensor basis, built
// from the per-endpoint gauge-rotation generators of every incident link.
SparseOperator gauss_generator_matrix_su2(const LatticeSpec& lat, const Su2Model& model,
                                          SiteId site, int a);

// Orthonormal spanning set of the simultaneous kernel of all SU(2) Gauss
// generators. Vectors live in the full tensor basis but are supported on the
// diagonal-charge-neutral sector, stored as (support indices, coefficient
// columns). kernel_gap is the smallest non-kernel eigenvalue of
// sum_{x,a} (G_x^a)^2 restricted to that sector.
struct PhysicalBasisSu2 {
    LatticeSpec lattice;
    Su2Model model;
    std::vector<std::uint64_t> support;  // ascending full-basis indices
    Eigen::MatrixXd coeffs;              // support.size() x dim(), orthonormal columns
    double kernel_gap = 0.0;

    int dim() const { return static_cast<int>(coeffs.cols()); }
    std::uint64_t full_dim() const;
    BasisTag tag() const;
    BasisTag full_tag() const;
};

inline constexpr double kKernelEigenvalueThreshold = 1e-10;
inline constexpr double kKernelGapThreshold = 1e-8;

PhysicalBasisSu2 build_physical_basis_su2(const LatticeSpec& lat, const Su2Model& model,
                                          int dense_budget = kDefaultDenseBudget);

// Partition of the full U(1) tensor basis by the per-site Gauss residual
// vector. Gauge-commuting operators are block-diagonal over the groups,
// which keeps full-basis dynamics within the dense budget.
struct GaussSectors {
    LatticeSpec lattice;
    U1Model model;
    ChargeConfig charges;
    std::vector<std::vector<std::uint64_t>> groups;  // each ascending
    std::vector<std::vector<int>> residuals;         // per-site residual of each group
    std::vector<int> group_of;                       // full index -> group

    std::size_t max_group() const;
};

GaussSectors build_gauss_sectors(const LatticeSpec& lat, const U1Model& model,
                                 const ChargeConfig& charges);

}  // namespace qlm

#endif
