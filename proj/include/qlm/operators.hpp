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

#ifndef QLM_OPERATORS_HPP
#define QLM_OPERATORS_HPP

#include "qlm/basis.hpp"
#include "qlm/lattice.hpp"
#include "qlm/model.hpp"
#include "qlm/sparse.hpp"

namespace qlm {

// Diagonal electric field E on one link, identity elsewhere.
SparseOperator electric_op_u1(const LatticeSpec& lat, const U1Model& model, LinkId link);

// Truncated ladder |e> -> |e+1>, annihilating |S>. Unit matrix elements so
// that [E, U] = U holds exactly even with clipping.
SparseOperator link_raise_u1(const LatticeSpec& lat, const U1Model& model, LinkId link);

// Oriented plaquette product. U(1): 4-link ladder product. SU(2): trace over
// fundamental indices of the ordered matrix-of-operators product.
SparseOperator plaquette_op(const LatticeSpec& lat, const GaugeModel& model, PlaqId p);

// Diagonal divergence-minus-charge operator; physical configs are its kernel.
SparseOperator gauss_generator_u1(const LatticeSpec& lat, const U1Model& model, SiteId site,
                                  const ChargeConfig& charges);

// Winding charge W = sum of E over a non-contractible cut.
SparseOperator winding_operator(const LatticeSpec& lat, const U1Model& model, Dir d);

struct HamiltonianParts {
    SparseOperator h_electric;
    SparseOperator h_magnetic;
    double g2 = 1.0;
    int magnetic_sign = -1;

    SparseOperator total() const { return h_electric + h_magnetic; }
};

// H_E = (g^2/2) sum_l E_l^2, H_B = sign * (1/(2g^2)) sum_p (U_p + U_p^dag),
// with the sign always explicit (see default_magnetic_sign).
HamiltonianParts hamiltonian_u1(const LatticeSpec& lat, const U1Model& model, double g2,
                                int magnetic_sign = -1);

// H_E = (g^2/2) sum_l C_l with Casimir eigenvalue j(j+1) per link block,
// H_B = sign * (1/(2g^2)) sum_p Tr(U_p + U_p^dag), default sign +1.
HamiltonianParts hamiltonian_su2(const LatticeSpec& lat, const Su2Model& model, double g2,
                                 int magnetic_sign = +1,
                                 std::uint64_t full_dim_budget = std::uint64_t(1) << 22);

// U(1): lambda * sum_x (div - rho_x)^2, diagonal. SU(2): lambda *
// sum_{x,a} (G_x^a)^2. Positive semidefinite, vanishing exactly on the
// physical subspace.
SparseOperator penalty_term(const LatticeSpec& lat, const GaugeModel& model, double lambda,
                            const ChargeConfig& charges);

// P^dag op P with P the isometry from the physical basis into the full
// basis. Unless waived, verifies that op commutes with every Gauss
// generator (tolerance 1e-10) so the restriction is faithful.
SparseOperator restrict_to_physical(const SparseOperator& op, const PhysicalBasisU1& basis,
                                    bool check_gauge = true);
SparseOperator restrict_to_physical(const SparseOperator& op, const PhysicalBasisSu2& basis,
                                    bool check_gauge = true);

inline constexpr double kGaugeCommuteTol = 1e-10;

}  // namespace qlm

#endif
