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

#ifndef QLM_OBSERVABLES_HPP
#define QLM_OBSERVABLES_HPP

#include <complex>
#include <vector>

#include "qlm/operators.hpp"
#include "qlm/states.hpp"

namespace qlm {

// sum_l <E_l^2> (U(1)) or sum_l <C_l> with Casimir eigenvalue j(j+1) (SU(2)).
double electric_energy(const LatticeSpec& lat, const GaugeModel& model, const StateVector& full);
double electric_energy(const PhysicalBasisU1& basis, const StateVector& phys);
double electric_energy(const PhysicalBasisSu2& basis, const StateVector& phys);

std::complex<double> plaquette_expectation(const LatticeSpec& lat, const GaugeModel& model,
                                           const StateVector& full, PlaqId p);
std::complex<double> plaquette_expectation(const PhysicalBasisU1& basis, const StateVector& phys,
                                           PlaqId p);

// <prod_l U_l^{+-}> around a closed contour, orientation-daggered. Reported
// complex; apply Re for the conventional confinement diagnostic.
std::complex<double> wilson_loop(const LatticeSpec& lat, const GaugeModel& model,
                                 const StateVector& full, const PathSpec& path);
std::complex<double> wilson_loop(const PhysicalBasisU1& basis, const StateVector& phys,
                                 const PathSpec& path);

std::pair<double, double> winding_expectation(const LatticeSpec& lat, const U1Model& model,
                                              const StateVector& full);
std::pair<double, double> winding_expectation(const PhysicalBasisU1& basis,
                                              const StateVector& phys);

// 1 - |P psi|^2 / |psi|^2: the norm fraction outside the physical subspace.
double gauge_violation(const PhysicalBasisU1& basis, const StateVector& full);
double gauge_violation(const PhysicalBasisSu2& basis, const StateVector& full);

// Per-site <G_x^2> (U(1)) or sum_a <(G_x^a)^2> (SU(2)); the zero vector
// exactly characterizes physical states.
std::vector<double> syndrome_sweep(const LatticeSpec& lat, const GaugeModel& model,
                                   const ChargeConfig& charges, const StateVector& full);

struct GroundState {
    double energy = 0.0;
    StateVector state;
    int multiplicity = 1;
};

// Lowest eigenpair by dense Hermitian diagonalization. The eigenvector phase
// is fixed by making its largest-magnitude amplitude real positive.
GroundState ground_state(const SparseOperator& h, int dense_budget = kDefaultDenseBudget);

// Exact spectrum of a gauge-commuting full-basis operator plus
// lambda * penalty, assembled block-by-block over Gauss sectors (the penalty
// is the constant lambda * |residual|^2 within each sector). Ascending.
std::vector<double> sector_spectrum(const SparseOperator& op, const GaussSectors& sectors,
                                    double lambda, int dense_budget = kDefaultDenseBudget);

enum class EntropyUnit { Bits, Nats };

// Von Neumann entropy of the reduced density matrix over the given links'
// tensor factors. Eigenvalues below 1e-14 are dropped.
double entanglement_entropy(const LatticeSpec& lat, const GaugeModel& model,
                            const StateVector& full, const std::vector<LinkId>& links,
                            EntropyUnit unit = EntropyUnit::Bits,
                            int dense_budget = kDefaultDenseBudget);

}  // namespace qlm

#endif
