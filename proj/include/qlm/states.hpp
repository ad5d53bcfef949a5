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

#ifndef QLM_STATES_HPP
#define QLM_STATES_HPP

#include <complex>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qlm/basis.hpp"

namespace qlm {

struct StateVector {
    BasisTag tag;
    Eigen::VectorXcd amps;

    double norm() const { return amps.norm(); }
    StateVector normalized() const;
};

std::complex<double> inner(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

// Unit amplitude on the zero-flux (trivial-irrep) configuration. Errors if
// that configuration is not physical (nonzero static charges).
StateVector vacuum_state(const PhysicalBasisU1& basis);
StateVector vacuum_state(const PhysicalBasisSu2& basis);

// Unit amplitude on the config carrying flux e * orientation on the path
// links, zero elsewhere. The path must be closed and the accumulated flux
// within truncation; closure makes the state physical by construction.
StateVector flux_loop_state(const PhysicalBasisU1& basis, const PathSpec& path, int e);

// Open flux string between two static charges; the basis charges must equal
// +e at the path start and -e at its end (and vanish elsewhere).
StateVector string_state(const PhysicalBasisU1& basis, const PathSpec& path, int e);

// Normalized linear combination. All inputs must share a basis tag; the
// resultant must not vanish.
StateVector superpose(std::span<const StateVector> states,
                      std::span<const std::complex<double>> amps);

// Winding sectors carrying weight above tol; more than one means the state
// crosses a superselection boundary (flagged, not forbidden).
std::set<WindingSector> winding_support(const PhysicalBasisU1& basis, const StateVector& state,
                                        double tol = 1e-12);

// Multiplies each full-basis config amplitude by exp(i alpha * residual) --
// the U(1) gauge rotation at one site. Physical states are exactly invariant.
StateVector apply_gauge_transform_u1(const PhysicalBasisU1& basis, const StateVector& full_state,
                                     SiteId site, double alpha);

// Embedding of a physical-basis state into the full tensor basis.
StateVector embed_full(const PhysicalBasisU1& basis, const StateVector& phys);
StateVector embed_full(const PhysicalBasisSu2& basis, const StateVector& phys);

// Physical-basis coordinates P^dag psi of a full-basis state.
StateVector project_coords(const PhysicalBasisU1& basis, const StateVector& full);
StateVector project_coords(const PhysicalBasisSu2& basis, const StateVector& full);

// Orthogonal projection P P^dag onto the physical subspace, in the full
// basis. Idempotent.
StateVector physical_projector_apply(const PhysicalBasisU1& basis, const StateVector& full);
StateVector physical_projector_apply(const PhysicalBasisSu2& basis, const StateVector& full);

}  // namespace qlm

#endif
