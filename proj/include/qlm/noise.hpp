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

#ifndef QLM_NOISE_HPP
#define QLM_NOISE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qlm/evolution.hpp"
#include "qlm/observables.hpp"

namespace qlm {

enum class NoiseKind { LinkRaise, Dephase };

struct NoiseEvent {
    int step = 0;           // applied after this Trotter step (1-based)
    NoiseKind kind = NoiseKind::LinkRaise;
    LinkId link = 0;
    double angle = 0.0;      // dephasing only
};

struct NoiseSpec {
    std::vector<NoiseEvent> events;
    std::uint64_t seed = 0;  // echoed into reports for replay bookkeeping
    int check_every = 1;     // projector-check cadence in steps; 0 disables
};

struct ErrorApplication {
    StateVector state;
    double pre_norm = 1.0;  // norm before renormalization
    bool absorbed = false;  // annihilated by the truncation
};

// Single-link raising error, renormalized. On a physical state this opens a
// string and the result is fully unphysical. A state entirely at the cutoff
// shell is annihilated and reported as absorbed.
ErrorApplication apply_link_raise_error(const PhysicalBasisU1& basis, const StateVector& full,
                                        LinkId link);

// exp(i theta E_l): diagonal, commutes with every Gauss generator, leaves
// the leakage untouched.
StateVector apply_dephasing(const PhysicalBasisU1& basis, const StateVector& full, LinkId link,
                            double angle);

struct NoisyStepRecord {
    int step = 0;
    double time = 0.0;
    double norm = 1.0;
    bool checked = false;
    double leakage = 0.0;
    bool detected = false;
    std::vector<double> syndromes;
    std::optional<NoiseKind> event;
    double event_pre_norm = 1.0;
};

struct NoisyReport {
    std::vector<NoisyStepRecord> records;
    double final_leakage = 0.0;
    bool any_detected = false;
};

inline constexpr double kDetectionThreshold = 1e-9;

// Full-basis Trotter trajectory with scheduled error events and periodic
// projector checks. The clean steps are block-exact over Gauss sectors, so
// leakage comes from the injected events alone.
NoisyReport run_noisy_trajectory(const HamiltonianParts& full_parts,
                                 const PhysicalBasisU1& basis, const StateVector& psi0_full,
                                 const TrotterPlan& plan, const NoiseSpec& noise,
                                 int dense_budget = kDefaultDenseBudget);

struct PenaltyPoint {
    double lambda = 0.0;
    double leakage = 0.0;
};

// Evolves exp(-i (H + lambda*Penalty + eps*(U_l + U_l^dag)) t) |vacuum> per
// lambda and reports the final leakage. The dynamics is confined to the
// exactly invariant union of Gauss sectors reachable through the perturbed
// link, which keeps the dense work within budget.
std::vector<PenaltyPoint> penalty_suppression_experiment(
    const LatticeSpec& lat, const U1Model& model, const ChargeConfig& charges, double g2,
    int magnetic_sign, const std::vector<double>& lambdas, double eps, LinkId link, double t,
    int dense_budget = kDefaultDenseBudget);

}  // namespace qlm

#endif
