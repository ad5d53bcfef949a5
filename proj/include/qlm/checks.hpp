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

#ifndef QLM_CHECKS_HPP
#define QLM_CHECKS_HPP

#include <string>
#include <vector>

#include "qlm/config.hpp"

namespace qlm {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

// Desk-scale property suite aggregating the module invariants: lattice
// combinatorics, basis/oracle equivalence, operator algebra, projector and
// gauge-transform identities, Trotter scaling, leakage detection, entropy
// sanity, and the frozen regression anchors. The config's physics flags
// (g2, magnetic_sign) parameterize the operator checks; the anchors are
// recorded for the default conventions and fail under a flipped sign.
std::vector<CheckResult> run_invariant_suite(const RunConfig& config);

}  // namespace qlm

#endif
