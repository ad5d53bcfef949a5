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

#ifndef QLM_CONFIG_HPP
#define QLM_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "qlm/evolution.hpp"
#include "qlm/model.hpp"
#include "qlm/noise.hpp"

namespace qlm {

// Fully resolved run configuration. Parsing is strict: unknown keys are
// rejected, physics conventions (magnetic sign, step ordering) are always
// explicit after defaults are injected, and the resolved form is echoed into
// every output header.
struct RunConfig {
    GaugeModel model = U1Model{1};
    int lx = 2;
    int ly = 2;
    double g2 = 1.0;
    int magnetic_sign = -1;
    std::vector<int> charges;  // empty means all zero
    nlohmann::json initial_state = nlohmann::json{{"kind", "vacuum"}};
    TrotterPlan trotter;
    std::vector<std::string> observables = {"electric_energy"};
    std::vector<int> entropy_links;
    bool has_noise = false;
    NoiseSpec noise;
    struct Spectrum {
        int k = 10;
        bool compare_penalty = false;
        double lambda = 100.0;
    } spectrum;
    struct PenaltySweep {
        std::vector<double> lambdas = {0.0, 1.0, 10.0, 100.0};
        double epsilon = 0.1;
        int link = 0;
        double t = 5.0;
    } penalty_sweep;
    std::string evolve_basis = "physical";  // or "full"
    std::uint64_t seed = 0;
    int dense_budget = kDefaultDenseBudget;
    int link_budget = kDefaultLinkBudget;

    LatticeSpec lattice() const { return build_lattice(lx, ly, link_budget); }
    ChargeConfig charge_config() const;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

// Builds the configured initial state in the physical basis.
StateVector build_initial_state(const RunConfig& config, const PhysicalBasisU1& basis);

}  // namespace qlm

#endif
