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

#include "qlm/model.hpp"

#include <numeric>

namespace qlm {

int link_dimension(const GaugeModel& model) {
    if (is_u1(model)) {
        const auto& m = std::get<U1Model>(model);
        if (m.spin_cutoff < 0) throw ConfigError("U(1) truncation S must be >= 0");
        return 2 * m.spin_cutoff + 1;
    }
    const auto& m = std::get<Su2Model>(model);
    if (m.two_j_max < 0) throw ConfigError("SU(2) truncation j_max must be >= 0");
    int dim = 0;
    for (int two_j = 0; two_j <= m.two_j_max; ++two_j) dim += (two_j + 1) * (two_j + 1);
    return dim;
}

std::string model_id(const GaugeModel& model) {
    if (is_u1(model)) return "u1:S=" + std::to_string(std::get<U1Model>(model).spin_cutoff);
    return "su2:2j=" + std::to_string(std::get<Su2Model>(model).two_j_max);
}

int default_magnetic_sign(const GaugeModel& model) { return is_u1(model) ? -1 : +1; }

void validate_charges_u1(const LatticeSpec& lat, const ChargeConfig& charges) {
    if (static_cast<int>(charges.values.size()) != lat.n_sites()) {
        throw ConfigError("charge vector length " + std::to_string(charges.values.size()) +
                          " does not match site count " + std::to_string(lat.n_sites()));
    }
    int total = std::accumulate(charges.values.begin(), charges.values.end(), 0);
    if (total != 0) {
        throw ConfigError("total U(1) charge must vanish on a torus, got " +
                          std::to_string(total));
    }
}

void validate_charges_su2(const LatticeSpec& lat, const ChargeConfig& charges) {
    if (static_cast<int>(charges.values.size()) != lat.n_sites()) {
        throw ConfigError("charge vector length " + std::to_string(charges.values.size()) +
                          " does not match site count " + std::to_string(lat.n_sites()));
    }
    int total_two_j = 0;
    for (int v : charges.values) {
        if (v < 0) throw ConfigError("SU(2) site irrep labels 2j must be >= 0");
        total_two_j += v;
    }
    // Link content always carries integer total spin (each link contributes
    // j twice), so a global singlet needs integer summed matter spin.
    if (total_two_j % 2 != 0) {
        throw ConfigError("SU(2) site irreps do not admit a global singlet: "
                          "sum of j_x is half-integer");
    }
}

std::string charges_id(const ChargeConfig& charges) {
    if (charges.neutral_everywhere()) return "0";
    std::string s;
    for (std::size_t i = 0; i < charges.values.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(charges.values[i]);
    }
    return s;
}

}  // namespace qlm
