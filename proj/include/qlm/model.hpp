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

#ifndef QLM_MODEL_HPP
#define QLM_MODEL_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qlm/errors.hpp"
#include "qlm/lattice.hpp"

namespace qlm {

// Truncated U(1) link: integer flux e in [-S, S], dimension 2S+1.
struct U1Model {
    int spin_cutoff = 1;  // S

    bool operator==(const U1Model&) const = default;
};

// Truncated SU(2) link: |j, m_L, m_R> with j = 0, 1/2, ..., j_max.
// Dimension sum over j of (2j+1)^2. Half-integers are stored doubled.
struct Su2Model {
    int two_j_max = 1;

    bool operator==(const Su2Model&) const = default;
};

using GaugeModel = std::variant<U1Model, Su2Model>;

int link_dimension(const GaugeModel& model);

inline bool is_u1(const GaugeModel& m) { return std::holds_alternative<U1Model>(m); }
inline const U1Model& as_u1(const GaugeModel& m) {
    if (!is_u1(m)) throw ConfigError("operation requires a U(1) model");
    return std::get<U1Model>(m);
}
inline const Su2Model& as_su2(const GaugeModel& m) {
    if (is_u1(m)) throw ConfigError("operation requires an SU(2) model");
    return std::get<Su2Model>(m);
}

std::string model_id(const GaugeModel& model);

// Common conventions disagree on the sign of the plaquette term, so it is
// an explicit flag throughout: -1 for U(1) and +1 for SU(2) by default.
int default_magnetic_sign(const GaugeModel& model);

// Static per-site charges. U(1): integer rho_x. SU(2): doubled site irrep
// label 2*j_x, kinematic only.
struct ChargeConfig {
    std::vector<int> values;

    static ChargeConfig neutral(const LatticeSpec& lat) {
        return ChargeConfig{std::vector<int>(lat.n_sites(), 0)};
    }
    bool neutral_everywhere() const {
        for (int v : values)
            if (v != 0) return false;
        return true;
    }
    bool operator==(const ChargeConfig&) const = default;
};

// U(1): flux lines cannot terminate on net charge on a torus, so the total
// charge must vanish. Throws ConfigError otherwise.
void validate_charges_u1(const LatticeSpec& lat, const ChargeConfig& charges);

// SU(2): the site irreps must admit a global singlet once combined with
// integer-total-spin link content, i.e. the summed j_x must be integer.
void validate_charges_su2(const LatticeSpec& lat, const ChargeConfig& charges);

std::string charges_id(const ChargeConfig& charges);

}  // namespace qlm

#endif
