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

#include "qlm/su3.hpp"

#include <cmath>

namespace qlm {

using Cx = std::complex<double>;

ColorRegisterState meson_state_su3() {
    ColorRegisterState s;
    s.quark_slots = 1;
    s.antiquark_slots = 1;
    s.amps = Eigen::VectorXcd::Zero(9);
    for (int a = 0; a < 3; ++a) s.amps[3 * a + a] = 1.0 / std::sqrt(3.0);
    return s;
}

ColorRegisterState baryon_state_su3() {
    ColorRegisterState s;
    s.quark_slots = 3;
    s.antiquark_slots = 0;
    s.amps = Eigen::VectorXcd::Zero(27);
    const int eps[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                           {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    for (const auto& e : eps) {
        s.amps[9 * e[0] + 3 * e[1] + e[2]] = e[3] / std::sqrt(6.0);
    }
    return s;
}

ColorRegisterState apply_color_transform(const ColorRegisterState& state,
                                         const std::vector<bool>& slot_mask,
                                         const Eigen::Matrix3cd& g) {
    if (static_cast<int>(slot_mask.size()) != state.slots()) {
        throw ConfigError("slot mask length does not match register");
    }
    if ((g * g.adjoint() - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ConfigError("color transform must be unitary");
    }
    const Eigen::Matrix3cd gbar = g.conjugate();

    Eigen::VectorXcd amps = state.amps;
    Eigen::VectorXcd next(amps.size());
    const int n = state.slots();
    for (int slot = 0; slot < n; ++slot) {
        if (!slot_mask[slot]) continue;
        const Eigen::Matrix3cd& m = slot < state.quark_slots ? g : gbar;
        // stride of this slot's color index (first slot most significant)
        long stride = 1;
        for (int k = slot + 1; k < n; ++k) stride *= 3;
        next.setZero();
        for (long i = 0; i < amps.size(); ++i) {
            if (amps[i] == Cx(0.0, 0.0)) continue;
            int color = static_cast<int>((i / stride) % 3);
            long base = i - color * stride;
            for (int c = 0; c < 3; ++c) next[base + c * stride] += m(c, color) * amps[i];
        }
        amps.swap(next);
    }
    return ColorRegisterState{state.quark_slots, state.antiquark_slots, amps};
}

double fidelity(const ColorRegisterState& a, const ColorRegisterState& b) {
    if (a.quark_slots != b.quark_slots || a.antiquark_slots != b.antiquark_slots) {
        throw ConfigError("fidelity across different register shapes");
    }
    double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw ConfigError("fidelity with a zero state");
    return std::norm(a.amps.dot(b.amps)) / (na * na * nb * nb);
}

Eigen::Matrix3cd random_su3(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix3cd m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = Cx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::Matrix3cd> qr(m);
    Eigen::Matrix3cd q = qr.householderQ();
    Cx det = q.determinant();
    // det has unit modulus; divide out its cube root of phase.
    q *= std::exp(Cx(0.0, -std::arg(det) / 3.0));
    return q;
}

}  // namespace qlm
