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

#ifndef QLM_SU3_HPP
#define QLM_SU3_HPP

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qlm/errors.hpp"

namespace qlm {

// Color register: quark slots carry the fundamental (3), antiquark slots the
// conjugate (3bar). Amplitudes indexed over color triples per slot, quark
// slots first, first slot most significant.
struct ColorRegisterState {
    int quark_slots = 0;
    int antiquark_slots = 0;
    Eigen::VectorXcd amps;

    int slots() const { return quark_slots + antiquark_slots; }
    double norm() const { return amps.norm(); }
};

// (1/sqrt(3)) sum_a |a>_q |a>_qbar: the delta-contracted color singlet.
ColorRegisterState meson_state_su3();

// (1/sqrt(6)) sum eps_{abc} |a>|b>|c> over three quark slots: the totally
// antisymmetric color singlet.
ColorRegisterState baryon_state_su3();

// Per-slot color rotation: quark slots receive g, antiquark slots conj(g).
// `slot_mask` selects which slots transform (quark slots first). g must be
// unitary to 1e-12.
ColorRegisterState apply_color_transform(const ColorRegisterState& state,
                                         const std::vector<bool>& slot_mask,
                                         const Eigen::Matrix3cd& g);

inline ColorRegisterState apply_color_transform(const ColorRegisterState& state,
                                                const Eigen::Matrix3cd& g) {
    return apply_color_transform(state, std::vector<bool>(state.slots(), true), g);
}

double fidelity(const ColorRegisterState& a, const ColorRegisterState& b);

// Unitary with unit determinant from a complex Gaussian sample: orthonormalize,
// then divide out the determinant phase.
Eigen::Matrix3cd random_su3(std::mt19937_64& rng);

}  // namespace qlm

#endif
