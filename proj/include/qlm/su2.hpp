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

#ifndef QLM_SU2_HPP
#define QLM_SU2_HPP

#include <vector>

#include <Eigen/Dense>

#include "qlm/model.hpp"

namespace qlm {

// Single-link SU(2) Hilbert space: |j, m_L, m_R> for j = 0, 1/2, ..., j_max,
// |m_L|, |m_R| <= j. All angular momenta are stored doubled. States are
// ordered lexicographically by (2j, 2m_L, 2m_R) ascending, so the trivial
// state |0,0,0> is index 0.
struct Su2LinkSpace {
    struct State {
        int two_j, two_ml, two_mr;
    };

    int two_j_max = 0;
    std::vector<State> states;

    static Su2LinkSpace make(int two_j_max);

    int dim() const { return static_cast<int>(states.size()); }
    int index_of(int two_j, int two_ml, int two_mr) const;
};

// Standard spin matrices for the doubled spin two_j, basis m ascending.
// a = 0, 1, 2 for the x, y, z components.
Eigen::MatrixXcd su2_spin_matrix(int two_j, int a);

// Generators of the gauge rotation at the link's two endpoints, acting on
// the link space. Both families close the su(2) algebra with [A1, A2] = iA3,
// commute with each other, and share the Casimir j(j+1) per block. The
// origin-end generator acts on m_L through the conjugate representation
// -(S^a)^T; the terminus-end generator acts on m_R through S^a.
Eigen::MatrixXcd link_gen_origin(const Su2LinkSpace& space, int a);
Eigen::MatrixXcd link_gen_end(const Su2LinkSpace& space, int a);

// Diagonal quadratic Casimir, eigenvalue j(j+1) on each |j, m_L, m_R> block.
Eigen::MatrixXcd link_casimir(const Su2LinkSpace& space);

// Clebsch-Gordan coefficient <j m; 1/2 alpha | j' m+alpha> coupling with the
// fundamental, Condon-Shortley phases. two_jp must be two_j +- 1.
double cg_with_half(int two_j, int two_m, int two_alpha, int two_jp);

// Fundamental-representation link operator component U^{alpha beta}
// (two_alpha, two_beta in {-1, +1}): raises/lowers j by 1/2 with the
// Wigner-Eckart matrix elements
//   sqrt((2j+1)/(2j'+1)) * CG(j m_L; 1/2 a | j' m_L') * CG(j m_R; 1/2 b | j' m_R'),
// transitions beyond j_max clipped to zero.
Eigen::MatrixXcd link_fundamental(const Su2LinkSpace& space, int two_alpha, int two_beta);

}  // namespace qlm

#endif
