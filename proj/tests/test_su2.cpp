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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlm/basis.hpp"
#include "qlm/states.hpp"
#include "qlm/su2.hpp"

using namespace qlm;
using Cx = std::complex<double>;

namespace {

Eigen::MatrixXcd comm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a * b - b * a;
}

// Physical dimension by counting singlets over link-occupancy patterns: at
// j_max = 1/2 the occupied links must form an even subgraph, and each site
// with k occupied legs contributes its spin-half singlet count (k=0: 1,
// k=2: 1, k=4: 2).
int singlet_count_2x2() {
    int total = 0;
    auto link_at = [&](int x, int y, int d) { return 2 * (((y + 2) % 2) * 2 + ((x + 2) % 2)) + d; };
    for (int mask = 0; mask < 256; ++mask) {
        bool good = true;
        int prod = 1;
        for (int y = 0; y < 2 && good; ++y) {
            for (int x = 0; x < 2 && good; ++x) {
                int k = ((mask >> link_at(x, y, 0)) & 1) + ((mask >> link_at(x, y, 1)) & 1) +
                        ((mask >> link_at(x - 1, y, 0)) & 1) + ((mask >> link_at(x, y - 1, 1)) & 1);
                if (k % 2) {
                    good = false;
                } else {
                    prod *= k == 4 ? 2 : 1;
                }
            }
        }
        if (good) total += prod;
    }
    return total;
}

}  // namespace

TEST_CASE("spin matrices") {
    for (int tj : {1, 2, 3}) {
        Eigen::MatrixXcd sx = su2_spin_matrix(tj, 0);
        Eigen::MatrixXcd sy = su2_spin_matrix(tj, 1);
        Eigen::MatrixXcd sz = su2_spin_matrix(tj, 2);
        CHECK((comm(sx, sy) - Cx(0, 1) * sz).cwiseAbs().maxCoeff() < 1e-13);
        double j = tj / 2.0;
        Eigen::MatrixXcd cas = sx * sx + sy * sy + sz * sz;
        CHECK((cas - j * (j + 1) * Eigen::MatrixXcd::Identity(tj + 1, tj + 1))
                  .cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("link space enumeration") {
    Su2LinkSpace sp = Su2LinkSpace::make(1);
    CHECK(sp.dim() == 5);
    CHECK(sp.states[0].two_j == 0);
    CHECK(sp.index_of(0, 0, 0) == 0);
    CHECK(sp.index_of(1, -1, -1) == 1);
    CHECK(sp.index_of(1, 1, 1) == 4);
    CHECK(sp.index_of(3, 1, 1) == -1);  // beyond truncation
    CHECK(Su2LinkSpace::make(2).dim() == 14);
}

TEST_CASE("endpoint generators close su(2) and commute") {
    for (int tj : {1, 2}) {
        Su2LinkSpace sp = Su2LinkSpace::make(tj);
        Eigen::MatrixXcd l1 = link_gen_origin(sp, 0), l2 = link_gen_origin(sp, 1),
                         l3 = link_gen_origin(sp, 2);
        Eigen::MatrixXcd r1 = link_gen_end(sp, 0), r2 = link_gen_end(sp, 1),
                         r3 = link_gen_end(sp, 2);
        CHECK((comm(l1, l2) - Cx(0, 1) * l3).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((comm(r1, r2) - Cx(0, 1) * r3).cwiseAbs().maxCoeff() < 1e-12);
        for (int a = 0; a < 3; ++a) {
            CHECK((link_gen_origin(sp, a) - link_gen_origin(sp, a).adjoint())
                      .cwiseAbs().maxCoeff() < 1e-14);
            for (int b = 0; b < 3; ++b) {
                CHECK(comm(link_gen_origin(sp, a), link_gen_end(sp, b)).cwiseAbs().maxCoeff() <
                      1e-14);
            }
        }
        // both endpoint Casimirs reduce to j(j+1)
        Eigen::MatrixXcd casl = l1 * l1 + l2 * l2 + l3 * l3;
        Eigen::MatrixXcd casr = r1 * r1 + r2 * r2 + r3 * r3;
        CHECK((casl - link_casimir(sp)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((casr - link_casimir(sp)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Clebsch-Gordan column orthonormality") {
    // The CG columns assemble orthonormal coupled states.
    for (int tj : {1, 2, 3}) {
        for (int tjp : {tj - 1, tj + 1}) {
            if (tjp < 0) continue;
            for (int tmp = -tjp; tmp <= tjp; tmp += 2) {
                double n = 0;
                for (int ta : {-1, 1}) {
                    int tm = tmp - ta;
                    if (std::abs(tm) > tj) continue;
                    double c = cg_with_half(tj, tm, ta, tjp);
                    n += c * c;
                }
                CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("gauss generators on the lattice") {
    LatticeSpec lat = build_lattice(2, 2);
    Su2Model m{1};

    SUBCASE("trivial truncation gives the zero matrix") {
        SparseOperator g = gauss_generator_matrix_su2(lat, Su2Model{0}, 0, 0);
        CHECK(g.nnz() == 0);
    }

    SUBCASE("hermiticity, closure, cross-site commutation") {
        SparseOperator a0 = gauss_generator_matrix_su2(lat, m, 0, 0);
        SparseOperator a1 = gauss_generator_matrix_su2(lat, m, 0, 1);
        SparseOperator a2 = gauss_generator_matrix_su2(lat, m, 0, 2);
        CHECK(a0.hermiticity_error() < 1e-14);
        CHECK((a0.matmul(a1) - a1.matmul(a0) - a2.scaled(Cx(0, 1))).max_abs() < 1e-12);
        SparseOperator b2 = gauss_generator_matrix_su2(lat, m, 2, 1);
        CHECK(commutator_norm(a0, b2) < 1e-12);
    }
}

TEST_CASE("physical basis from the dense kernel") {
    LatticeSpec lat = build_lattice(2, 2);

    SUBCASE("trivial truncation leaves the bare vacuum") {
        PhysicalBasisSu2 b0 = build_physical_basis_su2(lat, Su2Model{0});
        CHECK(b0.dim() == 1);
        CHECK(b0.full_dim() == 1);
    }

    SUBCASE("j_max = 1/2 matches the singlet-counting oracle") {
        PhysicalBasisSu2 basis = build_physical_basis_su2(lat, Su2Model{1});
        CHECK(basis.dim() == singlet_count_2x2());
        CHECK(basis.kernel_gap > 1.0);

        // orthonormal columns
        Eigen::MatrixXd gram = basis.coeffs.transpose() * basis.coeffs;
        CHECK((gram - Eigen::MatrixXd::Identity(basis.dim(), basis.dim()))
                  .cwiseAbs().maxCoeff() < 1e-12);

        // defining property: every member is annihilated by every generator
        double worst = 0;
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            for (int a = 0; a < 3; ++a) {
                SparseOperator g = gauss_generator_matrix_su2(lat, Su2Model{1}, s, a);
                for (int c = 0; c < basis.dim(); ++c) {
                    Eigen::VectorXcd coords = Eigen::VectorXcd::Zero(basis.dim());
                    coords[c] = 1.0;
                    StateVector v = embed_full(basis, StateVector{basis.tag(), coords});
                    worst = std::max(worst, g.apply(v.amps).norm());
                }
            }
        }
        CHECK(worst < 1e-9);
    }

    SUBCASE("budget overflow is loud") {
        CHECK_THROWS_AS(build_physical_basis_su2(lat, Su2Model{1}, 64), BudgetError);
    }

    SUBCASE("deterministic rebuild") {
        PhysicalBasisSu2 a = build_physical_basis_su2(lat, Su2Model{1});
        PhysicalBasisSu2 b = build_physical_basis_su2(lat, Su2Model{1});
        CHECK(a.support == b.support);
        CHECK((a.coeffs - b.coeffs).cwiseAbs().maxCoeff() == 0.0);
    }
}
