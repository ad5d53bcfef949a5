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

#include "qlm/su2.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace qlm {

using Cx = std::complex<double>;

Su2LinkSpace Su2LinkSpace::make(int two_j_max) {
    if (two_j_max < 0) throw ConfigError("SU(2) truncation j_max must be >= 0");
    Su2LinkSpace s;
    s.two_j_max = two_j_max;
    for (int two_j = 0; two_j <= two_j_max; ++two_j) {
        for (int two_ml = -two_j; two_ml <= two_j; two_ml += 2) {
            for (int two_mr = -two_j; two_mr <= two_j; two_mr += 2) {
                s.states.push_back({two_j, two_ml, two_mr});
            }
        }
    }
    return s;
}

int Su2LinkSpace::index_of(int two_j, int two_ml, int two_mr) const {
    // Blocks of size (2j+1)^2 stacked by ascending j.
    if (two_j < 0 || two_j > two_j_max) return -1;
    if (std::abs(two_ml) > two_j || std::abs(two_mr) > two_j) return -1;
    if ((two_ml - two_j) % 2 != 0 || (two_mr - two_j) % 2 != 0) return -1;
    int base = 0;
    for (int tj = 0; tj < two_j; ++tj) base += (tj + 1) * (tj + 1);
    int d = two_j + 1;
    int il = (two_ml + two_j) / 2;
    int ir = (two_mr + two_j) / 2;
    return base + il * d + ir;
}

Eigen::MatrixXcd su2_spin_matrix(int two_j, int a) {
    int d = two_j + 1;
    double j = two_j / 2.0;
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k + 1 < d; ++k) {
        double m = -j + k;
        sp(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    Eigen::MatrixXcd sm = sp.adjoint();
    switch (a) {
        case 0: return (sp + sm) / 2.0;
        case 1: return (sp - sm) / Cx(0.0, 2.0);
        case 2: {
            Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(d, d);
            for (int k = 0; k < d; ++k) sz(k, k) = -j + k;
            return sz;
        }
        default: throw ConfigError("spin matrix index must be 0, 1 or 2");
    }
}

namespace {

enum class Side { Left, Right };

// Lift a (2j+1)-dim matrix acting on one m index to the full link space,
// block by block in j.
Eigen::MatrixXcd lift_side(const Su2LinkSpace& space,
                           const std::vector<Eigen::MatrixXcd>& per_j, Side side) {
    int d = space.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const auto& st = space.states[i];
        const Eigen::MatrixXcd& blk = per_j[st.two_j];
        int dj = st.two_j + 1;
        if (side == Side::Left) {
            int col = (st.two_ml + st.two_j) / 2;
            for (int row = 0; row < dj; ++row) {
                Cx v = blk(row, col);
                if (v == Cx(0.0, 0.0)) continue;
                int two_mlp = -st.two_j + 2 * row;
                m(space.index_of(st.two_j, two_mlp, st.two_mr), i) += v;
            }
        } else {
            int col = (st.two_mr + st.two_j) / 2;
            for (int row = 0; row < dj; ++row) {
                Cx v = blk(row, col);
                if (v == Cx(0.0, 0.0)) continue;
                int two_mrp = -st.two_j + 2 * row;
                m(space.index_of(st.two_j, st.two_ml, two_mrp), i) += v;
            }
        }
    }
    return m;
}

}  // namespace

Eigen::MatrixXcd link_gen_origin(const Su2LinkSpace& space, int a) {
    std::vector<Eigen::MatrixXcd> per_j;
    for (int two_j = 0; two_j <= space.two_j_max; ++two_j) {
        per_j.push_back(-su2_spin_matrix(two_j, a).transpose());
    }
    return lift_side(space, per_j, Side::Left);
}

Eigen::MatrixXcd link_gen_end(const Su2LinkSpace& space, int a) {
    std::vector<Eigen::MatrixXcd> per_j;
    for (int two_j = 0; two_j <= space.two_j_max; ++two_j) {
        per_j.push_back(su2_spin_matrix(two_j, a));
    }
    return lift_side(space, per_j, Side::Right);
}

Eigen::MatrixXcd link_casimir(const Su2LinkSpace& space) {
    int d = space.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        double j = space.states[i].two_j / 2.0;
        m(i, i) = j * (j + 1);
    }
    return m;
}

double cg_with_half(int two_j, int two_m, int two_alpha, int two_jp) {
    double j = two_j / 2.0;
    double m = two_m / 2.0;
    if (two_alpha != 1 && two_alpha != -1) {
        throw ConfigError("fundamental index must be +-1/2");
    }
    if (two_jp == two_j + 1) {
        return two_alpha == 1 ? std::sqrt((j + m + 1) / (2 * j + 1))
                              : std::sqrt((j - m + 1) / (2 * j + 1));
    }
    if (two_jp == two_j - 1) {
        return two_alpha == 1 ? -std::sqrt((j - m) / (2 * j + 1))
                              : std::sqrt((j + m) / (2 * j + 1));
    }
    return 0.0;
}

Eigen::MatrixXcd link_fundamental(const Su2LinkSpace& space, int two_alpha, int two_beta) {
    int d = space.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const auto& st = space.states[i];
        for (int two_jp = st.two_j - 1; two_jp <= st.two_j + 1; two_jp += 2) {
            if (two_jp < 0 || two_jp > space.two_j_max) continue;  // clipped
            int two_mlp = st.two_ml + two_alpha;
            int two_mrp = st.two_mr + two_beta;
            int target = space.index_of(two_jp, two_mlp, two_mrp);
            if (target < 0) continue;
            double amp = std::sqrt(double(st.two_j + 1) / double(two_jp + 1)) *
                         cg_with_half(st.two_j, st.two_ml, two_alpha, two_jp) *
                         cg_with_half(st.two_j, st.two_mr, two_beta, two_jp);
            m(target, i) += amp;
        }
    }
    return m;
}

}  // namespace qlm
