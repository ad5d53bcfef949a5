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

#include "qlm/observables.hpp"

#include <algorithm>
#include <cmath>

#include "qlm/lift.hpp"
#include "qlm/su2.hpp"

namespace qlm {

using Cx = std::complex<double>;

namespace {

void require_full(const StateVector& state, const LatticeSpec& lat, const GaugeModel& model,
                  const char* what) {
    if (!(state.tag == full_basis_tag(lat, model))) {
        throw BasisMismatchError(std::string(what) + " requires a full-basis state");
    }
}

double norm2(const StateVector& s) {
    double n = s.norm();
    if (n == 0.0) throw ConfigError("observable on the zero vector");
    return n * n;
}

}  // namespace

double electric_energy(const LatticeSpec& lat, const GaugeModel& model, const StateVector& full) {
    require_full(full, lat, model, "electric_energy");
    const std::uint64_t d = link_dimension(model);
    // Per-link-state weight: e^2 for U(1), j(j+1) for SU(2).
    std::vector<double> weight(d, 0.0);
    if (is_u1(model)) {
        int s = as_u1(model).spin_cutoff;
        for (std::uint64_t k = 0; k < d; ++k) weight[k] = double(int(k) - s) * (int(k) - s);
    } else {
        Su2LinkSpace space = Su2LinkSpace::make(as_su2(model).two_j_max);
        for (std::uint64_t k = 0; k < d; ++k) {
            double j = space.states[k].two_j / 2.0;
            weight[k] = j * (j + 1);
        }
    }
    double total = 0.0;
    for (Eigen::Index idx = 0; idx < full.amps.size(); ++idx) {
        double p = std::norm(full.amps[idx]);
        if (p == 0.0) continue;
        std::uint64_t rem = idx;
        double w = 0.0;
        for (int l = lat.n_links() - 1; l >= 0; --l) {
            w += weight[rem % d];
            rem /= d;
        }
        total += p * w;
    }
    return total / norm2(full);
}

double electric_energy(const PhysicalBasisU1& basis, const StateVector& phys) {
    if (!(phys.tag == basis.tag())) throw BasisMismatchError("state not in this physical basis");
    double total = 0.0;
    for (int i = 0; i < basis.dim(); ++i) {
        double p = std::norm(phys.amps[i]);
        if (p == 0.0) continue;
        double w = 0.0;
        for (int e : basis.members[i]) w += double(e) * e;
        total += p * w;
    }
    return total / norm2(phys);
}

double electric_energy(const PhysicalBasisSu2& basis, const StateVector& phys) {
    return electric_energy(basis.lattice, GaugeModel{basis.model}, embed_full(basis, phys));
}

Cx plaquette_expectation(const LatticeSpec& lat, const GaugeModel& model, const StateVector& full,
                         PlaqId p) {
    require_full(full, lat, model, "plaquette_expectation");
    SparseOperator u = plaquette_op(lat, model, p);
    return full.amps.dot(u.apply(full.amps)) / norm2(full);
}

Cx plaquette_expectation(const PhysicalBasisU1& basis, const StateVector& phys, PlaqId p) {
    return plaquette_expectation(basis.lattice, GaugeModel{basis.model},
                                 embed_full(basis, phys), p);
}

namespace {

Cx wilson_loop_u1(const LatticeSpec& lat, const U1Model& model, const StateVector& full,
                  const PathSpec& path) {
    // The ordered ladder product sends each config to one shifted config (or
    // annihilates it at the cutoff); the expectation is a direct sum over
    // amplitudes.
    Cx total = 0.0;
    for (Eigen::Index idx = 0; idx < full.amps.size(); ++idx) {
        if (full.amps[idx] == Cx(0.0, 0.0)) continue;
        FluxConfig cfg = flux_from_index(lat, model, idx);
        bool alive = true;
        for (const auto& ol : path) {
            cfg[ol.link] += ol.orientation;
            if (std::abs(cfg[ol.link]) > model.spin_cutoff) {
                alive = false;
                break;
            }
        }
        if (!alive) continue;
        total += std::conj(full.amps[flux_index(model, cfg)]) * full.amps[idx];
    }
    return total / norm2(full);
}

Cx wilson_loop_su2(const LatticeSpec& lat, const Su2Model& model, const StateVector& full,
                   const PathSpec& path) {
    if (path.size() > 6) {
        throw BudgetError("SU(2) Wilson loops supported up to 6 links at desk scale");
    }
    const Su2LinkSpace space = Su2LinkSpace::make(model.two_j_max);
    const GaugeModel gm{model};
    const std::uint64_t dim = full_dimension(lat, gm);
    const BasisTag tag = full_basis_tag(lat, gm);
    // Tr prod_i M_i with M_i the 2x2 matrix of component operators of link i
    // (daggered against orientation); contract fundamental indices directly.
    const int k = static_cast<int>(path.size());
    SparseOperator total = SparseOperator::zero(dim, tag);
    std::vector<int> alphas(k, -1);  // index between step i and i+1 (doubled)
    while (true) {
        SparseOperator term = SparseOperator::identity(dim, tag);
        for (int i = 0; i < k; ++i) {
            int a = alphas[i];
            int b = alphas[(i + 1) % k];
            Eigen::MatrixXcd local = link_fundamental(space, a, b);
            if (path[i].orientation < 0) {
                local = link_fundamental(space, b, a).adjoint();
            }
            term = term.matmul(lift_link_operator(lat, gm, local, path[i].link));
        }
        total = total + term;
        int pos = k - 1;
        while (pos >= 0 && alphas[pos] == 1) alphas[pos--] = -1;
        if (pos < 0) break;
        alphas[pos] = 1;
    }
    return full.amps.dot(total.apply(full.amps)) / norm2(full);
}

}  // namespace

Cx wilson_loop(const LatticeSpec& lat, const GaugeModel& model, const StateVector& full,
               const PathSpec& path) {
    require_full(full, lat, model, "wilson_loop");
    if (!path_is_closed(lat, path)) throw ConfigError("Wilson loop requires a closed path");
    if (is_u1(model)) return wilson_loop_u1(lat, as_u1(model), full, path);
    return wilson_loop_su2(lat, as_su2(model), full, path);
}

Cx wilson_loop(const PhysicalBasisU1& basis, const StateVector& phys, const PathSpec& path) {
    return wilson_loop(basis.lattice, GaugeModel{basis.model}, embed_full(basis, phys), path);
}

std::pair<double, double> winding_expectation(const LatticeSpec& lat, const U1Model& model,
                                              const StateVector& full) {
    require_full(full, lat, GaugeModel{model}, "winding_expectation");
    double wx = 0.0, wy = 0.0;
    for (Eigen::Index idx = 0; idx < full.amps.size(); ++idx) {
        double p = std::norm(full.amps[idx]);
        if (p == 0.0) continue;
        WindingSector w = winding_numbers(lat, flux_from_index(lat, model, idx));
        wx += p * w.wx;
        wy += p * w.wy;
    }
    double n2 = norm2(full);
    return {wx / n2, wy / n2};
}

std::pair<double, double> winding_expectation(const PhysicalBasisU1& basis,
                                              const StateVector& phys) {
    if (!(phys.tag == basis.tag())) throw BasisMismatchError("state not in this physical basis");
    double wx = 0.0, wy = 0.0;
    for (int i = 0; i < basis.dim(); ++i) {
        double p = std::norm(phys.amps[i]);
        wx += p * basis.sectors[i].wx;
        wy += p * basis.sectors[i].wy;
    }
    double n2 = norm2(phys);
    return {wx / n2, wy / n2};
}

double gauge_violation(const PhysicalBasisU1& basis, const StateVector& full) {
    double p = project_coords(basis, full).norm();
    return std::clamp(1.0 - p * p / norm2(full), 0.0, 1.0);
}

double gauge_violation(const PhysicalBasisSu2& basis, const StateVector& full) {
    double p = project_coords(basis, full).norm();
    return std::clamp(1.0 - p * p / norm2(full), 0.0, 1.0);
}

std::vector<double> syndrome_sweep(const LatticeSpec& lat, const GaugeModel& model,
                                   const ChargeConfig& charges, const StateVector& full) {
    require_full(full, lat, model, "syndrome_sweep");
    std::vector<double> out(lat.n_sites(), 0.0);
    double n2 = norm2(full);
    if (is_u1(model)) {
        const U1Model& m = as_u1(model);
        for (Eigen::Index idx = 0; idx < full.amps.size(); ++idx) {
            double p = std::norm(full.amps[idx]);
            if (p == 0.0) continue;
            FluxConfig cfg = flux_from_index(lat, m, idx);
            for (SiteId s = 0; s < lat.n_sites(); ++s) {
                int r = gauss_residual_u1(lat, cfg, s, charges);
                out[s] += p * r * r;
            }
        }
    } else {
        const Su2Model& m = as_su2(model);
        if (!charges.neutral_everywhere()) {
            throw ConfigError("SU(2) syndromes support the uncharged Gauss law");
        }
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            for (int a = 0; a < 3; ++a) {
                SparseOperator g = gauss_generator_matrix_su2(lat, m, s, a);
                out[s] += g.apply(full.amps).squaredNorm();
            }
        }
    }
    for (double& v : out) v /= n2;
    return out;
}

GroundState ground_state(const SparseOperator& h, int dense_budget) {
    if (h.hermiticity_error() > 1e-10) {
        throw ConfigError("ground_state requires a Hermitian operator");
    }
    Eigen::MatrixXcd dense = h.to_dense(dense_budget);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    GroundState gs;
    gs.energy = solver.eigenvalues()[0];
    Eigen::VectorXcd v = solver.eigenvectors().col(0);
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::exp(Cx(0.0, -std::arg(v[imax])));
    gs.state = StateVector{h.tag(), v};
    double scale = std::max(1.0, std::abs(solver.eigenvalues()[solver.eigenvalues().size() - 1]));
    gs.multiplicity = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        if (solver.eigenvalues()[i] - gs.energy < 1e-10 * scale) ++gs.multiplicity;
    }
    return gs;
}

std::vector<double> sector_spectrum(const SparseOperator& op, const GaussSectors& sectors,
                                    double lambda, int dense_budget) {
    std::vector<double> spectrum;
    std::size_t accounted = 0;
    std::unordered_map<std::uint64_t, std::pair<int, int>> where;  // index -> (group, pos)
    for (std::size_t g = 0; g < sectors.groups.size(); ++g) {
        for (std::size_t i = 0; i < sectors.groups[g].size(); ++i) {
            where.emplace(sectors.groups[g][i],
                          std::make_pair(static_cast<int>(g), static_cast<int>(i)));
        }
    }
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(sectors.groups.size());
    for (const auto& grp : sectors.groups) {
        if (grp.size() > static_cast<std::size_t>(dense_budget)) {
            throw BudgetError("Gauss sector of size " + std::to_string(grp.size()) +
                              " exceeds the dense budget");
        }
        mats.emplace_back(Eigen::MatrixXcd::Zero(grp.size(), grp.size()));
    }
    for (const auto& e : op.entries()) {
        auto [gr, pr] = where.at(e.row);
        auto [gc, pc] = where.at(e.col);
        if (gr != gc) {
            throw Error("operator mixes Gauss sectors; sector_spectrum needs a "
                        "gauge-commuting operator");
        }
        mats[gr](pr, pc) += e.value;
        ++accounted;
    }
    if (accounted != op.nnz()) throw Error("sector bookkeeping lost entries");
    for (std::size_t g = 0; g < sectors.groups.size(); ++g) {
        double shift = 0.0;
        for (int r : sectors.residuals[g]) shift += double(r) * r;
        shift *= lambda;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mats[g]);
        if (solver.info() != Eigen::Success) throw Error("sector eigendecomposition failed");
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            spectrum.push_back(solver.eigenvalues()[i] + shift);
        }
    }
    std::sort(spectrum.begin(), spectrum.end());
    return spectrum;
}

double entanglement_entropy(const LatticeSpec& lat, const GaugeModel& model,
                            const StateVector& full, const std::vector<LinkId>& links,
                            EntropyUnit unit, int dense_budget) {
    require_full(full, lat, model, "entanglement_entropy");
    std::vector<LinkId> part = links;
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    for (LinkId l : part) {
        if (!lat.valid_link(l)) throw ConfigError("invalid link id in entropy partition");
    }
    const std::uint64_t d = link_dimension(model);
    std::uint64_t dim_a = 1;
    for (std::size_t i = 0; i < part.size(); ++i) {
        dim_a *= d;
        if (dim_a > static_cast<std::uint64_t>(dense_budget)) {
            throw BudgetError("entropy partition dimension exceeds the dense budget");
        }
    }
    const std::uint64_t dim_b = full_dimension(lat, model) / dim_a;

    std::vector<bool> in_a(lat.n_links(), false);
    for (LinkId l : part) in_a[l] = true;

    // Split each full index into (A index, B index) by link membership.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_a, dim_b);
    std::vector<std::uint64_t> digits(lat.n_links());
    for (Eigen::Index idx = 0; idx < full.amps.size(); ++idx) {
        if (full.amps[idx] == Cx(0.0, 0.0)) continue;
        std::uint64_t rem = idx;
        for (int l = lat.n_links() - 1; l >= 0; --l) {
            digits[l] = rem % d;
            rem /= d;
        }
        std::uint64_t ia = 0, ib = 0;
        for (int l = 0; l < lat.n_links(); ++l) {
            if (in_a[l]) {
                ia = ia * d + digits[l];
            } else {
                ib = ib * d + digits[l];
            }
        }
        m(ia, ib) = full.amps[idx];
    }
    m /= full.norm();

    // The reduced density matrix M M^dag shares its spectrum with the squared
    // singular values of M; the SVD route never materializes it.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    double s = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        double p = svd.singularValues()[i] * svd.singularValues()[i];
        if (p < 1e-14) continue;
        s -= p * std::log(p);
    }
    return unit == EntropyUnit::Bits ? s / std::log(2.0) : s;
}

}  // namespace qlm
