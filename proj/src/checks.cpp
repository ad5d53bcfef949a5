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

#include "qlm/checks.hpp"

#include <cmath>
#include <random>
#include <set>

#include "qlm/observables.hpp"
#include "qlm/su2.hpp"
#include "qlm/su3.hpp"

namespace qlm {

using Cx = std::complex<double>;

namespace {

// Regression anchors, dense-oracle values at 2x2, S=1, g2=1 with the default
// conventions (magnetic_sign=-1, electric-first). The plaquette and leakage
// anchors are convention-sensitive on purpose: a silently flipped sign keeps
// every symmetry check green and fails here.
constexpr double kAnchorCommutatorHeHb = 1.0;
constexpr double kAnchorGroundPlaquette = 0.899234932623084;
constexpr double kAnchorPenaltyLeakage = 0.192970712335523;
constexpr double kAnchorTol = 1e-6;

struct Suite {
    std::vector<CheckResult>& out;

    void add(const std::string& name, bool pass, double measured, double tol,
             std::string note = "") {
        out.push_back({name, pass, measured, tol, std::move(note)});
    }

    template <typename Fn>
    void guarded(const std::string& name, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            add(name, false, 0.0, 0.0, std::string("exception: ") + e.what());
        }
    }
};

// Independent U(1) oracle: odometer over all configurations, residuals from
// raw coordinate arithmetic (no shared lattice helpers).
std::vector<std::vector<int>> brute_force_u1(int lx, int ly, int s,
                                             const std::vector<int>& rho) {
    const int nl = 2 * lx * ly;
    std::vector<std::vector<int>> out;
    std::vector<int> e(nl, -s);
    auto link_at = [&](int x, int y, int d) {
        return 2 * (((y + ly) % ly) * lx + ((x + lx) % lx)) + d;
    };
    while (true) {
        bool ok = true;
        for (int y = 0; y < ly && ok; ++y) {
            for (int x = 0; x < lx && ok; ++x) {
                int div = e[link_at(x, y, 0)] + e[link_at(x, y, 1)] -
                          e[link_at(x - 1, y, 0)] - e[link_at(x, y - 1, 1)];
                ok = div == rho[y * lx + x];
            }
        }
        if (ok) out.push_back(e);
        int pos = nl - 1;
        while (pos >= 0 && e[pos] == s) e[pos--] = -s;
        if (pos < 0) break;
        ++e[pos];
    }
    return out;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const RunConfig& config) {
    std::vector<CheckResult> results;
    Suite suite{results};

    const LatticeSpec lat = build_lattice(2, 2);
    const U1Model u1{1};
    const GaugeModel gm{u1};
    const ChargeConfig q0 = ChargeConfig::neutral(lat);
    const double g2 = config.g2;
    const int sign = config.magnetic_sign;
    const int budget = config.dense_budget;

    // --- lattice -----------------------------------------------------------
    suite.guarded("lattice.counts", [&] {
        LatticeSpec a = build_lattice(2, 2), b = build_lattice(1, 3);
        bool ok = a.n_sites() == 4 && a.n_links() == 8 && a.n_plaquettes() == 4 &&
                  b.n_sites() == 3 && b.n_links() == 6 && b.n_plaquettes() == 3;
        suite.add("lattice.counts", ok, ok ? 0 : 1, 0);
    });
    suite.guarded("lattice.decode_roundtrip", [&] {
        LatticeSpec l32 = build_lattice(3, 2);
        bool ok = true;
        for (LinkId l = 0; l < l32.n_links(); ++l) {
            ok = ok && l32.link(l32.link_origin(l), l32.link_dir(l)) == l;
        }
        suite.add("lattice.decode_roundtrip", ok, ok ? 0 : 1, 0);
    });
    suite.guarded("lattice.link_plaquette_incidence", [&] {
        LatticeSpec l44 = build_lattice(4, 4);
        std::vector<int> count(l44.n_links(), 0);
        for (PlaqId p = 0; p < l44.n_plaquettes(); ++p) {
            for (const auto& ol : plaquette_links(l44, p)) ++count[ol.link];
        }
        int bad = 0;
        for (int c : count) bad += c != 2;
        suite.add("lattice.link_plaquette_incidence", bad == 0, bad, 0);
    });
    suite.guarded("lattice.loop_closure", [&] {
        LatticeSpec l44 = build_lattice(4, 4);
        int bad = 0;
        for (int w = 1; w <= 4; ++w) {
            for (int h = 1; h <= 4; ++h) {
                if (!path_is_closed(l44, rectangular_loop(l44, 0, w, h))) ++bad;
            }
        }
        suite.add("lattice.loop_closure", bad == 0, bad, 0);
    });

    // --- basis -------------------------------------------------------------
    PhysicalBasisU1 basis = build_physical_basis_u1(lat, u1, q0);
    suite.guarded("basis.oracle_equivalence", [&] {
        auto oracle = brute_force_u1(2, 2, 1, {0, 0, 0, 0});
        bool ok = oracle.size() == static_cast<std::size_t>(basis.dim());
        for (std::size_t i = 0; ok && i < oracle.size(); ++i) {
            ok = oracle[i] == basis.members[i];  // both lexicographic
        }
        suite.add("basis.oracle_equivalence", ok, double(oracle.size()), double(basis.dim()));
    });
    suite.guarded("basis.charged_oracle", [&] {
        ChargeConfig q{{1, -1, 0, 0}};
        PhysicalBasisU1 charged = build_physical_basis_u1(lat, u1, q);
        auto oracle = brute_force_u1(2, 2, 1, q.values);
        bool ok = oracle.size() == static_cast<std::size_t>(charged.dim());
        for (int i = 0; ok && i < charged.dim(); ++i) {
            for (SiteId s = 0; s < 4; ++s) {
                ok = ok && gauss_residual_u1(lat, charged.members[i], s, q) == 0;
            }
        }
        suite.add("basis.charged_oracle", ok, double(oracle.size()), double(charged.dim()));
    });
    suite.guarded("basis.winding_cut_independence", [&] {
        double worst = 0;
        for (const auto& cfg : basis.members) {
            WindingSector w = winding_numbers(lat, cfg);
            for (int off = 0; off < lat.lx; ++off) {
                int wx = 0;
                for (LinkId l : winding_cut(lat, Dir::X, off)) wx += cfg[l];
                worst = std::max(worst, double(std::abs(wx - w.wx)));
            }
            for (int off = 0; off < lat.ly; ++off) {
                int wy = 0;
                for (LinkId l : winding_cut(lat, Dir::Y, off)) wy += cfg[l];
                worst = std::max(worst, double(std::abs(wy - w.wy)));
            }
        }
        suite.add("basis.winding_cut_independence", worst == 0, worst, 0);
    });
    suite.guarded("basis.plaquette_flip_closure", [&] {
        int bad = 0;
        for (const auto& cfg : basis.members) {
            for (PlaqId p = 0; p < lat.n_plaquettes(); ++p) {
                FluxConfig next = cfg;
                bool alive = true;
                for (const auto& ol : plaquette_links(lat, p)) {
                    next[ol.link] += ol.orientation;
                    if (std::abs(next[ol.link]) > u1.spin_cutoff) alive = false;
                }
                if (!alive) continue;
                if (basis.find(flux_index(u1, next)) < 0) ++bad;
                if (!(winding_numbers(lat, next) == winding_numbers(lat, cfg))) ++bad;
            }
        }
        suite.add("basis.plaquette_flip_closure", bad == 0, bad, 0);
    });
    suite.guarded("basis.sector_symmetry", [&] {
        auto parts_map = split_by_winding(basis);
        int total = 0;
        for (const auto& [w, part] : parts_map) total += part.dim();
        bool ok = total == basis.dim() &&
                  parts_map.at({1, 0}).dim() == parts_map.at({-1, 0}).dim() &&
                  parts_map.at({0, 0}).find(flux_index(u1, FluxConfig(8, 0))) >= 0;
        suite.add("basis.sector_symmetry", ok, total, basis.dim());
    });

    // --- operators ---------------------------------------------------------
    HamiltonianParts parts = hamiltonian_u1(lat, u1, g2, sign);
    suite.guarded("operators.hermiticity", [&] {
        double worst = std::max(parts.h_electric.hermiticity_error(),
                                parts.h_magnetic.hermiticity_error());
        worst = std::max(worst, penalty_term(lat, gm, 7.0, q0).hermiticity_error());
        suite.add("operators.hermiticity", worst <= 1e-12, worst, 1e-12);
    });
    suite.guarded("operators.ladder_algebra", [&] {
        SparseOperator e0 = electric_op_u1(lat, u1, 0);
        SparseOperator up = link_raise_u1(lat, u1, 0);
        double c1 = (e0.matmul(up) - up.matmul(e0) - up).max_abs();
        SparseOperator uud = up.adjoint().matmul(up);
        // U^dag U = identity minus the projector onto e = S on the link,
        // so it must be diagonal with values in {0, 1}.
        double c2 = 0;
        for (const auto& ent : uud.entries()) {
            if (ent.row != ent.col) {
                c2 = std::max(c2, std::abs(ent.value));
            } else {
                c2 = std::max(c2, std::min(std::abs(ent.value), std::abs(ent.value - 1.0)));
            }
        }
        suite.add("operators.ladder_algebra", std::max(c1, c2) <= 1e-14, std::max(c1, c2), 1e-14);
    });
    suite.guarded("operators.gauge_invariance", [&] {
        double worst = 0;
        SparseOperator h = parts.total();
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            worst = std::max(worst, commutator_norm(gauss_generator_u1(lat, u1, s, q0), h));
        }
        suite.add("operators.gauge_invariance", worst <= 1e-12, worst, 1e-12);
    });
    suite.guarded("operators.winding_conservation", [&] {
        double worst = std::max(commutator_norm(winding_operator(lat, u1, Dir::X), parts.total()),
                                commutator_norm(winding_operator(lat, u1, Dir::Y), parts.total()));
        suite.add("operators.winding_conservation", worst <= 1e-12, worst, 1e-12);
    });
    suite.guarded("operators.penalty_kernel", [&] {
        SparseOperator pen = penalty_term(lat, gm, 1.0, q0);
        Eigen::VectorXcd d = pen.diagonal();
        int zeros = 0;
        for (Eigen::Index i = 0; i < d.size(); ++i) zeros += std::abs(d[i]) < 1e-14;
        suite.add("operators.penalty_kernel", zeros == basis.dim(), zeros, basis.dim());
    });

    // --- SU(2) -------------------------------------------------------------
    const Su2Model su2{1};
    suite.guarded("su2.link_algebra", [&] {
        double worst = 0;
        for (int tj : {1, 2}) {
            Su2LinkSpace sp = Su2LinkSpace::make(tj);
            auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
                return (a * b - b * a).eval();
            };
            worst = std::max(worst, (comm(link_gen_origin(sp, 0), link_gen_origin(sp, 1)) -
                                     Cx(0, 1) * link_gen_origin(sp, 2)).cwiseAbs().maxCoeff());
            worst = std::max(worst, (comm(link_gen_end(sp, 0), link_gen_end(sp, 1)) -
                                     Cx(0, 1) * link_gen_end(sp, 2)).cwiseAbs().maxCoeff());
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    worst = std::max(worst, comm(link_gen_origin(sp, a), link_gen_end(sp, b))
                                                .cwiseAbs().maxCoeff());
                }
            }
        }
        suite.add("su2.link_algebra", worst <= 1e-12, worst, 1e-12);
    });
    suite.guarded("su2.gauss_closure", [&] {
        SparseOperator a0 = gauss_generator_matrix_su2(lat, su2, 0, 0);
        SparseOperator a1 = gauss_generator_matrix_su2(lat, su2, 0, 1);
        SparseOperator a2 = gauss_generator_matrix_su2(lat, su2, 0, 2);
        double worst = (a0.matmul(a1) - a1.matmul(a0) - a2.scaled(Cx(0, 1))).max_abs();
        SparseOperator b1 = gauss_generator_matrix_su2(lat, su2, 3, 1);
        worst = std::max(worst, commutator_norm(a0, b1));
        suite.add("su2.gauss_closure", worst <= 1e-12, worst, 1e-12);
    });
    suite.guarded("su2.kernel_certificate", [&] {
        PhysicalBasisSu2 sb = build_physical_basis_su2(lat, su2, budget);
        Eigen::MatrixXd gram = sb.coeffs.transpose() * sb.coeffs;
        double ortho = (gram - Eigen::MatrixXd::Identity(sb.dim(), sb.dim()))
                           .cwiseAbs().maxCoeff();
        double worst = 0;
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            for (int a = 0; a < 3; ++a) {
                SparseOperator g = gauss_generator_matrix_su2(lat, su2, s, a);
                for (int c = 0; c < sb.dim(); ++c) {
                    Eigen::VectorXcd coords = Eigen::VectorXcd::Zero(sb.dim());
                    coords[c] = 1.0;
                    StateVector v = embed_full(sb, StateVector{sb.tag(), coords});
                    worst = std::max(worst, g.apply(v.amps).norm());
                }
            }
        }
        suite.add("su2.kernel_certificate", worst <= 1e-9 && ortho <= 1e-12,
                  std::max(worst, ortho), 1e-9,
                  "dim " + std::to_string(sb.dim()) + ", gap " + std::to_string(sb.kernel_gap));
    });

    // --- states ------------------------------------------------------------
    suite.guarded("states.projector_idempotent", [&] {
        std::mt19937_64 rng(config.seed + 11);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst = 0;
        for (int k = 0; k < 20; ++k) {
            Eigen::VectorXcd v(basis.full_dim());
            for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Cx(gauss(rng), gauss(rng));
            StateVector psi{basis.full_tag(), v / v.norm()};
            StateVector p1 = physical_projector_apply(basis, psi);
            StateVector p2 = physical_projector_apply(basis, p1);
            worst = std::max(worst, (p2.amps - p1.amps).norm());
        }
        suite.add("states.projector_idempotent", worst <= 1e-12, worst, 1e-12);
    });
    suite.guarded("states.gauge_invariance_iff_physical", [&] {
        std::mt19937_64 rng(config.seed + 12);
        std::normal_distribution<double> gauss(0.0, 1.0);
        bool ok = true;
        for (int k = 0; k < 10; ++k) {
            Eigen::VectorXcd v(basis.full_dim());
            for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Cx(gauss(rng), gauss(rng));
            StateVector psi{basis.full_tag(), v / v.norm()};
            if (k % 2 == 0) psi = physical_projector_apply(basis, psi).normalized();
            double worst_move = 0;
            for (SiteId s = 0; s < lat.n_sites(); ++s) {
                for (int a = 1; a <= 8; ++a) {
                    StateVector rot =
                        apply_gauge_transform_u1(basis, psi, s, 2 * M_PI * a / 8.0);
                    worst_move = std::max(worst_move, (rot.amps - psi.amps).norm());
                }
            }
            bool invariant = worst_move <= 1e-10;
            bool physical = gauge_violation(basis, psi) <= 1e-12;
            ok = ok && invariant == physical;
        }
        suite.add("states.gauge_invariance_iff_physical", ok, ok ? 0 : 1, 0);
    });
    suite.guarded("states.su3_singlets", [&] {
        std::mt19937_64 rng(config.seed + 13);
        ColorRegisterState meson = meson_state_su3();
        ColorRegisterState baryon = baryon_state_su3();
        double worst = 0;
        for (int k = 0; k < 20; ++k) {
            Eigen::Matrix3cd g = random_su3(rng);
            worst = std::max(worst, 1.0 - fidelity(meson, apply_color_transform(meson, g)));
            worst = std::max(worst, 1.0 - fidelity(baryon, apply_color_transform(baryon, g)));
        }
        suite.add("states.su3_singlets", worst <= 1e-12, worst, 1e-12);
    });

    // --- evolution ---------------------------------------------------------
    SparseOperator he_phys = restrict_to_physical(parts.h_electric, basis);
    SparseOperator hb_phys = restrict_to_physical(parts.h_magnetic, basis);
    HamiltonianParts phys_parts{he_phys, hb_phys, g2, sign};
    StateVector vac = vacuum_state(basis);
    suite.guarded("evolution.trivial_split", [&] {
        HamiltonianParts p0{he_phys, SparseOperator::zero(he_phys.dim(), he_phys.tag()), g2, sign};
        auto [psi, rep] = trotter_evolve(p0, vac, TrotterPlan{0.1, 10}, {}, budget);
        StateVector exact = exact_evolve(he_phys, vac, 1.0, budget);
        double err = (psi.amps - exact.amps).norm();
        suite.add("evolution.trivial_split", err <= 1e-12, err, 1e-12);
    });
    suite.guarded("evolution.first_order_scaling", [&] {
        double e1 = trotter_error(phys_parts, vac, TrotterPlan{0.1, 10}, budget);
        double e2 = trotter_error(phys_parts, vac, TrotterPlan{0.05, 20}, budget);
        double ratio = e1 / e2;
        suite.add("evolution.first_order_scaling", ratio >= 1.7 && ratio <= 2.3, ratio, 2.0);
    });
    suite.guarded("evolution.winding_constant", [&] {
        StateVector loop_x = flux_loop_state(basis, wrapping_loop(lat, Dir::X, 0), 1);
        std::vector<Observer> obs = {{"wx", [&](const StateVector& s) {
                                          return Cx(winding_expectation(basis, s).first, 0);
                                      }}};
        auto [psi, rep] = trotter_evolve(phys_parts, loop_x, TrotterPlan{0.1, 20}, obs, budget);
        double worst = 0;
        for (const auto& rec : rep.records) {
            worst = std::max(worst, std::abs(rec.observables[0].value.real() - 1.0));
        }
        worst = std::max(worst, rep.max_norm_drift);
        suite.add("evolution.winding_constant", worst <= 1e-10, worst, 1e-10);
    });

    // --- noise -------------------------------------------------------------
    suite.guarded("noise.raise_detection", [&] {
        double lowest = 1.0;
        bool localized = true;
        StateVector vacf = embed_full(basis, vac);
        for (LinkId l = 0; l < lat.n_links(); ++l) {
            ErrorApplication app = apply_link_raise_error(basis, vacf, l);
            lowest = std::min(lowest, gauge_violation(basis, app.state));
            auto syn = syndrome_sweep(lat, gm, q0, app.state);
            SiteId from = lat.link_origin(l), to = lat.link_end(l);
            for (SiteId s = 0; s < lat.n_sites(); ++s) {
                bool endpoint = s == from || s == to;
                localized = localized && (endpoint ? syn[s] > 0.5 : syn[s] < 1e-12);
            }
        }
        suite.add("noise.raise_detection", lowest >= 1.0 - 1e-12 && localized, lowest, 1.0);
    });
    suite.guarded("noise.dephasing_undetectable", [&] {
        StateVector loop = flux_loop_state(basis, rectangular_loop(lat, 0, 1, 1), 1);
        StateVector f = embed_full(basis, loop);
        StateVector d = apply_dephasing(basis, f, 0, 0.7);
        double leak = gauge_violation(basis, d);
        auto syn = syndrome_sweep(lat, gm, q0, d);
        double worst = leak;
        for (double v : syn) worst = std::max(worst, v);
        suite.add("noise.dephasing_undetectable", worst <= 1e-12, worst, 1e-12);
    });
    suite.guarded("noise.penalty_monotone", [&] {
        auto table = penalty_suppression_experiment(lat, u1, q0, g2, sign, {0, 1, 10, 100}, 0.1,
                                                    0, 5.0, budget);
        double worst_rise = 0;
        for (std::size_t i = 1; i < table.size(); ++i) {
            worst_rise = std::max(worst_rise, table[i].leakage - table[i - 1].leakage);
        }
        suite.add("noise.penalty_monotone", worst_rise <= 1e-6, worst_rise, 1e-6);
    });

    // --- observables -------------------------------------------------------
    suite.guarded("observables.wilson_eq_plaquette", [&] {
        GroundState gs = ground_state(phys_parts.total(), budget);
        Cx w = wilson_loop(basis, gs.state, rectangular_loop(lat, 0, 1, 1));
        Cx pl = plaquette_expectation(basis, gs.state, 0);
        double diff = std::abs(w - pl);
        suite.add("observables.wilson_eq_plaquette", diff <= 1e-13, diff, 1e-13);
    });
    suite.guarded("observables.entropy", [&] {
        StateVector loop_x = flux_loop_state(basis, wrapping_loop(lat, Dir::X, 0), 1);
        StateVector loop_y = flux_loop_state(basis, wrapping_loop(lat, Dir::Y, 0), 1);
        std::vector<StateVector> ss = {loop_x, loop_y};
        std::vector<Cx> aa = {Cx(1 / std::sqrt(2.0), 0), Cx(1 / std::sqrt(2.0), 0)};
        StateVector sup = embed_full(basis, superpose(ss, aa));
        std::vector<LinkId> part;  // the x-loop's links
        for (const auto& ol : wrapping_loop(lat, Dir::X, 0)) part.push_back(ol.link);
        std::vector<LinkId> comp;
        for (LinkId l = 0; l < lat.n_links(); ++l) {
            if (std::find(part.begin(), part.end(), l) == part.end()) comp.push_back(l);
        }
        double e1 = entanglement_entropy(lat, gm, sup, part, EntropyUnit::Bits, budget);
        double e2 = entanglement_entropy(lat, gm, sup, comp, EntropyUnit::Bits, budget);
        StateVector vacf = embed_full(basis, vac);
        double e0 = entanglement_entropy(lat, gm, vacf, part, EntropyUnit::Bits, budget);
        double worst = std::max({std::abs(e1 - 1.0), std::abs(e1 - e2), e0});
        suite.add("observables.entropy", worst <= 1e-10, worst, 1e-10);
    });

    // --- regression anchors -------------------------------------------------
    suite.guarded("anchors.commutator_he_hb", [&] {
        HamiltonianParts ref = hamiltonian_u1(lat, u1, 1.0, sign);
        double v = commutator_norm(ref.h_electric, ref.h_magnetic);
        suite.add("anchors.commutator_he_hb", std::abs(v - kAnchorCommutatorHeHb) <= 1e-9, v,
                  kAnchorCommutatorHeHb);
    });
    suite.guarded("anchors.ground_plaquette", [&] {
        HamiltonianParts ref = hamiltonian_u1(lat, u1, 1.0, sign);
        GroundState gs = ground_state(restrict_to_physical(ref.total(), basis), budget);
        SparseOperator u = plaquette_op(lat, gm, 0);
        SparseOperator uud = restrict_to_physical(u + u.adjoint(), basis);
        double v = gs.state.amps.dot(uud.apply(gs.state.amps)).real();
        suite.add("anchors.ground_plaquette", std::abs(v - kAnchorGroundPlaquette) <= kAnchorTol,
                  v, kAnchorGroundPlaquette,
                  "recorded for magnetic_sign=-1 at g2=1; a flipped sign fails here");
    });
    suite.guarded("anchors.penalty_leakage", [&] {
        auto table =
            penalty_suppression_experiment(lat, u1, q0, 1.0, sign, {0.0}, 0.1, 0, 5.0, budget);
        double v = table.at(0).leakage;
        suite.add("anchors.penalty_leakage", std::abs(v - kAnchorPenaltyLeakage) <= kAnchorTol, v,
                  kAnchorPenaltyLeakage, "recorded for magnetic_sign=-1 at g2=1");
    });

    // --- budget surfacing ---------------------------------------------------
    suite.guarded("budget.surfacing", [&] {
        bool thrown = false;
        try {
            ground_state(phys_parts.total(), 1);
        } catch (const BudgetError&) {
            thrown = true;
        }
        suite.add("budget.surfacing", thrown, thrown ? 0 : 1, 0);
    });

    return results;
}

}  // namespace qlm
