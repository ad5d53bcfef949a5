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

#include "qlm/noise.hpp"

#include <cmath>
#include <unordered_set>

#include "qlm/lift.hpp"

namespace qlm {

using Cx = std::complex<double>;

ErrorApplication apply_link_raise_error(const PhysicalBasisU1& basis, const StateVector& full,
                                        LinkId link) {
    if (!(full.tag == basis.full_tag())) {
        throw BasisMismatchError("raise errors act on full-basis states");
    }
    if (!basis.lattice.valid_link(link)) throw ConfigError("invalid link id");
    const U1Model& m = basis.model;
    const LatticeSpec& lat = basis.lattice;

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(full.amps.size());
    for (Eigen::Index idx = 0; idx < full.amps.size(); ++idx) {
        if (full.amps[idx] == Cx(0.0, 0.0)) continue;
        FluxConfig cfg = flux_from_index(lat, m, idx);
        if (cfg[link] == m.spin_cutoff) continue;  // clipped
        cfg[link] += 1;
        out[flux_index(m, cfg)] += full.amps[idx];
    }
    ErrorApplication app;
    app.pre_norm = out.norm();
    if (app.pre_norm < 1e-14) {
        app.absorbed = true;
        app.state = full;  // untouched; the event had no surviving image
        return app;
    }
    app.state = StateVector{full.tag, out / app.pre_norm};
    return app;
}

StateVector apply_dephasing(const PhysicalBasisU1& basis, const StateVector& full, LinkId link,
                            double angle) {
    if (!(full.tag == basis.full_tag())) {
        throw BasisMismatchError("dephasing acts on full-basis states");
    }
    if (!basis.lattice.valid_link(link)) throw ConfigError("invalid link id");
    const U1Model& m = basis.model;
    Eigen::VectorXcd out = full.amps;
    for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
        if (out[idx] == Cx(0.0, 0.0)) continue;
        FluxConfig cfg = flux_from_index(basis.lattice, m, idx);
        if (cfg[link] != 0) out[idx] *= std::exp(Cx(0.0, angle * cfg[link]));
    }
    return StateVector{full.tag, out};
}

NoisyReport run_noisy_trajectory(const HamiltonianParts& full_parts,
                                 const PhysicalBasisU1& basis, const StateVector& psi0_full,
                                 const TrotterPlan& plan, const NoiseSpec& noise,
                                 int dense_budget) {
    if (!(full_parts.h_electric.tag() == basis.full_tag())) {
        throw BasisMismatchError("noisy trajectories run in the full basis");
    }
    GaussSectors sectors = build_gauss_sectors(basis.lattice, basis.model, basis.charges);
    HermitianPropagator electric(full_parts.h_electric, dense_budget, &sectors.groups);
    HermitianPropagator magnetic(full_parts.h_magnetic, dense_budget, &sectors.groups);

    StateVector state = psi0_full;
    NoisyReport report;
    auto record = [&](int step, std::optional<NoiseKind> event, double pre_norm) {
        NoisyStepRecord rec;
        rec.step = step;
        rec.time = step * plan.dt;
        rec.norm = state.norm();
        rec.event = event;
        rec.event_pre_norm = pre_norm;
        rec.checked = noise.check_every > 0 &&
                      (step == 0 || step % noise.check_every == 0 || step == plan.steps);
        if (rec.checked) {
            rec.leakage = gauge_violation(basis, state);
            rec.detected = rec.leakage > kDetectionThreshold;
            rec.syndromes = syndrome_sweep(basis.lattice, GaugeModel{basis.model}, basis.charges,
                                           state);
            report.any_detected = report.any_detected || rec.detected;
            report.final_leakage = rec.leakage;
        }
        report.records.push_back(std::move(rec));
    };

    record(0, std::nullopt, 1.0);
    for (int k = 1; k <= plan.steps; ++k) {
        if (plan.ordering == StepOrder::ElectricFirst) {
            electric.apply(state.amps, plan.dt);
            magnetic.apply(state.amps, plan.dt);
        } else {
            magnetic.apply(state.amps, plan.dt);
            electric.apply(state.amps, plan.dt);
        }
        std::optional<NoiseKind> event;
        double pre_norm = 1.0;
        for (const auto& ev : noise.events) {
            if (ev.step != k) continue;
            if (ev.kind == NoiseKind::LinkRaise) {
                ErrorApplication app = apply_link_raise_error(basis, state, ev.link);
                pre_norm = app.pre_norm;
                state = app.state;
            } else {
                state = apply_dephasing(basis, state, ev.link, ev.angle);
            }
            event = ev.kind;
        }
        record(k, event, pre_norm);
    }
    return report;
}

std::vector<PenaltyPoint> penalty_suppression_experiment(
    const LatticeSpec& lat, const U1Model& model, const ChargeConfig& charges, double g2,
    int magnetic_sign, const std::vector<double>& lambdas, double eps, LinkId link, double t,
    int dense_budget) {
    if (!lat.valid_link(link)) throw ConfigError("invalid link id");
    validate_charges_u1(lat, charges);
    const GaugeModel gm{model};
    const SiteId from = lat.link_origin(link);
    const SiteId to = lat.link_end(link);

    GaussSectors sectors = build_gauss_sectors(lat, model, charges);

    // Union of sectors whose residual pattern is k * (delta_from - delta_to):
    // H and the penalty preserve each sector and the single-link Hermitian
    // perturbation only walks along this family, so the union is invariant.
    std::vector<std::uint64_t> span;
    for (std::size_t g = 0; g < sectors.groups.size(); ++g) {
        const std::vector<int>& r = sectors.residuals[g];
        bool match;
        if (from == to) {
            // Self-loops keep every divergence fixed; only the start sector
            // is reachable.
            match = true;
            for (int v : r) match = match && v == 0;
        } else {
            int k = r[from];
            match = r[to] == -k;
            for (SiteId s = 0; s < lat.n_sites() && match; ++s) {
                if (s != from && s != to) match = r[s] == 0;
            }
        }
        if (!match) continue;
        span.insert(span.end(), sectors.groups[g].begin(), sectors.groups[g].end());
    }
    std::sort(span.begin(), span.end());
    if (span.size() > static_cast<std::size_t>(dense_budget)) {
        throw BudgetError("penalty experiment subspace of dimension " +
                          std::to_string(span.size()) + " exceeds the dense budget");
    }
    std::unordered_map<std::uint64_t, int> pos;
    pos.reserve(span.size());
    for (std::size_t i = 0; i < span.size(); ++i) pos.emplace(span[i], static_cast<int>(i));

    auto gather = [&](const SparseOperator& op, bool require_invariant) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(span.size(), span.size());
        for (const auto& e : op.entries()) {
            auto ic = pos.find(e.col);
            if (ic == pos.end()) continue;
            auto ir = pos.find(e.row);
            if (ir == pos.end()) {
                if (require_invariant) throw Error("operator leaks from the reachable subspace");
                continue;
            }
            m(ir->second, ic->second) += e.value;
        }
        return m;
    };

    HamiltonianParts parts = hamiltonian_u1(lat, model, g2, magnetic_sign);
    SparseOperator raise = link_raise_u1(lat, model, link);
    SparseOperator violation = (raise + raise.adjoint()).scaled(eps);
    SparseOperator penalty_unit = penalty_term(lat, gm, 1.0, charges);

    Eigen::MatrixXcd h0 = gather(parts.total(), true) + gather(violation, true);
    Eigen::MatrixXcd pen = gather(penalty_unit, true);

    // Vacuum start and the physical indicator, both in subspace coordinates.
    PhysicalBasisU1 basis = build_physical_basis_u1(lat, model, charges);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(span.size());
    {
        auto it = pos.find(flux_index(model, FluxConfig(lat.n_links(), 0)));
        if (it == pos.end()) throw Error("vacuum missing from the reachable subspace");
        psi0[it->second] = 1.0;
    }
    std::vector<bool> physical(span.size(), false);
    for (std::size_t i = 0; i < span.size(); ++i) physical[i] = basis.find(span[i]) >= 0;

    std::vector<PenaltyPoint> table;
    for (double lambda : lambdas) {
        if (lambda < 0) throw ConfigError("penalty strength must be >= 0");
        Eigen::MatrixXcd h = h0 + lambda * pen;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
        Eigen::VectorXcd w = solver.eigenvectors().adjoint() * psi0;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            w[i] *= std::exp(Cx(0.0, -solver.eigenvalues()[i] * t));
        }
        Eigen::VectorXcd psi = solver.eigenvectors() * w;
        double phys = 0.0;
        for (std::size_t i = 0; i < span.size(); ++i) {
            if (physical[i]) phys += std::norm(psi[i]);
        }
        table.push_back({lambda, std::clamp(1.0 - phys / psi.squaredNorm(), 0.0, 1.0)});
    }
    return table;
}

}  // namespace qlm
