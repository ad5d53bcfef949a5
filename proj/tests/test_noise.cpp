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

#include "oracles.hpp"
#include "qlm/noise.hpp"
#include "qlm/operators.hpp"

using namespace qlm;
using Cx = std::complex<double>;

namespace {

struct Fixture {
    LatticeSpec lat = build_lattice(2, 2);
    U1Model model{1};
    GaugeModel gm{model};
    ChargeConfig q0 = ChargeConfig::neutral(lat);
    PhysicalBasisU1 basis = build_physical_basis_u1(lat, model, q0);
    HamiltonianParts parts = hamiltonian_u1(lat, model, 1.0);
    StateVector vacf{basis.full_tag(), Eigen::VectorXcd::Zero(6561)};

    Fixture() { vacf = embed_full(basis, vacuum_state(basis)); }
};

}  // namespace

TEST_CASE("link raise errors") {
    Fixture f;

    SUBCASE("open a string on the vacuum") {
        ErrorApplication app = apply_link_raise_error(f.basis, f.vacf, 0);
        CHECK_FALSE(app.absorbed);
        CHECK(app.pre_norm == doctest::Approx(1.0));
        CHECK(gauge_violation(f.basis, app.state) == doctest::Approx(1.0));
        auto syn = syndrome_sweep(f.lat, f.gm, f.q0, app.state);
        CHECK(syn[f.lat.link_origin(0)] == doctest::Approx(1.0));
        CHECK(syn[f.lat.link_end(0)] == doctest::Approx(1.0));
    }

    SUBCASE("the matching lowering restores the vacuum") {
        ErrorApplication app = apply_link_raise_error(f.basis, f.vacf, 3);
        SparseOperator lower = link_raise_u1(f.lat, f.model, 3).adjoint();
        Eigen::VectorXcd back = lower.apply(app.state.amps);
        back /= back.norm();
        CHECK((back - f.vacf.amps).norm() < 1e-14);
    }

    SUBCASE("detected with probability one on every physical basis state") {
        for (LinkId l = 0; l < f.lat.n_links(); ++l) {
            for (int i = 0; i < f.basis.dim(); ++i) {
                Eigen::VectorXcd coords = Eigen::VectorXcd::Zero(f.basis.dim());
                coords[i] = 1.0;
                StateVector full = embed_full(f.basis, StateVector{f.basis.tag(), coords});
                ErrorApplication app = apply_link_raise_error(f.basis, full, l);
                if (app.absorbed) continue;  // clipped at the cutoff shell
                CHECK(gauge_violation(f.basis, app.state) == doctest::Approx(1.0));
            }
        }
    }

    SUBCASE("absorbed by truncation at S = 0") {
        LatticeSpec lat = f.lat;
        U1Model frozen{0};
        PhysicalBasisU1 basis0 = build_physical_basis_u1(lat, frozen, f.q0);
        StateVector vac0 = embed_full(basis0, vacuum_state(basis0));
        ErrorApplication app = apply_link_raise_error(basis0, vac0, 0);
        CHECK(app.absorbed);
        CHECK(app.pre_norm == doctest::Approx(0.0));
    }
}

TEST_CASE("dephasing") {
    Fixture f;

    SUBCASE("acts trivially on the vacuum") {
        StateVector out = apply_dephasing(f.basis, f.vacf, 2, 1.3);
        CHECK((out.amps - f.vacf.amps).norm() == 0.0);
    }

    SUBCASE("keeps loop states physical") {
        StateVector loop =
            embed_full(f.basis, flux_loop_state(f.basis, rectangular_loop(f.lat, 0, 1, 1), 1));
        StateVector out = apply_dephasing(f.basis, loop, 0, 0.9);
        CHECK(gauge_violation(f.basis, out) == 0.0);
        for (double v : syndrome_sweep(f.lat, f.gm, f.q0, out)) CHECK(v == 0.0);
        // the phase actually landed
        CHECK(std::abs(inner(out, loop) - std::exp(Cx(0, -0.9))) < 1e-12);
    }

    SUBCASE("commutes with every Gauss generator") {
        // diagonal exp(i theta E) vs diagonal G: compare as operators on a
        // random state
        std::mt19937_64 rng(6);
        StateVector psi{f.basis.full_tag(), oracles::random_state(rng, f.basis.full_dim())};
        for (SiteId s = 0; s < f.lat.n_sites(); ++s) {
            SparseOperator g = gauss_generator_u1(f.lat, f.model, s, f.q0);
            StateVector a{psi.tag, g.apply(apply_dephasing(f.basis, psi, 1, 0.4).amps)};
            StateVector b = apply_dephasing(
                f.basis, StateVector{psi.tag, g.apply(psi.amps)}, 1, 0.4);
            CHECK((a.amps - b.amps).norm() <= 1e-12);
        }
    }
}

TEST_CASE("noisy trajectories") {
    Fixture f;
    TrotterPlan plan{0.1, 10};

    SUBCASE("no events reproduces the clean trajectory") {
        NoiseSpec quiet;
        quiet.check_every = 1;
        NoisyReport a = run_noisy_trajectory(f.parts, f.basis, f.vacf, plan, quiet);
        NoisyReport b = run_noisy_trajectory(f.parts, f.basis, f.vacf, plan, quiet);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].leakage == b.records[i].leakage);
            CHECK(a.records[i].norm == b.records[i].norm);
        }
        CHECK(a.final_leakage <= 1e-10);
        CHECK_FALSE(a.any_detected);
    }

    SUBCASE("a raise error is caught at its step") {
        NoiseSpec spec;
        spec.check_every = 1;
        spec.events = {{5, NoiseKind::LinkRaise, 3, 0.0}};
        NoisyReport rep = run_noisy_trajectory(f.parts, f.basis, f.vacf, plan, spec);
        CHECK(rep.any_detected);
        CHECK(rep.records[5].detected);
        CHECK(rep.records[5].leakage == doctest::Approx(1.0));
        CHECK_FALSE(rep.records[4].detected);
        // syndromes localized at the affected link's endpoints
        auto& syn = rep.records[5].syndromes;
        CHECK(syn[f.lat.link_origin(3)] > 0.5);
        CHECK(syn[f.lat.link_end(3)] > 0.5);
    }

    SUBCASE("dephasing corrupts within the physical sector, undetected") {
        StateVector loop =
            embed_full(f.basis, flux_loop_state(f.basis, rectangular_loop(f.lat, 0, 1, 1), 1));
        NoiseSpec noisy;
        noisy.check_every = 1;
        noisy.events = {{3, NoiseKind::Dephase, 0, 0.8}, {7, NoiseKind::Dephase, 5, 1.1}};
        NoisyReport rep = run_noisy_trajectory(f.parts, f.basis, loop, plan, noisy);
        for (const auto& rec : rep.records) {
            CHECK(rec.leakage <= 1e-10);
            CHECK_FALSE(rec.detected);
        }
        // yet the final state differs from the clean run: gauge checks
        // cannot see within-sector noise
        GaussSectors sectors = build_gauss_sectors(f.lat, f.model, f.q0);
        auto [clean_final, ignore] = trotter_evolve(f.parts, loop, plan, {}, kDefaultDenseBudget,
                                                    nullptr, &sectors.groups);
        StateVector noisy_final = loop;
        {
            HermitianPropagator he(f.parts.h_electric, kDefaultDenseBudget, &sectors.groups);
            HermitianPropagator hb(f.parts.h_magnetic, kDefaultDenseBudget, &sectors.groups);
            StateVector s = loop;
            for (int k = 1; k <= plan.steps; ++k) {
                he.apply(s.amps, plan.dt);
                hb.apply(s.amps, plan.dt);
                for (const auto& ev : noisy.events) {
                    if (ev.step == k) s = apply_dephasing(f.basis, s, ev.link, ev.angle);
                }
            }
            noisy_final = s;
        }
        CHECK(fidelity(clean_final, noisy_final) < 1.0 - 1e-3);
    }
}

TEST_CASE("penalty suppression experiment") {
    Fixture f;

    SUBCASE("no violation means no leakage at any lambda") {
        auto table = penalty_suppression_experiment(f.lat, f.model, f.q0, 1.0, -1,
                                                    {0.0, 1.0, 100.0}, 0.0, 0, 5.0);
        for (const auto& p : table) CHECK(p.leakage <= 1e-12);
    }

    SUBCASE("leakage is monotone and suppressed at large lambda") {
        auto table = penalty_suppression_experiment(f.lat, f.model, f.q0, 1.0, -1,
                                                    {0.0, 1.0, 10.0, 100.0}, 0.1, 0, 5.0);
        REQUIRE(table.size() == 4);
        CHECK(table[0].leakage == doctest::Approx(0.192970712335523).epsilon(1e-6));
        for (std::size_t i = 1; i < table.size(); ++i) {
            CHECK(table[i].leakage <= table[i - 1].leakage + 1e-6);
        }
        CHECK(table[3].leakage < table[1].leakage);
        CHECK(table[3].leakage < 1e-4);  // approaching the projected limit
    }

    SUBCASE("matches a plain dense evolution on a small lattice") {
        // 1x2 ladder: the full space is 81-dimensional, so the invariant
        // subspace reduction can be checked against an unreduced dense
        // exponential of H + lambda P + eps V.
        LatticeSpec lat = build_lattice(1, 2);
        U1Model model{1};
        ChargeConfig q0 = ChargeConfig::neutral(lat);
        PhysicalBasisU1 basis = build_physical_basis_u1(lat, model, q0);
        double eps = 0.2, t = 3.0, lambda = 2.5;
        LinkId link = 1;

        auto table = penalty_suppression_experiment(lat, model, q0, 1.0, -1, {lambda}, eps, link,
                                                    t, 128);

        HamiltonianParts parts = hamiltonian_u1(lat, model, 1.0);
        SparseOperator raise = link_raise_u1(lat, model, link);
        SparseOperator h = parts.total() + (raise + raise.adjoint()).scaled(eps) +
                           penalty_term(lat, GaugeModel{model}, lambda, q0);
        StateVector vac = embed_full(basis, vacuum_state(basis));
        StateVector out = exact_evolve(h, vac, t, 128);
        double leak = gauge_violation(basis, out);
        CHECK(table[0].leakage == doctest::Approx(leak).epsilon(1e-10));
    }
}
