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
#include "qlm/observables.hpp"
#include "qlm/operators.hpp"
#include "qlm/noise.hpp"
#include "qlm/states.hpp"

using namespace qlm;
using Cx = std::complex<double>;

namespace {

struct Fixture {
    LatticeSpec lat = build_lattice(2, 2);
    U1Model model{1};
    ChargeConfig q0 = ChargeConfig::neutral(lat);
    PhysicalBasisU1 basis = build_physical_basis_u1(lat, model, q0);
};

}  // namespace

TEST_CASE("vacuum state") {
    Fixture f;
    StateVector vac = vacuum_state(f.basis);
    CHECK(vac.norm() == doctest::Approx(1.0));
    CHECK(electric_energy(f.basis, vac) == doctest::Approx(0.0));
    StateVector full = embed_full(f.basis, vac);
    CHECK(gauge_violation(f.basis, full) == 0.0);

    ChargeConfig q{{1, -1, 0, 0}};
    PhysicalBasisU1 charged = build_physical_basis_u1(f.lat, f.model, q);
    CHECK_THROWS_AS(vacuum_state(charged), ConfigError);
}

TEST_CASE("flux loop states") {
    Fixture f;

    SUBCASE("plaquette loop") {
        StateVector loop = flux_loop_state(f.basis, rectangular_loop(f.lat, 0, 1, 1), 1);
        CHECK(winding_expectation(f.basis, loop) == std::pair{0.0, 0.0});
        CHECK(electric_energy(f.basis, loop) == doctest::Approx(4.0));
        // <H_E> = 2 g^2 on four unit links
        for (double g2 : {0.7, 2.0}) {
            HamiltonianParts p = hamiltonian_u1(f.lat, f.model, g2);
            SparseOperator he = restrict_to_physical(p.h_electric, f.basis);
            CHECK(loop.amps.dot(he.apply(loop.amps)).real() == doctest::Approx(2.0 * g2));
        }
    }

    SUBCASE("row-wrapping loop carries winding") {
        StateVector loop = flux_loop_state(f.basis, wrapping_loop(f.lat, Dir::X, 0), 1);
        auto [wx, wy] = winding_expectation(f.basis, loop);
        CHECK(wx == doctest::Approx(1.0));
        CHECK(wy == doctest::Approx(0.0));
    }

    SUBCASE("truncation and closure guards") {
        CHECK_THROWS_AS(flux_loop_state(f.basis, rectangular_loop(f.lat, 0, 1, 1), 2),
                        ConfigError);
        PathSpec open = straight_path(f.lat, 0, Dir::X, 1);
        CHECK_THROWS_AS(flux_loop_state(f.basis, open, 1), ConfigError);
    }
}

TEST_CASE("string states between static charges") {
    LatticeSpec lat = build_lattice(2, 2);
    U1Model model{1};
    ChargeConfig q{{1, -1, 0, 0}};
    PhysicalBasisU1 charged = build_physical_basis_u1(lat, model, q);

    PathSpec direct = straight_path(lat, 0, Dir::X, 1);
    StateVector s1 = string_state(charged, direct, 1);
    StateVector full = embed_full(charged, s1);
    for (double v : syndrome_sweep(lat, GaugeModel{model}, q, full)) CHECK(v == 0.0);

    // a second route between the same charges, and their superposition
    PathSpec around;
    around.push_back({lat.link(lat.site(1, 0), Dir::X), -1});
    StateVector s2 = string_state(charged, around, 1);
    std::vector<StateVector> both = {s1, s2};
    std::vector<Cx> amps = {Cx(M_SQRT1_2, 0), Cx(M_SQRT1_2, 0)};
    StateVector tube = superpose(both, amps);
    CHECK(gauge_violation(charged, embed_full(charged, tube)) == 0.0);

    // wrong charge signs rejected
    CHECK_THROWS_AS(string_state(charged, direct, -1), ConfigError);
    // wrong endpoints rejected
    PathSpec elsewhere = straight_path(lat, lat.site(0, 1), Dir::X, 1);
    CHECK_THROWS_AS(string_state(charged, elsewhere, 1), ConfigError);
}

TEST_CASE("superpose") {
    Fixture f;
    StateVector lx = flux_loop_state(f.basis, wrapping_loop(f.lat, Dir::X, 0), 1);
    StateVector ly = flux_loop_state(f.basis, wrapping_loop(f.lat, Dir::Y, 0), 1);

    std::vector<StateVector> states = {lx, ly};
    std::vector<Cx> amps = {Cx(M_SQRT1_2, 0), Cx(M_SQRT1_2, 0)};
    StateVector sup = superpose(states, amps);
    CHECK(sup.norm() == doctest::Approx(1.0));
    CHECK(gauge_violation(f.basis, embed_full(f.basis, sup)) == 0.0);
    CHECK(winding_support(f.basis, sup).size() == 2);  // superselection flag
    CHECK(winding_support(f.basis, lx).size() == 1);

    // <U + U^dag> on (vacuum + plaquette loop)/sqrt(2), against the dense oracle
    StateVector vac = vacuum_state(f.basis);
    StateVector loop = flux_loop_state(f.basis, rectangular_loop(f.lat, 0, 1, 1), 1);
    std::vector<StateVector> pair = {vac, loop};
    StateVector mix = superpose(pair, amps);
    SparseOperator u = plaquette_op(f.lat, GaugeModel{f.model}, 0);
    SparseOperator uud = restrict_to_physical(u + u.adjoint(), f.basis);
    Cx got = mix.amps.dot(uud.apply(mix.amps));
    Eigen::MatrixXcd dense = uud.to_dense();
    Cx want = (mix.amps.adjoint() * dense * mix.amps)(0, 0);
    CHECK(std::abs(got - want) < 1e-14);
    CHECK(got.real() == doctest::Approx(1.0));

    // error paths
    StateVector fullvac = embed_full(f.basis, vac);
    std::vector<StateVector> mixed_tags = {vac, fullvac};
    CHECK_THROWS_AS(superpose(mixed_tags, amps), BasisMismatchError);
    std::vector<StateVector> cancel = {vac, vac};
    std::vector<Cx> opposite = {Cx(1, 0), Cx(-1, 0)};
    CHECK_THROWS_AS(superpose(cancel, opposite), ConfigError);
}

TEST_CASE("gauge transforms") {
    Fixture f;

    SUBCASE("physical states are invariant at every site and angle") {
        StateVector loop = flux_loop_state(f.basis, rectangular_loop(f.lat, 0, 1, 1), 1);
        StateVector full = embed_full(f.basis, loop);
        for (SiteId s = 0; s < f.lat.n_sites(); ++s) {
            for (int k = 1; k <= 8; ++k) {
                StateVector rot = apply_gauge_transform_u1(f.basis, full, s, 2 * M_PI * k / 8);
                CHECK((rot.amps - full.amps).norm() < 1e-14);
            }
        }
    }

    SUBCASE("open string endpoint picks up the phase") {
        FluxConfig open(8, 0);
        LinkId l = f.lat.link(0, Dir::X);
        open[l] = 1;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(f.basis.full_dim());
        v[flux_index(f.model, open)] = 1.0;
        StateVector psi{f.basis.full_tag(), v};
        StateVector rot = apply_gauge_transform_u1(f.basis, psi, f.lat.link_origin(l), M_PI);
        // residual +1 at the origin: amplitude flips sign
        CHECK(std::abs(rot.amps[flux_index(f.model, open)] - Cx(-1, 0)) < 1e-14);
    }

    SUBCASE("invariance under all transforms iff physical") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 6; ++trial) {
            StateVector psi{f.basis.full_tag(), oracles::random_state(rng, f.basis.full_dim())};
            if (trial % 2 == 0) psi = physical_projector_apply(f.basis, psi).normalized();
            double moved = 0;
            for (SiteId s = 0; s < f.lat.n_sites(); ++s) {
                for (int k = 1; k <= 8; ++k) {
                    StateVector rot =
                        apply_gauge_transform_u1(f.basis, psi, s, 2 * M_PI * k / 8);
                    moved = std::max(moved, (rot.amps - psi.amps).norm());
                }
            }
            CHECK((moved <= 1e-10) == (gauge_violation(f.basis, psi) <= 1e-12));
        }
    }
}

TEST_CASE("physical projector") {
    Fixture f;
    std::mt19937_64 rng(9);

    SUBCASE("leaves physical states alone, kills open strings") {
        StateVector loop = embed_full(
            f.basis, flux_loop_state(f.basis, rectangular_loop(f.lat, 0, 1, 1), 1));
        StateVector p = physical_projector_apply(f.basis, loop);
        CHECK((p.amps - loop.amps).norm() < 1e-14);

        StateVector vac = embed_full(f.basis, vacuum_state(f.basis));
        ErrorApplication err = apply_link_raise_error(f.basis, vac, 0);
        StateVector dead = physical_projector_apply(f.basis, err.state);
        CHECK(dead.norm() == 0.0);

        std::vector<StateVector> halves = {loop, err.state};
        std::vector<Cx> amps = {Cx(M_SQRT1_2, 0), Cx(M_SQRT1_2, 0)};
        StateVector mix = superpose(halves, amps);
        StateVector projected = physical_projector_apply(f.basis, mix);
        CHECK(projected.norm() == doctest::Approx(M_SQRT1_2));
        CHECK(gauge_violation(f.basis, mix) == doctest::Approx(0.5));
    }

    SUBCASE("idempotent on random states") {
        for (int k = 0; k < 10; ++k) {
            StateVector psi{f.basis.full_tag(), oracles::random_state(rng, f.basis.full_dim())};
            StateVector p1 = physical_projector_apply(f.basis, psi);
            StateVector p2 = physical_projector_apply(f.basis, p1);
            CHECK((p2.amps - p1.amps).norm() <= 1e-12);
        }
    }

    SUBCASE("agrees with the discrete group-average oracle") {
        auto rotate = [&](const Eigen::VectorXcd& v, int site, double alpha) {
            StateVector s{f.basis.full_tag(), v};
            return apply_gauge_transform_u1(f.basis, s, site, alpha).amps;
        };
        for (int k = 0; k < 4; ++k) {
            Eigen::VectorXcd v = oracles::random_state(rng, f.basis.full_dim());
            StateVector psi{f.basis.full_tag(), v};
            // residuals at 2x2, S=1 are bounded by 4, so 9 phases suffice
            Eigen::VectorXcd averaged =
                oracles::group_average_project(v, f.lat.n_sites(), 9, rotate);
            StateVector direct = physical_projector_apply(f.basis, psi);
            CHECK((averaged - direct.amps).norm() < 1e-12);
        }
    }
}

TEST_CASE("SU(2) embed/project round trip") {
    LatticeSpec lat = build_lattice(2, 2);
    PhysicalBasisSu2 basis = build_physical_basis_su2(lat, Su2Model{1});
    StateVector vac = vacuum_state(basis);
    CHECK(vac.norm() == doctest::Approx(1.0));
    StateVector full = embed_full(basis, vac);
    CHECK(gauge_violation(basis, full) < 1e-12);
    StateVector back = project_coords(basis, full);
    CHECK((back.amps - vac.amps).norm() < 1e-12);
    StateVector proj = physical_projector_apply(basis, full);
    CHECK((proj.amps - full.amps).norm() < 1e-12);
}
