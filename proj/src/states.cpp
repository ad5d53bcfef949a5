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

#include "qlm/states.hpp"

#include <cmath>
#include <string>

namespace qlm {

using Cx = std::complex<double>;

StateVector StateVector::normalized() const {
    double n = norm();
    if (n == 0.0) throw Error("cannot normalize the zero vector");
    return StateVector{tag, amps / n};
}

Cx inner(const StateVector& a, const StateVector& b) {
    if (!(a.tag == b.tag)) {
        throw BasisMismatchError("inner product across bases: " + a.tag.str() + " vs " +
                                 b.tag.str());
    }
    return a.amps.dot(b.amps);  // Eigen dot conjugates the left argument
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a.normalized(), b.normalized()));
}

namespace {

StateVector basis_member_state(const PhysicalBasisU1& basis, const FluxConfig& config,
                               const std::string& what) {
    int idx = basis.find(flux_index(basis.model, config));
    if (idx < 0) throw ConfigError(what + " is not a member of the physical basis");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.dim());
    amps[idx] = 1.0;
    return StateVector{basis.tag(), amps};
}

}  // namespace

StateVector vacuum_state(const PhysicalBasisU1& basis) {
    if (!basis.charges.neutral_everywhere()) {
        throw ConfigError("the zero-flux vacuum is unphysical with nonzero static charges");
    }
    return basis_member_state(basis, FluxConfig(basis.lattice.n_links(), 0), "zero-flux config");
}

StateVector vacuum_state(const PhysicalBasisSu2& basis) {
    // The all-trivial config is full-basis index 0; its physical coordinates
    // are the first row of the coefficient table.
    if (basis.support.empty() || basis.support[0] != 0) {
        throw ConfigError("trivial configuration is absent from the physical support");
    }
    Eigen::VectorXcd amps = basis.coeffs.row(0).transpose().cast<Cx>();
    double n = amps.norm();
    if (std::abs(n - 1.0) > 1e-9) {
        throw ConfigError("trivial configuration is not contained in the physical subspace");
    }
    return StateVector{basis.tag(), amps / n};
}

namespace {

FluxConfig path_flux_config(const PhysicalBasisU1& basis, const PathSpec& path, int e) {
    FluxConfig config(basis.lattice.n_links(), 0);
    for (const auto& ol : path) config[ol.link] += e * ol.orientation;
    for (int v : config) {
        if (std::abs(v) > basis.model.spin_cutoff) {
            throw ConfigError("path flux " + std::to_string(v) +
                              " exceeds the truncation S=" +
                              std::to_string(basis.model.spin_cutoff));
        }
    }
    return config;
}

}  // namespace

StateVector flux_loop_state(const PhysicalBasisU1& basis, const PathSpec& path, int e) {
    if (!path_is_closed(basis.lattice, path)) {
        throw ConfigError("flux loop requires a closed path");
    }
    return basis_member_state(basis, path_flux_config(basis, path, e), "flux loop config");
}

StateVector string_state(const PhysicalBasisU1& basis, const PathSpec& path, int e) {
    auto [from, to] = path_endpoints(basis.lattice, path);
    if (from == to) throw ConfigError("string state requires an open path");
    for (SiteId s = 0; s < basis.lattice.n_sites(); ++s) {
        int expected = s == from ? e : (s == to ? -e : 0);
        if (basis.charges.values[s] != expected) {
            throw ConfigError("string endpoints/charges mismatch at site " + std::to_string(s) +
                              ": charge " + std::to_string(basis.charges.values[s]) +
                              ", string requires " + std::to_string(expected));
        }
    }
    return basis_member_state(basis, path_flux_config(basis, path, e), "string config");
}

StateVector superpose(std::span<const StateVector> states, std::span<const Cx> amps) {
    if (states.empty() || states.size() != amps.size()) {
        throw ConfigError("superpose needs matching nonempty state/amplitude lists");
    }
    for (std::size_t i = 1; i < states.size(); ++i) {
        if (!(states[i].tag == states[0].tag)) {
            throw BasisMismatchError("superposing states from different bases");
        }
    }
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(states[0].amps.size());
    for (std::size_t i = 0; i < states.size(); ++i) sum += amps[i] * states[i].amps;
    double n = sum.norm();
    if (n < 1e-14) throw ConfigError("superposition vanishes");
    return StateVector{states[0].tag, sum / n};
}

std::set<WindingSector> winding_support(const PhysicalBasisU1& basis, const StateVector& state,
                                        double tol) {
    if (!(state.tag == basis.tag())) {
        throw BasisMismatchError("winding support requires a state in this physical basis");
    }
    std::set<WindingSector> sectors;
    for (int i = 0; i < basis.dim(); ++i) {
        if (std::norm(state.amps[i]) > tol) sectors.insert(basis.sectors[i]);
    }
    return sectors;
}

StateVector apply_gauge_transform_u1(const PhysicalBasisU1& basis, const StateVector& full_state,
                                     SiteId site, double alpha) {
    if (!(full_state.tag == basis.full_tag())) {
        throw BasisMismatchError("gauge transform acts on full-basis states");
    }
    const LatticeSpec& lat = basis.lattice;
    Eigen::VectorXcd amps = full_state.amps;
    for (Eigen::Index idx = 0; idx < amps.size(); ++idx) {
        if (amps[idx] == Cx(0.0, 0.0)) continue;
        FluxConfig cfg = flux_from_index(lat, basis.model, static_cast<std::uint64_t>(idx));
        int r = gauss_residual_u1(lat, cfg, site, basis.charges);
        if (r != 0) amps[idx] *= std::exp(Cx(0.0, alpha * r));
    }
    return StateVector{full_state.tag, amps};
}

StateVector embed_full(const PhysicalBasisU1& basis, const StateVector& phys) {
    if (!(phys.tag == basis.tag())) {
        throw BasisMismatchError("embed_full requires a state in this physical basis");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.full_dim());
    for (int i = 0; i < basis.dim(); ++i) {
        amps[flux_index(basis.model, basis.members[i])] = phys.amps[i];
    }
    return StateVector{basis.full_tag(), amps};
}

StateVector embed_full(const PhysicalBasisSu2& basis, const StateVector& phys) {
    if (!(phys.tag == basis.tag())) {
        throw BasisMismatchError("embed_full requires a state in this physical basis");
    }
    Eigen::VectorXcd sector = basis.coeffs.cast<Cx>() * phys.amps;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.full_dim());
    for (std::size_t i = 0; i < basis.support.size(); ++i) amps[basis.support[i]] = sector[i];
    return StateVector{basis.full_tag(), amps};
}

StateVector project_coords(const PhysicalBasisU1& basis, const StateVector& full) {
    if (!(full.tag == basis.full_tag())) {
        throw BasisMismatchError("projection acts on full-basis states");
    }
    Eigen::VectorXcd coords(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) {
        coords[i] = full.amps[flux_index(basis.model, basis.members[i])];
    }
    return StateVector{basis.tag(), coords};
}

StateVector project_coords(const PhysicalBasisSu2& basis, const StateVector& full) {
    if (!(full.tag == basis.full_tag())) {
        throw BasisMismatchError("projection acts on full-basis states");
    }
    Eigen::VectorXcd sector(basis.support.size());
    for (std::size_t i = 0; i < basis.support.size(); ++i) sector[i] = full.amps[basis.support[i]];
    return StateVector{basis.tag(), basis.coeffs.transpose().cast<Cx>() * sector};
}

StateVector physical_projector_apply(const PhysicalBasisU1& basis, const StateVector& full) {
    StateVector coords = project_coords(basis, full);
    StateVector out = embed_full(basis, coords);
    return out;
}

StateVector physical_projector_apply(const PhysicalBasisSu2& basis, const StateVector& full) {
    StateVector coords = project_coords(basis, full);
    return embed_full(basis, coords);
}

}  // namespace qlm
