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

#include "qlm/operators.hpp"

#include <cmath>
#include <complex>

#include "qlm/lift.hpp"
#include "qlm/su2.hpp"

namespace qlm {

using Cx = std::complex<double>;

namespace {

Eigen::MatrixXcd local_electric(const U1Model& model) {
    const int d = 2 * model.spin_cutoff + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) m(k, k) = k - model.spin_cutoff;
    return m;
}

Eigen::MatrixXcd local_raise(const U1Model& model) {
    const int d = 2 * model.spin_cutoff + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k + 1 < d; ++k) m(k + 1, k) = 1.0;
    return m;
}

SparseOperator plaquette_op_u1(const LatticeSpec& lat, const U1Model& model, PlaqId p) {
    const GaugeModel gm{model};
    const Eigen::MatrixXcd up = local_raise(model);
    const Eigen::MatrixXcd down = up.adjoint();
    auto quad = plaquette_links(lat, p);

    // Repeated links on degenerate lattices: compose the local factors per
    // link, then lift the distinct set jointly.
    std::vector<LinkId> links;
    std::vector<Eigen::MatrixXcd> locals;
    for (const auto& ol : quad) {
        const Eigen::MatrixXcd& f = ol.orientation > 0 ? up : down;
        auto it = std::find(links.begin(), links.end(), ol.link);
        if (it == links.end()) {
            links.push_back(ol.link);
            locals.push_back(f);
        } else {
            std::size_t i = it - links.begin();
            locals[i] = f * locals[i];
        }
    }
    Eigen::MatrixXcd joint = locals[0];
    for (std::size_t i = 1; i < locals.size(); ++i) joint = kron(joint, locals[i]);
    return lift_links_operator(lat, gm, links, joint);
}

SparseOperator plaquette_op_su2(const LatticeSpec& lat, const Su2Model& model, PlaqId p) {
    if (lat.degenerate()) {
        throw ConfigError("SU(2) plaquette operators require Lx, Ly >= 2");
    }
    const GaugeModel gm{model};
    const Su2LinkSpace space = Su2LinkSpace::make(model.two_j_max);
    auto quad = plaquette_links(lat, p);
    std::vector<LinkId> links = {quad[0].link, quad[1].link, quad[2].link, quad[3].link};

    // Tr U_p = sum_{abcd} U1^{ab} U2^{bc} (U3^{dc})^dag (U4^{ad})^dag with
    // fundamental indices a,b,c,d; the dagger components implement the
    // classical conjugated matrix elements.
    const int d = space.dim();
    const std::uint64_t jd = std::uint64_t(d) * d * d * d;
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(jd, jd);
    for (int a = -1; a <= 1; a += 2) {
        for (int b = -1; b <= 1; b += 2) {
            for (int c = -1; c <= 1; c += 2) {
                for (int e = -1; e <= 1; e += 2) {
                    Eigen::MatrixXcd u1 = link_fundamental(space, a, b);
                    Eigen::MatrixXcd u2 = link_fundamental(space, b, c);
                    Eigen::MatrixXcd u3 = link_fundamental(space, e, c).adjoint();
                    Eigen::MatrixXcd u4 = link_fundamental(space, a, e).adjoint();
                    joint += kron(kron(u1, u2), kron(u3, u4));
                }
            }
        }
    }
    return lift_links_operator(lat, gm, links, joint);
}

}  // namespace

SparseOperator electric_op_u1(const LatticeSpec& lat, const U1Model& model, LinkId link) {
    if (!lat.valid_link(link)) throw ConfigError("invalid link id");
    return lift_link_operator(lat, GaugeModel{model}, local_electric(model), link);
}

SparseOperator link_raise_u1(const LatticeSpec& lat, const U1Model& model, LinkId link) {
    if (!lat.valid_link(link)) throw ConfigError("invalid link id");
    return lift_link_operator(lat, GaugeModel{model}, local_raise(model), link);
}

SparseOperator plaquette_op(const LatticeSpec& lat, const GaugeModel& model, PlaqId p) {
    if (!lat.valid_plaquette(p)) throw ConfigError("invalid plaquette id");
    if (is_u1(model)) return plaquette_op_u1(lat, as_u1(model), p);
    return plaquette_op_su2(lat, as_su2(model), p);
}

SparseOperator gauss_generator_u1(const LatticeSpec& lat, const U1Model& model, SiteId site,
                                  const ChargeConfig& charges) {
    if (!lat.valid_site(site)) throw ConfigError("invalid site id");
    const std::uint64_t dim = full_dimension(lat, GaugeModel{model});
    std::vector<SparseEntry> entries;
    entries.reserve(dim);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        FluxConfig cfg = flux_from_index(lat, model, idx);
        int r = gauss_residual_u1(lat, cfg, site, charges);
        if (r != 0) entries.push_back({idx, idx, static_cast<double>(r)});
    }
    return SparseOperator(dim, full_basis_tag(lat, GaugeModel{model}), std::move(entries));
}

SparseOperator winding_operator(const LatticeSpec& lat, const U1Model& model, Dir d) {
    const GaugeModel gm{model};
    SparseOperator w = SparseOperator::zero(full_dimension(lat, gm), full_basis_tag(lat, gm));
    for (LinkId l : winding_cut(lat, d)) w = w + electric_op_u1(lat, model, l);
    return w;
}

HamiltonianParts hamiltonian_u1(const LatticeSpec& lat, const U1Model& model, double g2,
                                int magnetic_sign) {
    if (g2 <= 0) throw ConfigError("coupling g^2 must be positive");
    if (magnetic_sign != 1 && magnetic_sign != -1) {
        throw ConfigError("magnetic_sign must be +1 or -1");
    }
    const GaugeModel gm{model};
    const std::uint64_t dim = full_dimension(lat, gm);
    const BasisTag tag = full_basis_tag(lat, gm);

    // Electric part assembled directly: diagonal sum of e^2 over links.
    std::vector<SparseEntry> diag;
    diag.reserve(dim);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        FluxConfig cfg = flux_from_index(lat, model, idx);
        double e2 = 0;
        for (int e : cfg) e2 += double(e) * e;
        if (e2 != 0) diag.push_back({idx, idx, 0.5 * g2 * e2});
    }
    HamiltonianParts parts;
    parts.g2 = g2;
    parts.magnetic_sign = magnetic_sign;
    parts.h_electric = SparseOperator(dim, tag, std::move(diag));

    SparseOperator hb = SparseOperator::zero(dim, tag);
    for (PlaqId p = 0; p < lat.n_plaquettes(); ++p) {
        SparseOperator u = plaquette_op(lat, gm, p);
        hb = hb + u + u.adjoint();
    }
    parts.h_magnetic = hb.scaled(magnetic_sign / (2.0 * g2));
    return parts;
}

HamiltonianParts hamiltonian_su2(const LatticeSpec& lat, const Su2Model& model, double g2,
                                 int magnetic_sign, std::uint64_t full_dim_budget) {
    if (g2 <= 0) throw ConfigError("coupling g^2 must be positive");
    if (magnetic_sign != 1 && magnetic_sign != -1) {
        throw ConfigError("magnetic_sign must be +1 or -1");
    }
    const GaugeModel gm{model};
    const std::uint64_t dim = full_dimension(lat, gm);
    if (dim > full_dim_budget) {
        throw BudgetError("SU(2) Hamiltonian dimension " + std::to_string(dim) +
                          " exceeds budget " + std::to_string(full_dim_budget));
    }
    const BasisTag tag = full_basis_tag(lat, gm);
    const Su2LinkSpace space = Su2LinkSpace::make(model.two_j_max);

    HamiltonianParts parts;
    parts.g2 = g2;
    parts.magnetic_sign = magnetic_sign;

    SparseOperator he = SparseOperator::zero(dim, tag);
    const Eigen::MatrixXcd cas = link_casimir(space);
    for (LinkId l = 0; l < lat.n_links(); ++l) {
        he = he + lift_link_operator(lat, gm, cas, l);
    }
    parts.h_electric = he.scaled(0.5 * g2);

    SparseOperator hb = SparseOperator::zero(dim, tag);
    for (PlaqId p = 0; p < lat.n_plaquettes(); ++p) {
        SparseOperator u = plaquette_op(lat, gm, p);
        hb = hb + u + u.adjoint();
    }
    parts.h_magnetic = hb.scaled(magnetic_sign / (2.0 * g2));
    return parts;
}

SparseOperator penalty_term(const LatticeSpec& lat, const GaugeModel& model, double lambda,
                            const ChargeConfig& charges) {
    if (lambda < 0) throw ConfigError("penalty strength lambda must be >= 0");
    const std::uint64_t dim = full_dimension(lat, model);
    const BasisTag tag = full_basis_tag(lat, model);
    if (is_u1(model)) {
        const U1Model& m = as_u1(model);
        validate_charges_u1(lat, charges);
        std::vector<SparseEntry> diag;
        for (std::uint64_t idx = 0; idx < dim; ++idx) {
            FluxConfig cfg = flux_from_index(lat, m, idx);
            double v = 0;
            for (SiteId s = 0; s < lat.n_sites(); ++s) {
                int r = gauss_residual_u1(lat, cfg, s, charges);
                v += double(r) * r;
            }
            if (v != 0) diag.push_back({idx, idx, lambda * v});
        }
        return SparseOperator(dim, tag, std::move(diag));
    }
    const Su2Model& m = as_su2(model);
    validate_charges_su2(lat, charges);
    if (!charges.neutral_everywhere()) {
        throw ConfigError("SU(2) static charges are kinematic labels only; "
                          "the penalty term supports the uncharged Gauss law");
    }
    SparseOperator pen = SparseOperator::zero(dim, tag);
    for (SiteId s = 0; s < lat.n_sites(); ++s) {
        for (int a = 0; a < 3; ++a) {
            SparseOperator g = gauss_generator_matrix_su2(lat, m, s, a);
            pen = pen + g.matmul(g);
        }
    }
    return pen.scaled(lambda);
}

namespace {

void check_u1_gauge_commutes(const SparseOperator& op, const PhysicalBasisU1& basis) {
    // All U(1) Gauss generators are diagonal with the per-site residuals, so
    // [G, A]_rc = (g_r - g_c) A_rc; block diagonality is an entry scan.
    const LatticeSpec& lat = basis.lattice;
    for (const auto& e : op.entries()) {
        if (e.row == e.col) continue;
        FluxConfig r = flux_from_index(lat, basis.model, e.row);
        FluxConfig c = flux_from_index(lat, basis.model, e.col);
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            int gr = gauss_residual_u1(lat, r, s, basis.charges);
            int gc = gauss_residual_u1(lat, c, s, basis.charges);
            if (gr != gc && std::abs(e.value) * std::abs(gr - gc) > kGaugeCommuteTol) {
                throw Error("operator does not commute with the Gauss generator at site " +
                            std::to_string(s) + "; restriction to the physical basis waived "
                            "only for deliberate error operators");
            }
        }
    }
}

}  // namespace

SparseOperator restrict_to_physical(const SparseOperator& op, const PhysicalBasisU1& basis,
                                    bool check_gauge) {
    if (!(op.tag() == basis.full_tag())) {
        throw BasisMismatchError("operator is not in the full basis of this physical basis");
    }
    if (check_gauge) check_u1_gauge_commutes(op, basis);
    std::vector<SparseEntry> entries;
    for (const auto& e : op.entries()) {
        int r = basis.find(e.row);
        if (r < 0) continue;
        int c = basis.find(e.col);
        if (c < 0) continue;
        entries.push_back({static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c), e.value});
    }
    return SparseOperator(basis.dim(), basis.tag(), std::move(entries));
}

SparseOperator restrict_to_physical(const SparseOperator& op, const PhysicalBasisSu2& basis,
                                    bool check_gauge) {
    if (!(op.tag() == basis.full_tag())) {
        throw BasisMismatchError("operator is not in the full basis of this physical basis");
    }
    if (check_gauge) {
        for (SiteId s = 0; s < basis.lattice.n_sites(); ++s) {
            for (int a = 0; a < 3; ++a) {
                SparseOperator g = gauss_generator_matrix_su2(basis.lattice, basis.model, s, a);
                if (commutator_norm(op, g) > kGaugeCommuteTol) {
                    throw Error("operator does not commute with the SU(2) Gauss generator at "
                                "site " + std::to_string(s));
                }
            }
        }
    }
    // P is supported on the stored sector, so gathering those rows/columns
    // is exact.
    const std::size_t n = basis.support.size();
    std::unordered_map<std::uint64_t, int> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pos.emplace(basis.support[i], static_cast<int>(i));
    Eigen::MatrixXcd sector = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& e : op.entries()) {
        auto ir = pos.find(e.row);
        if (ir == pos.end()) continue;
        auto ic = pos.find(e.col);
        if (ic == pos.end()) continue;
        sector(ir->second, ic->second) += e.value;
    }
    Eigen::MatrixXcd restricted =
        basis.coeffs.transpose().cast<Cx>() * sector * basis.coeffs.cast<Cx>();
    std::vector<SparseEntry> entries;
    for (int r = 0; r < restricted.rows(); ++r) {
        for (int c = 0; c < restricted.cols(); ++c) {
            Cx v = restricted(r, c);
            if (std::abs(v) > 1e-15) {
                entries.push_back({static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c), v});
            }
        }
    }
    return SparseOperator(basis.dim(), basis.tag(), std::move(entries));
}

}  // namespace qlm
