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

#include "qlm/basis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "qlm/su2.hpp"

namespace qlm {

using Cx = std::complex<double>;

std::uint64_t full_dimension(const LatticeSpec& lat, const GaugeModel& model) {
    const std::uint64_t d = static_cast<std::uint64_t>(link_dimension(model));
    std::uint64_t dim = 1;
    for (int l = 0; l < lat.n_links(); ++l) {
        if (dim > (std::uint64_t(1) << 62) / d) {
            throw BudgetError("full tensor dimension overflows the supported range");
        }
        dim *= d;
    }
    return dim;
}

BasisTag full_basis_tag(const LatticeSpec& lat, const GaugeModel& model) {
    return BasisTag{BasisTag::Space::Full,
                    model_id(model) + ":lx=" + std::to_string(lat.lx) +
                        ":ly=" + std::to_string(lat.ly)};
}

std::uint64_t flux_index(const U1Model& model, const FluxConfig& config) {
    const int s = model.spin_cutoff;
    const std::uint64_t d = 2 * s + 1;
    std::uint64_t idx = 0;
    for (int e : config) {
        if (e < -s || e > s) throw ConfigError("flux label out of truncation range");
        idx = idx * d + static_cast<std::uint64_t>(e + s);
    }
    return idx;
}

FluxConfig flux_from_index(const LatticeSpec& lat, const U1Model& model, std::uint64_t index) {
    const int s = model.spin_cutoff;
    const std::uint64_t d = 2 * s + 1;
    FluxConfig config(lat.n_links(), 0);
    for (int l = lat.n_links() - 1; l >= 0; --l) {
        config[l] = static_cast<int>(index % d) - s;
        index /= d;
    }
    return config;
}

int gauss_residual_u1(const LatticeSpec& lat, const FluxConfig& config, SiteId site,
                      const ChargeConfig& charges) {
    SiteLinks sl = links_at_site(lat, site);
    int div = 0;
    for (LinkId l : sl.outgoing) div += config[l];
    for (LinkId l : sl.incoming) div -= config[l];
    return div - charges.values[site];
}

WindingSector winding_numbers(const LatticeSpec& lat, const FluxConfig& config) {
    WindingSector w;
    for (LinkId l : winding_cut(lat, Dir::X)) w.wx += config[l];
    for (LinkId l : winding_cut(lat, Dir::Y)) w.wy += config[l];
    return w;
}

std::uint64_t PhysicalBasisU1::full_dim() const {
    return full_dimension(lattice, GaugeModel{model});
}

BasisTag PhysicalBasisU1::tag() const {
    return BasisTag{BasisTag::Space::Physical,
                    model_id(GaugeModel{model}) + ":lx=" + std::to_string(lattice.lx) +
                        ":ly=" + std::to_string(lattice.ly) + ":q=" + charges_id(charges)};
}

BasisTag PhysicalBasisU1::full_tag() const { return full_basis_tag(lattice, GaugeModel{model}); }

int PhysicalBasisU1::find(std::uint64_t full_index) const {
    auto it = index_of.find(full_index);
    return it == index_of.end() ? -1 : it->second;
}

namespace {

// Depth-first enumeration in link order with early Gauss pruning: a site's
// residual is checked as soon as its last incident link is assigned.
// Ascending flux values give lexicographic output for free.
struct U1Enumerator {
    const LatticeSpec& lat;
    const U1Model& model;
    const ChargeConfig& charges;
    std::vector<std::vector<SiteId>> complete_after;  // link -> sites now checkable
    FluxConfig config;
    std::vector<FluxConfig> out;

    U1Enumerator(const LatticeSpec& l, const U1Model& m, const ChargeConfig& q)
        : lat(l), model(m), charges(q), complete_after(l.n_links()), config(l.n_links(), 0) {
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            SiteLinks sl = links_at_site(lat, s);
            LinkId last = 0;
            for (LinkId x : sl.outgoing) last = std::max(last, x);
            for (LinkId x : sl.incoming) last = std::max(last, x);
            complete_after[last].push_back(s);
        }
    }

    void run(int link) {
        if (link == lat.n_links()) {
            out.push_back(config);
            return;
        }
        for (int e = -model.spin_cutoff; e <= model.spin_cutoff; ++e) {
            config[link] = e;
            bool ok = true;
            for (SiteId s : complete_after[link]) {
                if (gauss_residual_u1(lat, config, s, charges) != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) run(link + 1);
        }
        config[link] = 0;
    }
};

}  // namespace

PhysicalBasisU1 build_physical_basis_u1(const LatticeSpec& lat, const U1Model& model,
                                        const ChargeConfig& charges) {
    validate_charges_u1(lat, charges);
    link_dimension(GaugeModel{model});
    U1Enumerator en(lat, model, charges);
    en.run(0);

    PhysicalBasisU1 basis;
    basis.lattice = lat;
    basis.model = model;
    basis.charges = charges;
    basis.members = std::move(en.out);
    basis.sectors.reserve(basis.members.size());
    basis.index_of.reserve(basis.members.size());
    for (std::size_t i = 0; i < basis.members.size(); ++i) {
        basis.sectors.push_back(winding_numbers(lat, basis.members[i]));
        basis.index_of.emplace(flux_index(model, basis.members[i]), static_cast<int>(i));
    }
    return basis;
}

std::map<WindingSector, PhysicalBasisU1> split_by_winding(const PhysicalBasisU1& basis) {
    std::map<WindingSector, PhysicalBasisU1> parts;
    for (int i = 0; i < basis.dim(); ++i) {
        PhysicalBasisU1& part = parts[basis.sectors[i]];
        if (part.members.empty()) {
            part.lattice = basis.lattice;
            part.model = basis.model;
            part.charges = basis.charges;
        }
        part.index_of.emplace(flux_index(basis.model, basis.members[i]),
                              static_cast<int>(part.members.size()));
        part.members.push_back(basis.members[i]);
        part.sectors.push_back(basis.sectors[i]);
    }
    return parts;
}

// ---------------------------------------------------------------------------
// SU(2)

namespace {

// Apply a dense single-link operator to the full-basis unit vector `index`,
// accumulating (target index, amplitude) pairs.
void apply_local(const Eigen::MatrixXcd& local, int link, std::uint64_t index, std::uint64_t d,
                 const std::vector<std::uint64_t>& stride, Cx weight,
                 std::vector<std::pair<std::uint64_t, Cx>>& out) {
    const std::uint64_t digit = (index / stride[link]) % d;
    const std::uint64_t base = index - digit * stride[link];
    for (std::uint64_t r = 0; r < d; ++r) {
        Cx v = local(r, digit);
        if (v == Cx(0.0, 0.0)) continue;
        out.emplace_back(base + r * stride[link], weight * v);
    }
}

std::vector<std::uint64_t> link_strides(const LatticeSpec& lat, std::uint64_t d) {
    std::vector<std::uint64_t> stride(lat.n_links(), 1);
    for (int l = lat.n_links() - 2; l >= 0; --l) stride[l] = stride[l + 1] * d;
    return stride;
}

}  // namespace

SparseOperator gauss_generator_matrix_su2(const LatticeSpec& lat, const Su2Model& model,
                                          SiteId site, int a) {
    if (!lat.valid_site(site)) throw ConfigError("invalid site id");
    const Su2LinkSpace space = Su2LinkSpace::make(model.two_j_max);
    const std::uint64_t d = space.dim();
    const std::uint64_t dim = full_dimension(lat, GaugeModel{model});
    const auto stride = link_strides(lat, d);
    const Eigen::MatrixXcd org = link_gen_origin(space, a);
    const Eigen::MatrixXcd end = link_gen_end(space, a);
    SiteLinks sl = links_at_site(lat, site);

    std::vector<SparseEntry> entries;
    std::vector<std::pair<std::uint64_t, Cx>> acc;
    for (std::uint64_t col = 0; col < dim; ++col) {
        acc.clear();
        for (LinkId l : sl.outgoing) apply_local(org, l, col, d, stride, 1.0, acc);
        for (LinkId l : sl.incoming) apply_local(end, l, col, d, stride, 1.0, acc);
        for (const auto& [row, v] : acc) entries.push_back({row, col, v});
    }
    return SparseOperator(dim, full_basis_tag(lat, GaugeModel{model}), std::move(entries));
}

std::uint64_t PhysicalBasisSu2::full_dim() const {
    return full_dimension(lattice, GaugeModel{model});
}

BasisTag PhysicalBasisSu2::tag() const {
    return BasisTag{BasisTag::Space::Physical,
                    model_id(GaugeModel{model}) + ":lx=" + std::to_string(lattice.lx) +
                        ":ly=" + std::to_string(lattice.ly) + ":q=0"};
}

BasisTag PhysicalBasisSu2::full_tag() const { return full_basis_tag(lattice, GaugeModel{model}); }

PhysicalBasisSu2 build_physical_basis_su2(const LatticeSpec& lat, const Su2Model& model,
                                          int dense_budget) {
    const Su2LinkSpace space = Su2LinkSpace::make(model.two_j_max);
    const std::uint64_t d = space.dim();
    const std::uint64_t dim = full_dimension(lat, GaugeModel{model});
    const auto stride = link_strides(lat, d);

    // Diagonal charge (doubled) carried by each link state at its two ends.
    std::vector<int> two_ml(d), two_mr(d);
    for (std::uint64_t i = 0; i < d; ++i) {
        two_ml[i] = space.states[i].two_ml;
        two_mr[i] = space.states[i].two_mr;
    }

    // Neutral sector of the diagonal Gauss components: physical vectors can
    // only be supported here, and the quadratic form preserves it.
    std::vector<std::uint64_t> support;
    {
        std::vector<std::array<LinkId, 2>> outs(lat.n_sites()), ins(lat.n_sites());
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            SiteLinks sl = links_at_site(lat, s);
            outs[s] = sl.outgoing;
            ins[s] = sl.incoming;
        }
        std::vector<std::uint64_t> digits(lat.n_links());
        for (std::uint64_t idx = 0; idx < dim; ++idx) {
            std::uint64_t rem = idx;
            for (int l = lat.n_links() - 1; l >= 0; --l) {
                digits[l] = rem % d;
                rem /= d;
            }
            bool ok = true;
            for (SiteId s = 0; s < lat.n_sites() && ok; ++s) {
                int q = 0;
                for (LinkId l : ins[s]) q += two_mr[digits[l]];
                for (LinkId l : outs[s]) q -= two_ml[digits[l]];
                ok = q == 0;
            }
            if (ok) support.push_back(idx);
        }
    }

    const std::size_t n = support.size();
    if (n == 0) throw Error("empty diagonal-neutral sector");
    if (n > static_cast<std::size_t>(dense_budget)) {
        throw BudgetError("SU(2) kernel working set " + std::to_string(n) +
                          " exceeds the dense budget " + std::to_string(dense_budget));
    }
    std::unordered_map<std::uint64_t, int> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pos.emplace(support[i], static_cast<int>(i));

    // Quadratic form sum_{x,a} (G_x^a)^2 restricted to the sector, built
    // column by column. Real symmetric in this basis.
    std::vector<Eigen::MatrixXcd> org(3), end(3);
    for (int a = 0; a < 3; ++a) {
        org[a] = link_gen_origin(space, a);
        end[a] = link_gen_end(space, a);
    }
    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(n, n);
    std::vector<std::pair<std::uint64_t, Cx>> first, second;
    std::unordered_map<std::uint64_t, Cx> acc;
    for (std::size_t i = 0; i < n; ++i) {
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            SiteLinks sl = links_at_site(lat, s);
            // Only the per-site sum over a (the Casimir) preserves the
            // neutral sector; accumulate all three components first.
            acc.clear();
            for (int a = 0; a < 3; ++a) {
                first.clear();
                for (LinkId l : sl.outgoing) apply_local(org[a], l, support[i], d, stride, 1.0, first);
                for (LinkId l : sl.incoming) apply_local(end[a], l, support[i], d, stride, 1.0, first);
                second.clear();
                for (const auto& [mid, w] : first) {
                    for (LinkId l : sl.outgoing) apply_local(org[a], l, mid, d, stride, w, second);
                    for (LinkId l : sl.incoming) apply_local(end[a], l, mid, d, stride, w, second);
                }
                for (const auto& [row, v] : second) acc[row] += v;
            }
            for (const auto& [row, v] : acc) {
                auto it = pos.find(row);
                if (it == pos.end()) {
                    if (std::abs(v) > 1e-12) {
                        throw Error("Gauss quadratic form leaks from the neutral sector");
                    }
                    continue;
                }
                if (std::abs(v.imag()) > 1e-12) {
                    throw Error("Gauss quadratic form is unexpectedly complex");
                }
                form(it->second, i) += v.real();
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form);
    if (solver.info() != Eigen::Success) throw Error("SU(2) kernel eigensolve failed");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    int kernel = 0;
    while (kernel < ev.size() && ev[kernel] < kKernelEigenvalueThreshold) ++kernel;
    if (kernel == 0) throw Error("SU(2) Gauss kernel is empty");
    if (kernel < ev.size() && ev[kernel] < kKernelGapThreshold) {
        throw Error("ambiguous SU(2) kernel: spectral gap " + std::to_string(ev[kernel]) +
                    " below threshold");
    }

    PhysicalBasisSu2 basis;
    basis.lattice = lat;
    basis.model = model;
    basis.support = std::move(support);
    basis.coeffs = solver.eigenvectors().leftCols(kernel);
    basis.kernel_gap = kernel < ev.size() ? ev[kernel] : std::numeric_limits<double>::infinity();
    // Deterministic sign: largest-magnitude coefficient positive.
    for (int c = 0; c < basis.coeffs.cols(); ++c) {
        Eigen::Index imax;
        basis.coeffs.col(c).cwiseAbs().maxCoeff(&imax);
        if (basis.coeffs(imax, c) < 0) basis.coeffs.col(c) = -basis.coeffs.col(c);
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Gauss sectors (U(1))

std::size_t GaussSectors::max_group() const {
    std::size_t m = 0;
    for (const auto& g : groups) m = std::max(m, g.size());
    return m;
}

GaussSectors build_gauss_sectors(const LatticeSpec& lat, const U1Model& model,
                                 const ChargeConfig& charges) {
    const std::uint64_t dim = full_dimension(lat, GaugeModel{model});
    if (dim > (std::uint64_t(1) << 24)) {
        throw BudgetError("Gauss sector decomposition limited to 2^24 full dimensions");
    }
    GaussSectors sec;
    sec.lattice = lat;
    sec.model = model;
    sec.charges = charges;
    sec.group_of.assign(dim, -1);
    std::map<std::vector<int>, int> ids;
    FluxConfig config;
    std::vector<int> res(lat.n_sites());
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        config = flux_from_index(lat, model, idx);
        for (SiteId s = 0; s < lat.n_sites(); ++s) {
            res[s] = gauss_residual_u1(lat, config, s, charges);
        }
        auto [it, inserted] = ids.emplace(res, static_cast<int>(sec.groups.size()));
        if (inserted) {
            sec.groups.emplace_back();
            sec.residuals.push_back(res);
        }
        sec.groups[it->second].push_back(idx);
        sec.group_of[idx] = it->second;
    }
    return sec;
}

}  // namespace qlm
