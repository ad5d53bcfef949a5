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

#include "qlm/lift.hpp"

#include <algorithm>
#include <complex>

namespace qlm {

using Cx = std::complex<double>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SparseOperator lift_link_operator(const LatticeSpec& lat, const GaugeModel& model,
                                  const Eigen::MatrixXcd& local, LinkId link) {
    return lift_links_operator(lat, model, {link}, local);
}

SparseOperator lift_links_operator(const LatticeSpec& lat, const GaugeModel& model,
                                   const std::vector<LinkId>& links,
                                   const Eigen::MatrixXcd& local) {
    const int n_links = lat.n_links();
    const std::uint64_t d = static_cast<std::uint64_t>(link_dimension(model));
    const std::uint64_t dim = full_dimension(lat, model);
    const int k = static_cast<int>(links.size());

    {
        std::vector<LinkId> sorted = links;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ConfigError("joint lift requires distinct links");
        }
    }
    std::uint64_t local_dim = 1;
    for (int i = 0; i < k; ++i) {
        if (!lat.valid_link(links[i])) throw ConfigError("invalid link id in lift");
        local_dim *= d;
    }
    if (static_cast<std::uint64_t>(local.rows()) != local_dim ||
        static_cast<std::uint64_t>(local.cols()) != local_dim) {
        throw ConfigError("local operator dimension does not match link count");
    }

    // Stride of each link position (link 0 most significant).
    std::vector<std::uint64_t> stride(n_links, 1);
    for (int l = n_links - 2; l >= 0; --l) stride[l] = stride[l + 1] * d;

    std::vector<int> rest;  // non-participating links
    {
        std::vector<bool> used(n_links, false);
        for (LinkId l : links) used[l] = true;
        for (int l = 0; l < n_links; ++l)
            if (!used[l]) rest.push_back(l);
    }

    // Collect nonzero local entries decomposed into per-link digit offsets.
    struct LocalEntry {
        std::uint64_t row_off, col_off;
        Cx value;
    };
    std::vector<LocalEntry> locals;
    for (std::uint64_t r = 0; r < local_dim; ++r) {
        for (std::uint64_t c = 0; c < local_dim; ++c) {
            Cx v = local(r, c);
            if (v == Cx(0.0, 0.0)) continue;
            std::uint64_t row_off = 0, col_off = 0;
            std::uint64_t rr = r, cc = c;
            for (int i = k - 1; i >= 0; --i) {
                row_off += (rr % d) * stride[links[i]];
                col_off += (cc % d) * stride[links[i]];
                rr /= d;
                cc /= d;
            }
            locals.push_back({row_off, col_off, v});
        }
    }

    // Odometer over the rest links' digits.
    std::uint64_t n_rest = 1;
    for (std::size_t i = 0; i < rest.size(); ++i) n_rest *= d;

    std::vector<SparseEntry> entries;
    entries.reserve(locals.size() * n_rest);
    std::vector<std::uint64_t> digits(rest.size(), 0);
    std::uint64_t base = 0;
    for (std::uint64_t it = 0;; ++it) {
        for (const auto& le : locals) {
            entries.push_back({base + le.row_off, base + le.col_off, le.value});
        }
        // increment odometer
        int pos = static_cast<int>(rest.size()) - 1;
        while (pos >= 0) {
            base += stride[rest[pos]];
            if (++digits[pos] < d) break;
            base -= d * stride[rest[pos]];
            digits[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    (void)dim;
    return SparseOperator(dim, full_basis_tag(lat, model), std::move(entries));
}

}  // namespace qlm
