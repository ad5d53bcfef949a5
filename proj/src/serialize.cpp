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

#include "qlm/serialize.hpp"

#include <fstream>

namespace qlm {

using nlohmann::json;

json basis_to_json(const PhysicalBasisU1& basis) {
    json j;
    j["kind"] = "u1";
    j["tag"] = basis.tag().str();
    j["lattice"] = {{"lx", basis.lattice.lx}, {"ly", basis.lattice.ly}};
    j["S"] = basis.model.spin_cutoff;
    j["charges"] = basis.charges.values;
    j["members"] = basis.members;
    json sectors = json::array();
    for (const auto& w : basis.sectors) sectors.push_back({w.wx, w.wy});
    j["sectors"] = sectors;
    return j;
}

PhysicalBasisU1 basis_u1_from_json(const json& j) {
    if (j.at("kind").get<std::string>() != "u1") throw ConfigError("not a U(1) basis document");
    LatticeSpec lat = build_lattice(j.at("lattice").at("lx").get<int>(),
                                    j.at("lattice").at("ly").get<int>());
    U1Model model{j.at("S").get<int>()};
    ChargeConfig charges{j.at("charges").get<std::vector<int>>()};
    PhysicalBasisU1 basis;
    basis.lattice = lat;
    basis.model = model;
    basis.charges = charges;
    basis.members = j.at("members").get<std::vector<FluxConfig>>();
    for (std::size_t i = 0; i < basis.members.size(); ++i) {
        basis.index_of.emplace(flux_index(model, basis.members[i]), static_cast<int>(i));
        basis.sectors.push_back(winding_numbers(lat, basis.members[i]));
    }
    // Validate against the stored sector tags; a mismatch means corruption.
    const json& sectors = j.at("sectors");
    if (sectors.size() != basis.members.size()) throw ConfigError("basis document corrupted");
    for (std::size_t i = 0; i < basis.members.size(); ++i) {
        if (sectors[i][0].get<int>() != basis.sectors[i].wx ||
            sectors[i][1].get<int>() != basis.sectors[i].wy) {
            throw ConfigError("basis document sector tags do not match members");
        }
    }
    return basis;
}

json basis_to_json(const PhysicalBasisSu2& basis) {
    json j;
    j["kind"] = "su2";
    j["tag"] = basis.tag().str();
    j["lattice"] = {{"lx", basis.lattice.lx}, {"ly", basis.lattice.ly}};
    j["two_j_max"] = basis.model.two_j_max;
    j["support"] = basis.support;
    j["kernel_gap"] = basis.kernel_gap;
    json cols = json::array();
    for (int c = 0; c < basis.coeffs.cols(); ++c) {
        std::vector<double> col(basis.coeffs.rows());
        for (int r = 0; r < basis.coeffs.rows(); ++r) col[r] = basis.coeffs(r, c);
        cols.push_back(col);
    }
    j["columns"] = cols;
    return j;
}

PhysicalBasisSu2 basis_su2_from_json(const json& j) {
    if (j.at("kind").get<std::string>() != "su2") throw ConfigError("not an SU(2) basis document");
    PhysicalBasisSu2 basis;
    basis.lattice = build_lattice(j.at("lattice").at("lx").get<int>(),
                                  j.at("lattice").at("ly").get<int>());
    basis.model = Su2Model{j.at("two_j_max").get<int>()};
    basis.support = j.at("support").get<std::vector<std::uint64_t>>();
    basis.kernel_gap = j.at("kernel_gap").get<double>();
    const json& cols = j.at("columns");
    if (cols.empty()) throw ConfigError("basis document has no columns");
    basis.coeffs.resize(basis.support.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto col = cols[c].get<std::vector<double>>();
        if (col.size() != basis.support.size()) throw ConfigError("basis document corrupted");
        for (std::size_t r = 0; r < col.size(); ++r) basis.coeffs(r, c) = col[r];
    }
    return basis;
}

json state_to_json(const StateVector& state) {
    json j;
    j["basis"] = state.tag.str();
    std::vector<double> re(state.amps.size()), im(state.amps.size());
    for (Eigen::Index i = 0; i < state.amps.size(); ++i) {
        re[i] = state.amps[i].real();
        im[i] = state.amps[i].imag();
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

StateVector state_from_json(const json& j) {
    auto re = j.at("re").get<std::vector<double>>();
    auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw ConfigError("state document corrupted");
    StateVector s;
    s.amps.resize(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) s.amps[i] = std::complex<double>(re[i], im[i]);
    std::string tag = j.at("basis").get<std::string>();
    s.tag.space = tag.rfind("full:", 0) == 0 ? BasisTag::Space::Full : BasisTag::Space::Physical;
    s.tag.id = tag.substr(tag.find(':') + 1);
    return s;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("JSON parse failure in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace qlm
