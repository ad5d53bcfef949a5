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

#include "qlm/config.hpp"

#include <fstream>
#include <set>

namespace qlm {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) {
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for \"" + key + "\": " + e.what());
    }
}

GaugeModel parse_model(const json& j) {
    reject_unknown_keys(j, {"group", "S", "two_j_max"}, "model");
    std::string group = get_or<std::string>(j, "group", "u1");
    if (group == "u1") {
        if (j.contains("two_j_max")) throw ConfigError("two_j_max is an SU(2) key");
        int s = get_or<int>(j, "S", 1);
        if (s < 0) throw ConfigError("U(1) truncation S must be >= 0");
        return U1Model{s};
    }
    if (group == "su2") {
        if (j.contains("S")) throw ConfigError("S is a U(1) key");
        int tj = get_or<int>(j, "two_j_max", 1);
        if (tj < 0) throw ConfigError("SU(2) truncation two_j_max must be >= 0");
        return Su2Model{tj};
    }
    throw ConfigError("model.group must be \"u1\" or \"su2\"");
}

json model_to_json(const GaugeModel& m) {
    if (is_u1(m)) return json{{"group", "u1"}, {"S", as_u1(m).spin_cutoff}};
    return json{{"group", "su2"}, {"two_j_max", as_su2(m).two_j_max}};
}

void validate_initial_state(const json& j) {
    static const std::set<std::string> kinds = {"vacuum", "flux_loop", "wrapping_loop",
                                                "string", "superposition", "file"};
    if (!j.is_object() || !j.contains("kind")) {
        throw ConfigError("initial_state needs a \"kind\"");
    }
    std::string kind = j.at("kind").get<std::string>();
    if (!kinds.count(kind)) throw ConfigError("unknown initial_state kind \"" + kind + "\"");
    if (kind == "vacuum") {
        reject_unknown_keys(j, {"kind"}, "initial_state");
    } else if (kind == "flux_loop") {
        reject_unknown_keys(j, {"kind", "corner", "w", "h", "e"}, "initial_state");
    } else if (kind == "wrapping_loop") {
        reject_unknown_keys(j, {"kind", "direction", "offset", "e"}, "initial_state");
    } else if (kind == "string") {
        reject_unknown_keys(j, {"kind", "from", "direction", "length", "e"}, "initial_state");
    } else if (kind == "superposition") {
        reject_unknown_keys(j, {"kind", "terms"}, "initial_state");
        if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty()) {
            throw ConfigError("superposition needs a nonempty terms array");
        }
        for (const auto& term : j.at("terms")) {
            reject_unknown_keys(term, {"amp", "state"}, "superposition term");
            if (!term.contains("state")) throw ConfigError("superposition term needs a state");
            validate_initial_state(term.at("state"));
        }
    } else if (kind == "file") {
        reject_unknown_keys(j, {"kind", "path"}, "initial_state");
        if (!j.contains("path")) throw ConfigError("file state needs a path");
    }
}

NoiseSpec parse_noise(const json& j) {
    reject_unknown_keys(j, {"seed", "check_every", "events"}, "noise");
    NoiseSpec spec;
    spec.seed = get_or<std::uint64_t>(j, "seed", 0);
    spec.check_every = get_or<int>(j, "check_every", 1);
    if (spec.check_every < 0) throw ConfigError("noise.check_every must be >= 0");
    if (j.contains("events")) {
        for (const auto& ev : j.at("events")) {
            reject_unknown_keys(ev, {"step", "kind", "link", "angle"}, "noise event");
            NoiseEvent e;
            e.step = get_or<int>(ev, "step", 0);
            if (e.step < 1) throw ConfigError("noise event steps are 1-based");
            std::string kind = get_or<std::string>(ev, "kind", "link_raise");
            if (kind == "link_raise") {
                e.kind = NoiseKind::LinkRaise;
            } else if (kind == "dephase") {
                e.kind = NoiseKind::Dephase;
            } else {
                throw ConfigError("unknown noise kind \"" + kind + "\"");
            }
            e.link = get_or<int>(ev, "link", 0);
            e.angle = get_or<double>(ev, "angle", 0.0);
            spec.events.push_back(e);
        }
    }
    return spec;
}

}  // namespace

ChargeConfig RunConfig::charge_config() const {
    if (charges.empty()) return ChargeConfig::neutral(lattice());
    return ChargeConfig{charges};
}

RunConfig parse_run_config(const json& j) {
    reject_unknown_keys(j,
                        {"model", "lattice", "g2", "magnetic_sign", "charges", "initial_state",
                         "trotter", "observables", "entropy_links", "noise", "spectrum",
                         "penalty_sweep", "evolve_basis", "seed", "dense_budget", "link_budget"},
                        "config");
    RunConfig c;
    if (j.contains("model")) c.model = parse_model(j.at("model"));
    if (j.contains("lattice")) {
        reject_unknown_keys(j.at("lattice"), {"lx", "ly"}, "lattice");
        c.lx = get_or<int>(j.at("lattice"), "lx", 2);
        c.ly = get_or<int>(j.at("lattice"), "ly", 2);
    }
    c.g2 = get_or<double>(j, "g2", 1.0);
    if (c.g2 <= 0) throw ConfigError("g2 must be positive");
    c.magnetic_sign = get_or<int>(j, "magnetic_sign", default_magnetic_sign(c.model));
    if (c.magnetic_sign != 1 && c.magnetic_sign != -1) {
        throw ConfigError("magnetic_sign must be +1 or -1");
    }
    c.charges = get_or<std::vector<int>>(j, "charges", {});
    if (j.contains("initial_state")) {
        validate_initial_state(j.at("initial_state"));
        c.initial_state = j.at("initial_state");
    }
    if (j.contains("trotter")) {
        reject_unknown_keys(j.at("trotter"), {"dt", "steps", "ordering"}, "trotter");
        c.trotter.dt = get_or<double>(j.at("trotter"), "dt", 0.1);
        c.trotter.steps = get_or<int>(j.at("trotter"), "steps", 10);
        std::string ord = get_or<std::string>(j.at("trotter"), "ordering", "electric_first");
        if (ord == "electric_first") {
            c.trotter.ordering = StepOrder::ElectricFirst;
        } else if (ord == "magnetic_first") {
            c.trotter.ordering = StepOrder::MagneticFirst;
        } else {
            throw ConfigError("trotter.ordering must be electric_first or magnetic_first");
        }
        if (c.trotter.dt <= 0 || c.trotter.steps < 1) {
            throw ConfigError("trotter needs dt > 0 and steps >= 1");
        }
    }
    c.observables = get_or<std::vector<std::string>>(j, "observables", c.observables);
    c.entropy_links = get_or<std::vector<int>>(j, "entropy_links", {});
    if (j.contains("noise")) {
        c.has_noise = true;
        c.noise = parse_noise(j.at("noise"));
    }
    if (j.contains("spectrum")) {
        reject_unknown_keys(j.at("spectrum"), {"k", "compare_penalty", "lambda"}, "spectrum");
        c.spectrum.k = get_or<int>(j.at("spectrum"), "k", 10);
        c.spectrum.compare_penalty = get_or<bool>(j.at("spectrum"), "compare_penalty", false);
        c.spectrum.lambda = get_or<double>(j.at("spectrum"), "lambda", 100.0);
        if (c.spectrum.k < 1) throw ConfigError("spectrum.k must be >= 1");
    }
    if (j.contains("penalty_sweep")) {
        reject_unknown_keys(j.at("penalty_sweep"), {"lambdas", "epsilon", "link", "t"},
                            "penalty_sweep");
        c.penalty_sweep.lambdas =
            get_or<std::vector<double>>(j.at("penalty_sweep"), "lambdas", c.penalty_sweep.lambdas);
        c.penalty_sweep.epsilon = get_or<double>(j.at("penalty_sweep"), "epsilon", 0.1);
        c.penalty_sweep.link = get_or<int>(j.at("penalty_sweep"), "link", 0);
        c.penalty_sweep.t = get_or<double>(j.at("penalty_sweep"), "t", 5.0);
    }
    c.evolve_basis = get_or<std::string>(j, "evolve_basis", "physical");
    if (c.evolve_basis != "physical" && c.evolve_basis != "full") {
        throw ConfigError("evolve_basis must be \"physical\" or \"full\"");
    }
    c.seed = get_or<std::uint64_t>(j, "seed", 0);
    c.dense_budget = get_or<int>(j, "dense_budget", kDefaultDenseBudget);
    c.link_budget = get_or<int>(j, "link_budget", kDefaultLinkBudget);
    if (c.dense_budget < 1) throw ConfigError("dense_budget must be >= 1");

    // Validate lattice/charges eagerly so config errors surface before work.
    LatticeSpec lat = c.lattice();
    if (!c.charges.empty()) {
        if (is_u1(c.model)) {
            validate_charges_u1(lat, c.charge_config());
        } else {
            validate_charges_su2(lat, c.charge_config());
        }
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse failure: " + std::string(e.what()));
    }
    return parse_run_config(j);
}

json to_json(const RunConfig& c) {
    json j;
    j["model"] = model_to_json(c.model);
    j["lattice"] = {{"lx", c.lx}, {"ly", c.ly}};
    j["g2"] = c.g2;
    j["magnetic_sign"] = c.magnetic_sign;
    if (!c.charges.empty()) j["charges"] = c.charges;
    j["initial_state"] = c.initial_state;
    j["trotter"] = {{"dt", c.trotter.dt},
                    {"steps", c.trotter.steps},
                    {"ordering", c.trotter.ordering == StepOrder::ElectricFirst
                                     ? "electric_first"
                                     : "magnetic_first"}};
    j["observables"] = c.observables;
    if (!c.entropy_links.empty()) j["entropy_links"] = c.entropy_links;
    if (c.has_noise) {
        json events = json::array();
        for (const auto& e : c.noise.events) {
            events.push_back({{"step", e.step},
                              {"kind", e.kind == NoiseKind::LinkRaise ? "link_raise" : "dephase"},
                              {"link", e.link},
                              {"angle", e.angle}});
        }
        j["noise"] = {{"seed", c.noise.seed}, {"check_every", c.noise.check_every},
                      {"events", events}};
    }
    j["spectrum"] = {{"k", c.spectrum.k},
                     {"compare_penalty", c.spectrum.compare_penalty},
                     {"lambda", c.spectrum.lambda}};
    j["penalty_sweep"] = {{"lambdas", c.penalty_sweep.lambdas},
                          {"epsilon", c.penalty_sweep.epsilon},
                          {"link", c.penalty_sweep.link},
                          {"t", c.penalty_sweep.t}};
    j["evolve_basis"] = c.evolve_basis;
    j["seed"] = c.seed;
    j["dense_budget"] = c.dense_budget;
    j["link_budget"] = c.link_budget;
    return j;
}

namespace {

StateVector build_state_node(const json& j, const RunConfig& config,
                             const PhysicalBasisU1& basis) {
    std::string kind = j.at("kind").get<std::string>();
    const LatticeSpec& lat = basis.lattice;
    if (kind == "vacuum") return vacuum_state(basis);
    if (kind == "flux_loop") {
        auto corner = get_or<std::vector<int>>(j, "corner", {0, 0});
        if (corner.size() != 2) throw ConfigError("flux_loop corner must be [x, y]");
        int w = get_or<int>(j, "w", 1);
        int h = get_or<int>(j, "h", 1);
        int e = get_or<int>(j, "e", 1);
        return flux_loop_state(basis, rectangular_loop(lat, lat.site(corner[0], corner[1]), w, h),
                               e);
    }
    if (kind == "wrapping_loop") {
        std::string dir = get_or<std::string>(j, "direction", "x");
        int offset = get_or<int>(j, "offset", 0);
        int e = get_or<int>(j, "e", 1);
        return flux_loop_state(basis, wrapping_loop(lat, dir == "x" ? Dir::X : Dir::Y, offset), e);
    }
    if (kind == "string") {
        auto from = get_or<std::vector<int>>(j, "from", {0, 0});
        if (from.size() != 2) throw ConfigError("string from must be [x, y]");
        std::string dir = get_or<std::string>(j, "direction", "x");
        int length = get_or<int>(j, "length", 1);
        int e = get_or<int>(j, "e", 1);
        return string_state(basis,
                            straight_path(lat, lat.site(from[0], from[1]),
                                          dir == "x" ? Dir::X : Dir::Y, length),
                            e);
    }
    if (kind == "superposition") {
        std::vector<StateVector> states;
        std::vector<std::complex<double>> amps;
        for (const auto& term : j.at("terms")) {
            auto amp = get_or<std::vector<double>>(term, "amp", {1.0, 0.0});
            if (amp.size() != 2) throw ConfigError("term amp must be [re, im]");
            amps.emplace_back(amp[0], amp[1]);
            states.push_back(build_state_node(term.at("state"), config, basis));
        }
        return superpose(states, amps);
    }
    if (kind == "file") {
        std::string path = j.at("path").get<std::string>();
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open state file " + path);
        json sj;
        in >> sj;
        if (sj.at("basis").get<std::string>() != basis.tag().str()) {
            throw ConfigError("state file basis " + sj.at("basis").get<std::string>() +
                              " does not match " + basis.tag().str());
        }
        auto re = sj.at("re").get<std::vector<double>>();
        auto im = sj.at("im").get<std::vector<double>>();
        if (re.size() != im.size() || static_cast<int>(re.size()) != basis.dim()) {
            throw ConfigError("state file length does not match basis dimension");
        }
        Eigen::VectorXcd amps(basis.dim());
        for (int i = 0; i < basis.dim(); ++i) amps[i] = std::complex<double>(re[i], im[i]);
        return StateVector{basis.tag(), amps}.normalized();
    }
    throw ConfigError("unknown initial_state kind \"" + kind + "\"");
}

}  // namespace

StateVector build_initial_state(const RunConfig& config, const PhysicalBasisU1& basis) {
    return build_state_node(config.initial_state, config, basis);
}

}  // namespace qlm
