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

#include "qlm/evolution.hpp"

#include <cmath>

namespace qlm {

using Cx = std::complex<double>;

namespace {

constexpr double kHermTol = 1e-10;

}  // namespace

StateVector exact_evolve(const SparseOperator& h, const StateVector& psi, double t,
                         int dense_budget) {
    if (!(h.tag() == psi.tag) || h.dim() != static_cast<std::uint64_t>(psi.amps.size())) {
        throw BasisMismatchError("exact_evolve: operator and state bases differ");
    }
    if (h.hermiticity_error() > kHermTol) {
        throw ConfigError("exact_evolve requires a Hermitian operator");
    }
    Eigen::MatrixXcd dense = h.to_dense(dense_budget);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    Eigen::VectorXcd w = solver.eigenvectors().adjoint() * psi.amps;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w[i] *= std::exp(Cx(0.0, -solver.eigenvalues()[i] * t));
    }
    return StateVector{psi.tag, solver.eigenvectors() * w};
}

HermitianPropagator::HermitianPropagator(const SparseOperator& op, int dense_budget,
                                         const std::vector<std::vector<std::uint64_t>>* blocks)
    : dim_(op.dim()), diagonal_(op.is_diagonal()) {
    if (op.hermiticity_error() > kHermTol) {
        throw ConfigError("propagator requires a Hermitian operator");
    }
    if (diagonal_) {
        Eigen::VectorXcd d = op.diagonal();
        phases_ = d.real();
        return;
    }
    std::vector<std::vector<std::uint64_t>> whole;
    if (blocks == nullptr) {
        whole.emplace_back();
        whole[0].reserve(dim_);
        for (std::uint64_t i = 0; i < dim_; ++i) whole[0].push_back(i);
        blocks = &whole;
    }
    std::vector<int> owner(dim_, -1);
    std::size_t covered = 0;
    for (std::size_t b = 0; b < blocks->size(); ++b) {
        for (std::uint64_t i : (*blocks)[b]) {
            owner[i] = static_cast<int>(b);
            ++covered;
        }
    }
    if (covered != dim_) throw Error("propagator blocks must partition the space");

    std::vector<std::unordered_map<std::uint64_t, int>> pos(blocks->size());
    for (std::size_t b = 0; b < blocks->size(); ++b) {
        if ((*blocks)[b].size() > static_cast<std::size_t>(dense_budget)) {
            throw BudgetError("propagator block of size " + std::to_string((*blocks)[b].size()) +
                              " exceeds the dense budget " + std::to_string(dense_budget));
        }
        for (std::size_t i = 0; i < (*blocks)[b].size(); ++i) {
            pos[b].emplace((*blocks)[b][i], static_cast<int>(i));
        }
    }
    std::vector<Eigen::MatrixXcd> mats(blocks->size());
    for (std::size_t b = 0; b < blocks->size(); ++b) {
        mats[b] = Eigen::MatrixXcd::Zero((*blocks)[b].size(), (*blocks)[b].size());
    }
    for (const auto& e : op.entries()) {
        int br = owner[e.row], bc = owner[e.col];
        if (br != bc) {
            throw Error("operator has matrix elements across propagator blocks");
        }
        mats[br](pos[br].at(e.row), pos[bc].at(e.col)) += e.value;
    }
    blocks_.reserve(blocks->size());
    for (std::size_t b = 0; b < blocks->size(); ++b) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mats[b]);
        if (solver.info() != Eigen::Success) throw Error("block eigendecomposition failed");
        blocks_.push_back({(*blocks)[b], solver.eigenvectors(), solver.eigenvalues()});
    }
}

void HermitianPropagator::apply(Eigen::VectorXcd& v, double t) const {
    if (static_cast<std::uint64_t>(v.size()) != dim_) {
        throw BasisMismatchError("propagator dimension mismatch");
    }
    if (diagonal_) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (phases_[i] != 0.0) v[i] *= std::exp(Cx(0.0, -phases_[i] * t));
        }
        return;
    }
    for (const auto& blk : blocks_) {
        Eigen::VectorXcd x(blk.indices.size());
        for (std::size_t i = 0; i < blk.indices.size(); ++i) x[i] = v[blk.indices[i]];
        Eigen::VectorXcd w = blk.vectors.adjoint() * x;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            w[i] *= std::exp(Cx(0.0, -blk.values[i] * t));
        }
        x = blk.vectors * w;
        for (std::size_t i = 0; i < blk.indices.size(); ++i) v[blk.indices[i]] = x[i];
    }
}

namespace {

void record_step(const StateVector& psi, int step, double t,
                 const std::vector<Observer>& observers,
                 const std::function<double(const StateVector&)>& violation,
                 EvolutionReport& report, double norm0) {
    StepRecord rec;
    rec.step = step;
    rec.time = t;
    rec.norm = psi.norm();
    rec.gauge_violation = violation ? violation(psi) : 0.0;
    for (const auto& obs : observers) rec.observables.push_back({obs.name, obs.eval(psi)});
    report.max_norm_drift = std::max(report.max_norm_drift, std::abs(rec.norm - norm0));
    report.records.push_back(std::move(rec));
}

}  // namespace

std::pair<StateVector, EvolutionReport> trotter_evolve(
    const HamiltonianParts& parts, const StateVector& psi, const TrotterPlan& plan,
    const std::vector<Observer>& observers, int dense_budget,
    const std::function<double(const StateVector&)>& violation,
    const std::vector<std::vector<std::uint64_t>>* blocks) {
    if (plan.dt <= 0 || plan.steps < 1) {
        throw ConfigError("Trotter plan requires dt > 0 and steps >= 1");
    }
    if (!(parts.h_electric.tag() == psi.tag)) {
        throw BasisMismatchError("Hamiltonian parts and state live in different bases");
    }
    HermitianPropagator electric(parts.h_electric, dense_budget, blocks);
    HermitianPropagator magnetic(parts.h_magnetic, dense_budget, blocks);

    StateVector state = psi;
    EvolutionReport report;
    const double norm0 = state.norm();
    record_step(state, 0, 0.0, observers, violation, report, norm0);
    for (int k = 1; k <= plan.steps; ++k) {
        if (plan.ordering == StepOrder::ElectricFirst) {
            electric.apply(state.amps, plan.dt);
            magnetic.apply(state.amps, plan.dt);
        } else {
            magnetic.apply(state.amps, plan.dt);
            electric.apply(state.amps, plan.dt);
        }
        record_step(state, k, k * plan.dt, observers, violation, report, norm0);
    }
    return {std::move(state), std::move(report)};
}

double trotter_error(const HamiltonianParts& parts, const StateVector& psi,
                     const TrotterPlan& plan, int dense_budget) {
    auto [trotter, report] = trotter_evolve(parts, psi, plan, {}, dense_budget);
    StateVector exact = exact_evolve(parts.total(), psi, plan.total_time(), dense_budget);
    return (trotter.amps - exact.amps).norm();
}

}  // namespace qlm
