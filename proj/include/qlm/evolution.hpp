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

#ifndef QLM_EVOLUTION_HPP
#define QLM_EVOLUTION_HPP

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qlm/operators.hpp"
#include "qlm/states.hpp"

namespace qlm {

enum class StepOrder { ElectricFirst, MagneticFirst };

struct TrotterPlan {
    double dt = 0.1;
    int steps = 10;
    StepOrder ordering = StepOrder::ElectricFirst;

    double total_time() const { return dt * steps; }
};

// Named measurement evaluated on the state each step.
struct Observer {
    std::string name;
    std::function<std::complex<double>(const StateVector&)> eval;
};

struct ObservableValue {
    std::string name;
    std::complex<double> value;
};

struct StepRecord {
    int step = 0;
    double time = 0.0;
    double norm = 1.0;
    double gauge_violation = 0.0;
    std::vector<ObservableValue> observables;
};

struct EvolutionReport {
    std::vector<StepRecord> records;
    double max_norm_drift = 0.0;
};

// exp(-iHt) psi through a dense eigendecomposition of Hermitian H.
StateVector exact_evolve(const SparseOperator& h, const StateVector& psi, double t,
                         int dense_budget = kDefaultDenseBudget);

// Cached application of exp(-iAt) for Hermitian sparse A. Diagonal operators
// use exact phases; otherwise each block of the supplied partition is
// eigendecomposed once (the whole space when no partition is given). The
// partition must be invariant under A.
class HermitianPropagator {
  public:
    HermitianPropagator(const SparseOperator& op, int dense_budget,
                        const std::vector<std::vector<std::uint64_t>>* blocks = nullptr);

    void apply(Eigen::VectorXcd& v, double t) const;

  private:
    struct Block {
        std::vector<std::uint64_t> indices;
        Eigen::MatrixXcd vectors;
        Eigen::VectorXd values;
    };
    std::uint64_t dim_;
    bool diagonal_;
    Eigen::VectorXd phases_;  // diagonal case
    std::vector<Block> blocks_;
};

// First-order alternation [exp(-iH_E dt) exp(-iH_B dt)]^steps (or swapped).
// Observables and gauge violation (when a violation functional is supplied)
// are recorded at step 0 and after every step.
std::pair<StateVector, EvolutionReport> trotter_evolve(
    const HamiltonianParts& parts, const StateVector& psi, const TrotterPlan& plan,
    const std::vector<Observer>& observers = {}, int dense_budget = kDefaultDenseBudget,
    const std::function<double(const StateVector&)>& violation = nullptr,
    const std::vector<std::vector<std::uint64_t>>* blocks = nullptr);

// || trotter(psi) - exact(H_E + H_B) psi ||_2 at the plan's total time.
double trotter_error(const HamiltonianParts& parts, const StateVector& psi,
                     const TrotterPlan& plan, int dense_budget = kDefaultDenseBudget);

}  // namespace qlm

#endif
