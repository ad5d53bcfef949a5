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

#ifndef QLM_LIFT_HPP
#define QLM_LIFT_HPP

#include <vector>

#include <Eigen/Dense>

#include "qlm/basis.hpp"
#include "qlm/model.hpp"
#include "qlm/sparse.hpp"

namespace qlm {

// Embed a dense single-link operator into the full tensor basis, acting as
// identity on every other link factor.
SparseOperator lift_link_operator(const LatticeSpec& lat, const GaugeModel& model,
                                  const Eigen::MatrixXcd& local, LinkId link);

// Embed an operator on the joint space of several distinct links. `local` is
// indexed over the product of the given links' factors in the given order,
// first link most significant.
SparseOperator lift_links_operator(const LatticeSpec& lat, const GaugeModel& model,
                                   const std::vector<LinkId>& links,
                                   const Eigen::MatrixXcd& local);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qlm

#endif
