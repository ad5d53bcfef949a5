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

#ifndef QLM_SERIALIZE_HPP
#define QLM_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "qlm/basis.hpp"
#include "qlm/states.hpp"

namespace qlm {

nlohmann::json basis_to_json(const PhysicalBasisU1& basis);
PhysicalBasisU1 basis_u1_from_json(const nlohmann::json& j);

nlohmann::json basis_to_json(const PhysicalBasisSu2& basis);
PhysicalBasisSu2 basis_su2_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const StateVector& state);
StateVector state_from_json(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace qlm

#endif
