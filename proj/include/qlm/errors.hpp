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

#ifndef QLM_ERRORS_HPP
#define QLM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qlm {

/// Base class for all qlmsim errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid user input: bad config file, out-of-range argument, mismatched
/// charges, open path where a closed one is required, and so on.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A computation would exceed a configured resource budget (dense dimension,
/// link count). The request is valid, the machine allowance is not.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

/// Two objects tied to different bases were combined.
struct BasisMismatchError : Error {
    explicit BasisMismatchError(const std::string& msg) : Error(msg) {}
};

}  // namespace qlm

#endif
