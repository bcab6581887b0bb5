// Copyright 2026 The photocount Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace photocount {

/// An outcome was requested on a state (or ensemble) where it cannot occur.
class ZeroProbability : public std::runtime_error {
 public:
  explicit ZeroProbability(const std::string& what) : std::runtime_error(what) {}
};

/// The measurement operator has no bounded left inverse on the admissible
/// states (its background vanishes), so no reversing measurement exists.
class NonReversible : public std::runtime_error {
 public:
  explicit NonReversible(const std::string& what) : std::runtime_error(what) {}
};

/// Efficiency is undefined when the outcome leaves every state unchanged.
class FidelityOne : public std::runtime_error {
 public:
  explicit FidelityOne(const std::string& what) : std::runtime_error(what) {}
};

/// An internal identity that must hold exactly (up to rounding) was violated.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace photocount
