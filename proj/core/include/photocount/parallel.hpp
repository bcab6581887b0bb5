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

#include <cstddef>
#include <functional>
#include <span>

namespace photocount {

/// Sums `values` with a fixed binary tree whose shape depends only on
/// `values.size()`. Results are therefore identical for any thread layout
/// that produced the inputs.
double pairwise_sum(std::span<const double> values);

/// Runs `body(i)` for every i in [0, count). Work is split into contiguous
/// chunks over `threads` workers; `threads <= 1` runs inline. `body` must
/// only write to per-index storage.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace photocount
