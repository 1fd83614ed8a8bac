// Copyright 2026 The legendgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <vector>

namespace legendgen::extract {

inline constexpr int kNoise = -1;

/// Density clustering. A point is core when at least `minPoints` points
/// (itself included) lie within Euclidean distance `epsilon`. Returns one
/// label per point: cluster index in discovery order, or kNoise.
std::vector<int> dbscan(const std::vector<std::vector<double>>& points, double epsilon, double minPoints);

/// Groups point indices by label, dropping noise. Clusters keep discovery order.
std::vector<std::vector<std::size_t>> clusterMembers(const std::vector<int>& labels);

/// Rescales each coordinate to [0, 1] over the set; constant coordinates map to 0.
void minMaxNormalize(std::vector<std::vector<double>>& points);

} // namespace legendgen::extract
