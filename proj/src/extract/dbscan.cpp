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


#include "extract/dbscan.hpp"

#include <algorithm>
#include <deque>

namespace legendgen::extract {

namespace {

double squaredDistance(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

} // namespace

std::vector<int> dbscan(const std::vector<std::vector<double>>& points, double epsilon, double minPoints)
{
    const std::size_t n = points.size();
    const double eps2 = epsilon * epsilon;

    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        neighbors[i].push_back(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (squaredDistance(points[i], points[j]) <= eps2) {
                neighbors[i].push_back(j);
                neighbors[j].push_back(i);
            }
        }
    }
    auto isCore = [&](std::size_t i) { return double(neighbors[i].size()) >= minPoints; };

    constexpr int kUnvisited = -2;
    std::vector<int> labels(n, kUnvisited);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != kUnvisited)
            continue;
        if (!isCore(i)) {
            labels[i] = kNoise;
            continue;
        }
        int cluster = next++;
        labels[i] = cluster;
        std::deque<std::size_t> queue(neighbors[i].begin(), neighbors[i].end());
        while (!queue.empty()) {
            std::size_t j = queue.front();
            queue.pop_front();
            if (labels[j] == kNoise)
                labels[j] = cluster; // border point
            if (labels[j] != kUnvisited)
                continue;
            labels[j] = cluster;
            if (isCore(j))
                queue.insert(queue.end(), neighbors[j].begin(), neighbors[j].end());
        }
    }
    return labels;
}

std::vector<std::vector<std::size_t>> clusterMembers(const std::vector<int>& labels)
{
    int count = 0;
    for (int l : labels)
        count = std::max(count, l + 1);
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] >= 0)
            out[std::size_t(labels[i])].push_back(i);
    return out;
}

void minMaxNormalize(std::vector<std::vector<double>>& points)
{
    if (points.empty())
        return;
    const std::size_t dims = points[0].size();
    for (std::size_t k = 0; k < dims; ++k) {
        double lo = points[0][k], hi = points[0][k];
        for (const auto& p : points) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        double range = hi - lo;
        for (auto& p : points)
            p[k] = range > 0 ? (p[k] - lo) / range : 0.0;
    }
}

} // namespace legendgen::extract
