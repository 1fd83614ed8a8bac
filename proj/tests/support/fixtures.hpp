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

#include "extract/colors.hpp"
#include "svg/color.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace legendgen::fixtures {

enum class ChartType { Bar, StackedBar, Scatter, Choropleth, NodeLink, Wind };

const char* chartTypeName(ChartType type);

inline constexpr ChartType kAllChartTypes[] = {ChartType::Bar,        ChartType::StackedBar, ChartType::Scatter,
                                               ChartType::Choropleth, ChartType::NodeLink,   ChartType::Wind};

/// A generated chart with its labeled encodings.
struct ChartFixture {
    std::string name;
    ChartType type = ChartType::Bar;
    std::string svg;
    std::vector<std::vector<std::string>> symbols; // member ids per mark group
    extract::Classification colorClass = extract::Classification::Categorical;
    std::vector<svg::Color> categories; // discrete colors, first-appearance order
    bool colorRotationLinked = false;
};

/// Deterministic chart; seed 0 is the labeled reference variant.
ChartFixture makeChart(ChartType type, std::uint64_t seed);

/// One chart per type at seed 0.
std::vector<ChartFixture> labeledCharts();

/// Three seeds per type (18 charts) and one further seed per type (6 charts).
std::vector<ChartFixture> trainingCharts();
std::vector<ChartFixture> heldoutCharts();

/// 30 ridge-shaped paths with areas in [90, 110] and evenly spread aspect
/// ratios, plus 2 paths of area 1e4 ("outlier-0", "outlier-1").
std::string mountainScene();

/// Scatter with independent color (3 classes) and size (3 radii) channels.
std::string bubbleChart();

/// SplitMix64 stream with portable real and integer draws.
class Random {
public:
    explicit Random(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform(double lo = 0.0, double hi = 1.0);
    std::size_t index(std::size_t n);

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::uint64_t state_;
};

} // namespace legendgen::fixtures
