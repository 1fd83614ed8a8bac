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

#include "extract/lab.hpp"

#include <cstddef>
#include <vector>

namespace legendgen::extract {

struct ColorClusterParams {
    double epsilon = 0.15;
    int minPoints = 3;
};

struct ColorClusters {
    std::vector<std::vector<std::size_t>> clusters; // largest first
    std::vector<std::size_t> noise;
};

/// DBSCAN in per-axis min-max normalized LAB.
ColorClusters clusterColors(const std::vector<Lab>& colors, const ColorClusterParams& params = {});

/// Sum of consecutive LAB distances along `order`.
double sequenceCost(const std::vector<Lab>& colors, const std::vector<std::size_t>& order);

struct ColorOrder {
    std::vector<std::size_t> order;
    double cost = 0;
};

/// Approximate shortest Hamiltonian path: nearest-neighbor graph (1
/// neighbor, 3 above 100 colors), components bridged by closest pairs, MST,
/// preorder walk from every start node; the cheapest walk wins. The input
/// order is also a candidate. Throws TooFewColors below 2 colors.
ColorOrder orderColors(const std::vector<Lab>& colors);

inline constexpr int kDefaultRampSamples = 512;

/// Natural cubic spline through LAB points, parameterized by cumulative
/// chord length.
class LabSpline {
public:
    /// Consecutive duplicate points are dropped. Needs 2 distinct points.
    explicit LabSpline(const std::vector<Lab>& points);

    double length() const { return knots_.back(); } // chord-length parameter range
    const std::vector<double>& knots() const { return knots_; }
    Lab evaluate(double t) const;

private:
    std::vector<double> knots_;
    std::vector<Lab> points_;
    std::vector<Lab> second_; // second derivatives at the knots
};

/// Samples the spline at `samples` points equally spaced in arc length.
/// Endpoints equal the sequence endpoints exactly.
std::vector<Lab> interpolateRamp(const std::vector<Lab>& sequence, int samples = kDefaultRampSamples);

enum class Classification { Categorical, Ordinal, ContinuousSingleHue, ContinuousMultiHue, ContinuousDiverging };

const char* classificationName(Classification c);
bool isContinuous(Classification c);

inline constexpr std::size_t kContinuousMinColors = 20;

/// Continuous sub-type of an ordered color sequence: single hue when the
/// hue range of chromatic colors is below 30 degrees, diverging when the L
/// profile bulges more than 10 units from its endpoint chord, else multi-hue.
Classification classifyContinuous(const std::vector<Lab>& sequence);

/// True when discrete category colors (in their TSP order) read as an
/// ordered scale: at least 3 colors, L strictly monotone with steps of at
/// least 3 units, hue range below 60 degrees.
bool isOrdinalPalette(const std::vector<Lab>& ordered);

/// Channel class from clustering: a cluster with at least 20 distinct colors
/// is continuous, anything else discrete.
Classification classifyChannel(const std::vector<Lab>& distinctColors, const ColorClusters& clusters);

/// Sample distance correlation of paired rows. Returns 0 when either
/// distance variance vanishes. Throws LengthMismatch on unequal row counts
/// and InvalidArgument below 4 rows.
double distanceCorrelation(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y);

inline constexpr double kCorrelationThreshold = 0.75;

/// Transitive grouping of sequences whose pairwise dCor exceeds the
/// threshold. Returns groups of indices, each sorted, ordered by first index.
std::vector<std::vector<std::size_t>> mergeCorrelated(const std::vector<std::vector<std::vector<double>>>& sequences,
                                                      double threshold = kCorrelationThreshold);

} // namespace legendgen::extract
