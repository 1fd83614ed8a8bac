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

#include "svg/path.hpp"
#include "svg/scene.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace legendgen::extract {

/// Normalized centroid-to-vertex distances, in vertex order (max entry 1).
struct ShapeDescriptor {
    std::vector<double> distances;

    std::size_t vertexCount() const { return distances.size(); }
};

enum class MatchStage { Exact, Transformed, Fuzzy };

const char* stageName(MatchStage stage);

/// Per-member shape channel, relative to the representative.
struct ShapeChannelValue {
    double scaleFactor = 1.0;
    double rotation = 0.0; // degrees
};

struct IconicSymbol {
    std::string id;
    svg::ElementKind kind = svg::ElementKind::Path;
    std::vector<std::string> memberIds; // paint order
    std::string representativeId;
    MatchStage stage = MatchStage::Exact;
    std::vector<ShapeChannelValue> shapeChannels; // parallel to memberIds
};

struct FuzzyClusterParams {
    double epsilon = 0.07;
};

/// Minimum cluster size for fuzzy shape clustering over n shapes:
/// max(min(0.05 n, 20), 3).
double fuzzyMinPoints(std::size_t n);

inline constexpr std::size_t kMinGroupSize = 3;
inline constexpr double kDefaultDescriptorTol = 1e-3;

/// Throws DegeneratePath on fewer than 3 vertices or a zero-length maximum.
ShapeDescriptor centroidVerticesDescriptor(const svg::Polygon& poly);

/// Cyclic alignment of b against a: b index (offset + i) or (offset - i)
/// pairs with a index i.
struct DescriptorAlignment {
    std::size_t offset = 0;
    bool reversed = false;
    double deviation = 0; // max abs difference
};

/// Best cyclic alignment; forward alignments within `tol` win over reversed
/// ones. nullopt when vertex counts differ.
std::optional<DescriptorAlignment> alignDescriptors(const ShapeDescriptor& a, const ShapeDescriptor& b,
                                                    double tol = kDefaultDescriptorTol);

bool descriptorMatch(const ShapeDescriptor& a, const ShapeDescriptor& b, double tol = kDefaultDescriptorTol);

/// Groups elements with equal kind and canonical geometry. Rects, circles
/// and ellipses group by kind alone; their size differences become shape
/// channel values (circles and ellipses only). Groups below kMinGroupSize
/// are dropped.
std::vector<IconicSymbol> exactMatchGroups(std::span<const svg::VisualElement> elements);

/// Groups paths whose flattened outlines share a descriptor up to rotation
/// and scale. Groups are the connected components of the match relation.
std::vector<IconicSymbol> transformedMatchGroups(std::span<const svg::VisualElement> paths,
                                                 double tol = kDefaultDescriptorTol);

/// DBSCAN over min-max normalized (area, aspect ratio). Noise is dropped;
/// the representative is the median-area member.
std::vector<IconicSymbol> fuzzyCluster(std::span<const svg::VisualElement> paths,
                                       const FuzzyClusterParams& params = {});

/// True for elements that may encode data: not text, not an axis-like
/// hairline, not a background rect.
bool isMarkCandidate(const svg::VisualElement& el, const svg::SceneGraph& scene);

/// Runs exact, transformed and fuzzy matching in order over the mark
/// candidates. Symbol ids are "sym-<n>". Throws NoSymbolsFound when nothing groups.
std::vector<IconicSymbol> extractSymbols(const svg::SceneGraph& scene);

} // namespace legendgen::extract
