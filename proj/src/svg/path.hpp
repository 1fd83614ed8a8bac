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

#include "svg/scene.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace legendgen::svg {

inline constexpr int kDefaultSamplesPerCurve = 8;

struct Polygon {
    std::vector<Point> vertices;
    bool closed = false;
};

/// Parses path data (M L H V C S Q T A Z, absolute and relative) into
/// absolute segments. Returns nullopt on a syntax error.
std::optional<PathGeometry> parsePathData(std::string_view d);

/// Serializes absolute segments back to path data.
std::string formatPathData(const PathGeometry& path);

/// Flattens each subpath into a polyline in the coordinates given by `xf`.
/// Each curve segment contributes samplesPerCurve points evenly spaced in its
/// parameter (both endpoints included); consecutive duplicates are merged.
std::vector<Polygon> flattenSubpaths(const PathGeometry& path, const Affine& xf, int samplesPerCurve);

/// Flattens a path element (transform applied) into one polygon. Multiple
/// subpaths are concatenated in order. Throws DegeneratePath when every
/// vertex coincides.
Polygon flattenPath(const VisualElement& path, int samplesPerCurve = kDefaultSamplesPerCurve);

} // namespace legendgen::svg
