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

#include <span>
#include <vector>

namespace legendgen::svg {

/// Axis-aligned box (x_min, y_min, x_max, y_max).
struct Box {
    double xMin = 0, yMin = 0, xMax = 0, yMax = 0;

    friend bool operator==(const Box&, const Box&) = default;

    double width() const { return xMax - xMin; }
    double height() const { return yMax - yMin; }
    double area() const { return width() * height(); }
    Point center() const { return {(xMin + xMax) / 2, (yMin + yMax) / 2}; }
    Box united(const Box& o) const;
    bool contains(const Box& o, double tol = 0) const;
    Box translated(double dx, double dy) const { return {xMin + dx, yMin + dy, xMax + dx, yMax + dy}; }
};

/// Width of the estimated text extent: 0.6 * font size per character.
double textWidth(const std::string& text, double fontSize);

/// Local (untransformed) box of a text element's estimated extent.
Box textLocalBox(const TextGeometry& g, const std::string& text);

/// Outline of an element as polygons in the coordinates produced by
/// `outer * element.transform`. Curves (including circles and ellipses) are
/// flattened with `samplesPerCurve` points per quarter arc.
std::vector<Polygon> elementOutline(const VisualElement& el, const Affine& outer = {},
                                    int samplesPerCurve = kDefaultSamplesPerCurve);

/// Tight box of transformed geometry; strokes expand it by half the stroke
/// width. Throws EmptySelection on an empty list.
Box boundingBox(std::span<const VisualElement> elements);
Box boundingBox(const VisualElement& el);

/// Box of the geometry only, ignoring stroke width.
Box geometryBox(const VisualElement& el);

/// Signed shoelace area (positive for counter-clockwise in y-up terms).
double signedArea(const std::vector<Point>& vertices);

/// Area of the element's filled outline (absolute, transform applied).
double outlineArea(const VisualElement& el);

} // namespace legendgen::svg
