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

#include "svg/affine.hpp"
#include "svg/color.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace legendgen::svg {

enum class ElementKind { Rect, Circle, Ellipse, Line, Path, Text, GroupRef };

const char* kindName(ElementKind kind);

enum class FillRule { NonZero, EvenOdd };
enum class TextAnchor { Start, Middle, End };

struct RectGeometry {
    double x = 0, y = 0, width = 0, height = 0, rx = 0, ry = 0;
    friend bool operator==(const RectGeometry&, const RectGeometry&) = default;
};

struct CircleGeometry {
    double cx = 0, cy = 0, r = 0;
    friend bool operator==(const CircleGeometry&, const CircleGeometry&) = default;
};

struct EllipseGeometry {
    double cx = 0, cy = 0, rx = 0, ry = 0;
    friend bool operator==(const EllipseGeometry&, const EllipseGeometry&) = default;
};

struct LineGeometry {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
    friend bool operator==(const LineGeometry&, const LineGeometry&) = default;
};

/// One absolute path command. H/V/S/T are normalized to Line/Cubic/Quad at parse time.
struct PathSegment {
    enum class Op { Move, Line, Quad, Cubic, Arc, Close };
    Op op = Op::Move;
    // Move/Line: x y. Quad: x1 y1 x y. Cubic: x1 y1 x2 y2 x y.
    // Arc: rx ry x-axis-rotation large-arc sweep x y.
    std::array<double, 7> v{};

    friend bool operator==(const PathSegment&, const PathSegment&) = default;
    Point end() const;
};

struct PathGeometry {
    std::vector<PathSegment> segments;
    friend bool operator==(const PathGeometry&, const PathGeometry&) = default;
};

struct TextGeometry {
    double x = 0, y = 0, fontSize = 16;
    TextAnchor anchor = TextAnchor::Start;
    friend bool operator==(const TextGeometry&, const TextGeometry&) = default;
};

struct GroupRefGeometry {
    std::string href;
    friend bool operator==(const GroupRefGeometry&, const GroupRefGeometry&) = default;
};

using Geometry = std::variant<RectGeometry, CircleGeometry, EllipseGeometry, LineGeometry, PathGeometry,
                              TextGeometry, GroupRefGeometry>;

struct GradientStop {
    double offset = 0;
    Color color;
    friend bool operator==(const GradientStop&, const GradientStop&) = default;
};

/// Linear gradient in objectBoundingBox units.
struct LinearGradient {
    std::string id;
    double x1 = 0, y1 = 0, x2 = 1, y2 = 0;
    std::vector<GradientStop> stops;
    friend bool operator==(const LinearGradient&, const LinearGradient&) = default;

    Color sample(double t) const;
    Color meanColor() const;
};

struct VisualElement {
    std::string id;
    ElementKind kind = ElementKind::Rect;
    Geometry geometry;
    std::optional<Color> fill;
    std::optional<Color> stroke;
    double strokeWidth = 1.0;
    double opacity = 1.0;
    FillRule fillRule = FillRule::NonZero;
    Affine transform;
    std::optional<std::string> text;
    // Set when fill referenced a gradient; `fill` then holds its mean color.
    std::optional<LinearGradient> fillGradient;
    // Target of a <use> element, in its own coordinates (GroupRef only).
    std::shared_ptr<const VisualElement> reference;

    friend bool operator==(const VisualElement& a, const VisualElement& b);

    /// The paint that carries the element's color: fill when present, else stroke.
    std::optional<Color> dominantColor() const { return fill ? fill : stroke; }
};

struct SceneGraph {
    double width = 0;
    double height = 0;
    std::vector<VisualElement> elements;
    std::vector<std::string> warnings;

    const VisualElement* find(const std::string& id) const;
    std::ptrdiff_t indexOf(const std::string& id) const;
};

} // namespace legendgen::svg
