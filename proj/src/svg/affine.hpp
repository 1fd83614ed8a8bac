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

#include <cmath>
#include <optional>
#include <string_view>

namespace legendgen::svg {

struct Point {
    double x = 0;
    double y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

/// 2x3 affine matrix in SVG order: (x, y) -> (a*x + c*y + e, b*x + d*y + f).
struct Affine {
    double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

    friend bool operator==(const Affine&, const Affine&) = default;

    static Affine translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
    static Affine scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }
    static Affine rotateDegrees(double deg);

    /// this * o: apply o first, then this.
    Affine operator*(const Affine& o) const
    {
        return {a * o.a + c * o.b,     b * o.a + d * o.b,     a * o.c + c * o.d,
                b * o.c + d * o.d,     a * o.e + c * o.f + e, b * o.e + d * o.f + f};
    }

    Point apply(Point p) const { return {a * p.x + c * p.y + e, b * p.x + d * p.y + f}; }
    Point applyLinear(Point p) const { return {a * p.x + c * p.y, b * p.x + d * p.y}; }

    double det() const { return a * d - b * c; }
    bool invertible() const { return std::abs(det()) > 1e-12; }
    Affine inverse() const;

    /// Geometric mean scale, sqrt(|det|).
    double meanScale() const { return std::sqrt(std::abs(det())); }

    struct Similarity {
        double scale;
        double rotationDegrees;
    };
    /// Decomposes the linear part as uniform scale * rotation when it is one
    /// (no shear, no reflection, equal axis scales within tol).
    std::optional<Similarity> asSimilarity(double tol = 1e-9) const;
};

/// Parses an SVG transform list ("translate(5,0) rotate(30)"). Returns nullopt on
/// syntax errors.
std::optional<Affine> parseTransform(std::string_view text);

} // namespace legendgen::svg
