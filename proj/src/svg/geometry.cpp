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

#include "svg/geometry.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace legendgen::svg {

Box Box::united(const Box& o) const
{
    return {std::min(xMin, o.xMin), std::min(yMin, o.yMin), std::max(xMax, o.xMax), std::max(yMax, o.yMax)};
}

bool Box::contains(const Box& o, double tol) const
{
    return o.xMin >= xMin - tol && o.yMin >= yMin - tol && o.xMax <= xMax + tol && o.yMax <= yMax + tol;
}

double textWidth(const std::string& text, double fontSize)
{
    // Count code points, not bytes.
    std::size_t chars = 0;
    for (unsigned char c : text)
        if ((c & 0xC0) != 0x80)
            ++chars;
    return 0.6 * fontSize * double(chars);
}

Box textLocalBox(const TextGeometry& g, const std::string& text)
{
    double w = textWidth(text, g.fontSize);
    double x0 = g.x;
    if (g.anchor == TextAnchor::Middle)
        x0 -= w / 2;
    else if (g.anchor == TextAnchor::End)
        x0 -= w;
    return {x0, g.y - 0.8 * g.fontSize, x0 + w, g.y + 0.2 * g.fontSize};
}

namespace {

Polygon ellipsePolygon(double cx, double cy, double rx, double ry, const Affine& xf, int samples)
{
    int n = 4 * std::max(1, samples - 1);
    Polygon poly;
    poly.closed = true;
    for (int k = 0; k < n; ++k) {
        double th = 2 * std::numbers::pi * k / n;
        poly.vertices.push_back(xf.apply({cx + rx * std::cos(th), cy + ry * std::sin(th)}));
    }
    return poly;
}

Polygon boxPolygon(const Box& b, const Affine& xf)
{
    Polygon poly;
    poly.closed = true;
    poly.vertices = {xf.apply({b.xMin, b.yMin}), xf.apply({b.xMax, b.yMin}), xf.apply({b.xMax, b.yMax}),
                     xf.apply({b.xMin, b.yMax})};
    return poly;
}

Polygon roundedRectPolygon(const RectGeometry& r, const Affine& xf, int samples)
{
    double rx = std::min(r.rx > 0 ? r.rx : r.ry, r.width / 2);
    double ry = std::min(r.ry > 0 ? r.ry : r.rx, r.height / 2);
    Polygon poly;
    poly.closed = true;
    int n = std::max(2, samples);
    struct Corner {
        double cx, cy, startDeg;
    };
    const Corner corners[4] = {{r.x + r.width - rx, r.y + ry, -90},
                               {r.x + r.width - rx, r.y + r.height - ry, 0},
                               {r.x + rx, r.y + r.height - ry, 90},
                               {r.x + rx, r.y + ry, 180}};
    for (const auto& c : corners) {
        for (int k = 0; k < n; ++k) {
            double th = (c.startDeg + 90.0 * k / (n - 1)) * std::numbers::pi / 180.0;
            poly.vertices.push_back(xf.apply({c.cx + rx * std::cos(th), c.cy + ry * std::sin(th)}));
        }
    }
    return poly;
}

} // namespace

std::vector<Polygon> elementOutline(const VisualElement& el, const Affine& outer, int samplesPerCurve)
{
    Affine xf = outer * el.transform;
    std::vector<Polygon> out;
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, RectGeometry>) {
                if (g.rx > 0 || g.ry > 0)
                    out.push_back(roundedRectPolygon(g, xf, samplesPerCurve));
                else
                    out.push_back(boxPolygon({g.x, g.y, g.x + g.width, g.y + g.height}, xf));
            } else if constexpr (std::is_same_v<G, CircleGeometry>) {
                out.push_back(ellipsePolygon(g.cx, g.cy, g.r, g.r, xf, samplesPerCurve));
            } else if constexpr (std::is_same_v<G, EllipseGeometry>) {
                out.push_back(ellipsePolygon(g.cx, g.cy, g.rx, g.ry, xf, samplesPerCurve));
            } else if constexpr (std::is_same_v<G, LineGeometry>) {
                Polygon p;
                p.vertices = {xf.apply({g.x1, g.y1}), xf.apply({g.x2, g.y2})};
                out.push_back(std::move(p));
            } else if constexpr (std::is_same_v<G, PathGeometry>) {
                out = flattenSubpaths(g, xf, samplesPerCurve);
            } else if constexpr (std::is_same_v<G, TextGeometry>) {
                out.push_back(boxPolygon(textLocalBox(g, el.text.value_or("")), xf));
            } else if constexpr (std::is_same_v<G, GroupRefGeometry>) {
                if (el.reference)
                    out = elementOutline(*el.reference, xf, samplesPerCurve);
            }
        },
        el.geometry);
    return out;
}

namespace {

Box emptyBox()
{
    double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, -inf, -inf};
}

void expand(Box& b, Point p)
{
    b.xMin = std::min(b.xMin, p.x);
    b.yMin = std::min(b.yMin, p.y);
    b.xMax = std::max(b.xMax, p.x);
    b.yMax = std::max(b.yMax, p.y);
}

// Analytic extents of a transformed ellipse.
Box ellipseBox(double cx, double cy, double rx, double ry, const Affine& xf)
{
    Point c = xf.apply({cx, cy});
    double ex = std::hypot(xf.a * rx, xf.c * ry);
    double ey = std::hypot(xf.b * rx, xf.d * ry);
    return {c.x - ex, c.y - ey, c.x + ex, c.y + ey};
}

Box geometryBoxImpl(const VisualElement& el, const Affine& outer)
{
    Affine xf = outer * el.transform;
    if (const auto* c = std::get_if<CircleGeometry>(&el.geometry))
        return ellipseBox(c->cx, c->cy, c->r, c->r, xf);
    if (const auto* e = std::get_if<EllipseGeometry>(&el.geometry))
        return ellipseBox(e->cx, e->cy, e->rx, e->ry, xf);
    if (el.kind == ElementKind::GroupRef) {
        if (!el.reference)
            return emptyBox();
        return geometryBoxImpl(*el.reference, xf);
    }
    Box b = emptyBox();
    for (const auto& poly : elementOutline(el, outer))
        for (const auto& p : poly.vertices)
            expand(b, p);
    return b;
}

} // namespace

Box geometryBox(const VisualElement& el)
{
    return geometryBoxImpl(el, {});
}

Box boundingBox(const VisualElement& el)
{
    Box b = geometryBox(el);
    if (el.stroke && el.strokeWidth > 0 && el.kind != ElementKind::Text) {
        double h = el.strokeWidth * el.transform.meanScale() / 2;
        b = {b.xMin - h, b.yMin - h, b.xMax + h, b.yMax + h};
    }
    return b;
}

Box boundingBox(std::span<const VisualElement> elements)
{
    if (elements.empty())
        fail(ErrorCode::EmptySelection, "bounding box of an empty selection");
    Box b = emptyBox();
    for (const auto& el : elements) {
        Box e = boundingBox(el);
        if (std::isfinite(e.xMin))
            b = b.united(e);
    }
    if (!std::isfinite(b.xMin))
        fail(ErrorCode::EmptySelection, "selection has no geometry");
    return b;
}

double signedArea(const std::vector<Point>& v)
{
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return s / 2;
}

double outlineArea(const VisualElement& el)
{
    if (const auto* c = std::get_if<CircleGeometry>(&el.geometry))
        return std::numbers::pi * c->r * c->r * std::abs(el.transform.det());
    if (const auto* e = std::get_if<EllipseGeometry>(&el.geometry))
        return std::numbers::pi * e->rx * e->ry * std::abs(el.transform.det());
    double total = 0;
    for (const auto& poly : elementOutline(el))
        if (poly.vertices.size() >= 3)
            total += signedArea(poly.vertices);
    return std::abs(total);
}

} // namespace legendgen::svg
