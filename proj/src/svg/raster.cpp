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

#include "svg/raster.hpp"

#include "error.hpp"
#include "svg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace legendgen::svg {

RasterBuffer::RasterBuffer(int w, int h, Color background) : width(w), height(h)
{
    pixels.resize(std::size_t(w) * std::size_t(h) * 3);
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = background.r;
        pixels[i + 1] = background.g;
        pixels[i + 2] = background.b;
    }
}

double metricScale(const SceneGraph& scene)
{
    double side = std::max(scene.width, scene.height);
    return side > kMetricMaxSide ? kMetricMaxSide / side : 1.0;
}

void fillPolygonMask(std::span<const std::vector<Point>> polygons, FillRule rule, int x0, int y0, int w, int h,
                     std::vector<std::uint8_t>& mask)
{
    mask.assign(std::size_t(std::max(w, 0)) * std::size_t(std::max(h, 0)), 0);
    if (w <= 0 || h <= 0)
        return;

    struct Edge {
        double yTop, yBottom, xAtTop, slope;
        int dir;
    };
    std::vector<Edge> edges;
    for (const auto& poly : polygons) {
        std::size_t n = poly.size();
        if (n < 3)
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            Point p = poly[i];
            Point q = poly[(i + 1) % n];
            if (p.y == q.y)
                continue;
            int dir = q.y > p.y ? 1 : -1;
            if (p.y > q.y)
                std::swap(p, q);
            edges.push_back({p.y, q.y, p.x, (q.x - p.x) / (q.y - p.y), dir});
        }
    }
    if (edges.empty())
        return;
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.yTop < b.yTop; });

    struct Crossing {
        double x;
        int dir;
    };
    std::vector<Crossing> xs;
    std::vector<const Edge*> active;
    std::size_t next = 0;
    for (int row = 0; row < h; ++row) {
        double yc = y0 + row + 0.5;
        while (next < edges.size() && edges[next].yTop <= yc)
            active.push_back(&edges[next++]);
        std::erase_if(active, [yc](const Edge* e) { return e->yBottom <= yc; });
        xs.clear();
        for (const Edge* e : active)
            if (e->yTop <= yc && yc < e->yBottom)
                xs.push_back({e->xAtTop + (yc - e->yTop) * e->slope, e->dir});
        if (xs.size() < 2)
            continue;
        std::sort(xs.begin(), xs.end(), [](const Crossing& a, const Crossing& b) { return a.x < b.x; });
        int winding = 0;
        for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
            winding += xs[k].dir;
            bool inside = rule == FillRule::EvenOdd ? (winding & 1) != 0 : winding != 0;
            if (!inside)
                continue;
            // pixels whose centers lie in [xs[k], xs[k+1])
            int i0 = int(std::ceil(xs[k].x - 0.5 - x0));
            int i1 = int(std::ceil(xs[k + 1].x - 0.5 - x0));
            i0 = std::max(i0, 0);
            i1 = std::min(i1, w);
            for (int i = i0; i < i1; ++i)
                mask[std::size_t(row) * std::size_t(w) + std::size_t(i)] = 1;
        }
    }
}

namespace {

struct PixelBox {
    int x0, y0, x1, y1; // half-open
    int w() const { return x1 - x0; }
    int h() const { return y1 - y0; }
    bool empty() const { return x1 <= x0 || y1 <= y0; }
};

PixelBox clipBox(const Box& b, const RasterBuffer& target)
{
    if (!std::isfinite(b.xMin))
        return {0, 0, 0, 0};
    PixelBox p{int(std::floor(b.xMin)), int(std::floor(b.yMin)), int(std::ceil(b.xMax)) + 1,
               int(std::ceil(b.yMax)) + 1};
    p.x0 = std::clamp(p.x0, 0, target.width);
    p.y0 = std::clamp(p.y0, 0, target.height);
    p.x1 = std::clamp(p.x1, 0, target.width);
    p.y1 = std::clamp(p.y1, 0, target.height);
    return p;
}

void blend(RasterBuffer& target, int x, int y, Color c, double alpha)
{
    if (alpha >= 1.0) {
        target.set(x, y, c);
        return;
    }
    Color p = target.at(x, y);
    auto mix = [alpha](double dst, double src) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(dst + (src - dst) * alpha), 0L, 255L));
    };
    target.set(x, y, {mix(p.r, c.r), mix(p.g, c.g), mix(p.b, c.b), 1.0});
}

Box polygonsBox(const std::vector<std::vector<Point>>& polys)
{
    double inf = std::numeric_limits<double>::infinity();
    Box b{inf, inf, -inf, -inf};
    for (const auto& poly : polys)
        for (const auto& p : poly) {
            b.xMin = std::min(b.xMin, p.x);
            b.yMin = std::min(b.yMin, p.y);
            b.xMax = std::max(b.xMax, p.x);
            b.yMax = std::max(b.yMax, p.y);
        }
    return b;
}

// Stroke outline: one quad per segment plus an octagonal join at every
// vertex, all counter-clockwise so their windings never cancel.
std::vector<std::vector<Point>> strokePolygons(const std::vector<Polygon>& outline, double width)
{
    std::vector<std::vector<Point>> out;
    double h = width / 2;
    auto ccw = [](std::vector<Point> v) {
        if (signedArea(v) < 0)
            std::reverse(v.begin(), v.end());
        return v;
    };
    for (const auto& poly : outline) {
        const auto& v = poly.vertices;
        std::size_t n = v.size();
        if (n == 0)
            continue;
        std::size_t segs = poly.closed ? n : n - 1;
        for (std::size_t i = 0; i < segs; ++i) {
            Point p = v[i];
            Point q = v[(i + 1) % n];
            Point d = q - p;
            double len = d.norm();
            if (len < 1e-12)
                continue;
            Point nrm{-d.y / len * h, d.x / len * h};
            out.push_back(ccw({p + nrm, q + nrm, q - nrm, p - nrm}));
        }
        for (std::size_t i = 0; i < n; ++i) {
            // Joins at interior vertices always; endpoints only for wide strokes.
            const bool end = !poly.closed && (i == 0 || i + 1 == n);
            if (end && h < 1.0)
                continue;
            std::vector<Point> oct;
            for (int k = 0; k < 8; ++k) {
                double th = std::numbers::pi * k / 4;
                oct.push_back({v[i].x + h * std::cos(th), v[i].y + h * std::sin(th)});
            }
            out.push_back(ccw(std::move(oct)));
        }
    }
    return out;
}

// Analytic inclusion test in element-local coordinates, when the geometry
// has one.
bool analyticInside(const Geometry& g, Point p, bool& handled)
{
    handled = true;
    if (const auto* r = std::get_if<RectGeometry>(&g)) {
        if (r->rx > 0 || r->ry > 0) {
            handled = false;
            return false;
        }
        return p.x >= r->x && p.x <= r->x + r->width && p.y >= r->y && p.y <= r->y + r->height;
    }
    if (const auto* c = std::get_if<CircleGeometry>(&g)) {
        double dx = p.x - c->cx;
        double dy = p.y - c->cy;
        return dx * dx + dy * dy <= c->r * c->r;
    }
    if (const auto* e = std::get_if<EllipseGeometry>(&g)) {
        double dx = (p.x - e->cx) / e->rx;
        double dy = (p.y - e->cy) / e->ry;
        return dx * dx + dy * dy <= 1.0;
    }
    handled = false;
    return false;
}

void drawImpl(RasterBuffer& target, const VisualElement& el, const Affine& device, const VisualElement& style)
{
    if (el.kind == ElementKind::GroupRef) {
        if (el.reference) {
            // Paint comes from the referenced element; opacity from the <use>.
            VisualElement ref = *el.reference;
            ref.opacity *= style.opacity;
            drawImpl(target, ref, device * el.transform, ref);
        }
        return;
    }

    Affine xf = device * el.transform;
    Affine inv = xf.inverse();

    // Fill
    std::optional<Color> fill = el.fill;
    double fillAlpha = fill ? fill->alpha * el.opacity : 0.0;
    if (el.kind == ElementKind::Text) {
        fill = el.fill ? el.fill : el.stroke;
        fillAlpha = fill ? 0.6 * fill->alpha * el.opacity : 0.0;
    }
    if (el.kind == ElementKind::Line)
        fill.reset();

    if (fill && fillAlpha > 0) {
        Box dbox = geometryBox(el);
        Box devBox;
        {
            // device-space box of the geometry box corners
            Point c[4] = {device.apply({dbox.xMin, dbox.yMin}), device.apply({dbox.xMax, dbox.yMin}),
                          device.apply({dbox.xMax, dbox.yMax}), device.apply({dbox.xMin, dbox.yMax})};
            devBox = {c[0].x, c[0].y, c[0].x, c[0].y};
            for (const auto& p : c)
                devBox = devBox.united({p.x, p.y, p.x, p.y});
        }
        PixelBox pb = clipBox(devBox, target);
        if (!pb.empty()) {
            std::vector<std::uint8_t> mask;
            bool analytic = false;
            analyticInside(el.geometry, {0, 0}, analytic);
            if (analytic) {
                mask.assign(std::size_t(pb.w()) * std::size_t(pb.h()), 0);
                for (int j = 0; j < pb.h(); ++j)
                    for (int i = 0; i < pb.w(); ++i) {
                        bool handled = false;
                        Point local = inv.apply({pb.x0 + i + 0.5, pb.y0 + j + 0.5});
                        if (analyticInside(el.geometry, local, handled))
                            mask[std::size_t(j) * std::size_t(pb.w()) + std::size_t(i)] = 1;
                    }
            } else {
                std::vector<std::vector<Point>> polys;
                for (auto& poly : elementOutline(el, device, 16))
                    polys.push_back(std::move(poly.vertices));
                fillPolygonMask(polys, el.fillRule, pb.x0, pb.y0, pb.w(), pb.h(), mask);
            }
            VisualElement bare = el;
            bare.transform = Affine{};
            Box localBox = geometryBox(bare);
            for (int j = 0; j < pb.h(); ++j)
                for (int i = 0; i < pb.w(); ++i) {
                    if (!mask[std::size_t(j) * std::size_t(pb.w()) + std::size_t(i)])
                        continue;
                    Color c = *fill;
                    double a = fillAlpha;
                    if (el.fillGradient) {
                        Point local = inv.apply({pb.x0 + i + 0.5, pb.y0 + j + 0.5});
                        const auto& g = *el.fillGradient;
                        double u = localBox.width() > 0 ? (local.x - localBox.xMin) / localBox.width() : 0;
                        double v = localBox.height() > 0 ? (local.y - localBox.yMin) / localBox.height() : 0;
                        double gx = g.x2 - g.x1;
                        double gy = g.y2 - g.y1;
                        double len2 = gx * gx + gy * gy;
                        double t = len2 > 0 ? ((u - g.x1) * gx + (v - g.y1) * gy) / len2 : 0;
                        c = g.sample(std::clamp(t, 0.0, 1.0));
                        a = c.alpha * el.opacity;
                    }
                    blend(target, pb.x0 + i, pb.y0 + j, c, a);
                }
        }
    }

    // Stroke
    if (el.stroke && el.kind != ElementKind::Text && el.strokeWidth > 0) {
        double width = std::max(1.0, el.strokeWidth * xf.meanScale());
        auto outline = elementOutline(el, device, 16);
        auto polys = strokePolygons(outline, width);
        Box b = polygonsBox(polys);
        PixelBox pb = clipBox(b, target);
        if (!pb.empty()) {
            std::vector<std::uint8_t> mask;
            fillPolygonMask(polys, FillRule::NonZero, pb.x0, pb.y0, pb.w(), pb.h(), mask);
            double a = el.stroke->alpha * el.opacity;
            for (int j = 0; j < pb.h(); ++j)
                for (int i = 0; i < pb.w(); ++i)
                    if (mask[std::size_t(j) * std::size_t(pb.w()) + std::size_t(i)])
                        blend(target, pb.x0 + i, pb.y0 + j, *el.stroke, a);
        }
    }
}

} // namespace

void Rasterizer::draw(const VisualElement& el, const Affine& device)
{
    drawImpl(target_, el, device, el);
}

RasterBuffer rasterize(const SceneGraph& scene, double scale)
{
    if (!(scale > 0))
        fail(ErrorCode::InvalidArgument, "raster scale must be positive");
    int w = int(std::lround(scene.width * scale));
    int h = int(std::lround(scene.height * scale));
    if (w < 1 || h < 1)
        fail(ErrorCode::ZeroArea, "canvas scales to less than one pixel");
    RasterBuffer buffer(w, h);
    Rasterizer r(buffer);
    Affine device = Affine::scale(scale, scale);
    for (const auto& el : scene.elements)
        r.draw(el, device);
    return buffer;
}

} // namespace legendgen::svg
