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

#include <cstdint>
#include <span>
#include <vector>

namespace legendgen::svg {

/// Row-major RGB pixels over a white background.
struct RasterBuffer {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 3 bytes per pixel

    RasterBuffer() = default;
    RasterBuffer(int w, int h, Color background = kWhite);

    friend bool operator==(const RasterBuffer&, const RasterBuffer&) = default;

    Color at(int x, int y) const
    {
        const auto* p = &pixels[(std::size_t(y) * std::size_t(width) + std::size_t(x)) * 3];
        return {p[0], p[1], p[2], 1.0};
    }
    void set(int x, int y, Color c)
    {
        auto* p = &pixels[(std::size_t(y) * std::size_t(width) + std::size_t(x)) * 3];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }
    /// Mean of R, G, B at (x, y).
    double value(int x, int y) const
    {
        const auto* p = &pixels[(std::size_t(y) * std::size_t(width) + std::size_t(x)) * 3];
        return (double(p[0]) + double(p[1]) + double(p[2])) / 3.0;
    }
};

/// Longest canvas side used for metric evaluation.
inline constexpr double kMetricMaxSide = 800.0;

/// Scale that caps the canvas's longest side at kMetricMaxSide (never upscales).
double metricScale(const SceneGraph& scene);

/// Paints elements in order onto a buffer; `device` maps document units to
/// pixels. No antialiasing: a pixel is covered when its center is inside.
class Rasterizer {
public:
    explicit Rasterizer(RasterBuffer& target) : target_(target) {}

    void draw(const VisualElement& el, const Affine& device);

private:
    RasterBuffer& target_;
};

/// Renders the scene at `scale` over white. Throws ZeroArea when the scaled
/// canvas is smaller than one pixel in either dimension.
RasterBuffer rasterize(const SceneGraph& scene, double scale);

/// Scanline fill of closed polygons (device pixel coordinates) into a mask
/// covering [x0, x0+w) x [y0, y0+h). Pixel (i, j) is covered when its center
/// (i+0.5, j+0.5) is inside under the given rule.
void fillPolygonMask(std::span<const std::vector<Point>> polygons, FillRule rule, int x0, int y0, int w, int h,
                     std::vector<std::uint8_t>& mask);

} // namespace legendgen::svg
