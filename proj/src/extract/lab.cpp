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


#include "extract/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace legendgen::extract {

namespace {

constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;
constexpr double kDelta = 6.0 / 29.0;

double toLinear(double c)
{
    c /= 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double fromLinear(double c)
{
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double labF(double t)
{
    return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3 * kDelta * kDelta) + 4.0 / 29.0;
}

double labFInverse(double t)
{
    return t > kDelta ? t * t * t : 3 * kDelta * kDelta * (t - 4.0 / 29.0);
}

std::uint8_t toByte(double v)
{
    return std::uint8_t(std::lround(std::clamp(v * 255.0, 0.0, 255.0)));
}

} // namespace

Lab rgbToLab(double r, double g, double b)
{
    double lr = toLinear(r), lg = toLinear(g), lb = toLinear(b);
    double x = 0.4124564 * lr + 0.3575761 * lg + 0.1804375 * lb;
    double y = 0.2126729 * lr + 0.7151522 * lg + 0.0721750 * lb;
    double z = 0.0193339 * lr + 0.1191920 * lg + 0.9503041 * lb;
    double fx = labF(x / kXn), fy = labF(y / kYn), fz = labF(z / kZn);
    return {116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)};
}

Lab rgbToLab(const svg::Color& c)
{
    return rgbToLab(c.r, c.g, c.b);
}

svg::Color labToRgb(const Lab& lab)
{
    double fy = (lab.L + 16) / 116;
    double fx = fy + lab.a / 500;
    double fz = fy - lab.b / 200;
    double x = kXn * labFInverse(fx), y = kYn * labFInverse(fy), z = kZn * labFInverse(fz);
    double lr = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    double lg = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    double lb = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
    return {toByte(fromLinear(std::max(lr, 0.0))), toByte(fromLinear(std::max(lg, 0.0))),
            toByte(fromLinear(std::max(lb, 0.0))), 1.0};
}

double deltaE(const Lab& x, const Lab& y)
{
    double dl = x.L - y.L, da = x.a - y.a, db = x.b - y.b;
    return std::sqrt(dl * dl + da * da + db * db);
}

double chroma(const Lab& c)
{
    return std::hypot(c.a, c.b);
}

double hueDegrees(const Lab& c)
{
    double h = std::atan2(c.b, c.a) * 180.0 / std::numbers::pi;
    return h < 0 ? h + 360.0 : h;
}

} // namespace legendgen::extract
