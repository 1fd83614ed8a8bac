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

#include "svg/color.hpp"

namespace legendgen::extract {

/// CIELAB under D65.
struct Lab {
    double L = 0;
    double a = 0;
    double b = 0;

    friend bool operator==(const Lab&, const Lab&) = default;
};

Lab rgbToLab(double r, double g, double b); // channels in [0, 255]
Lab rgbToLab(const svg::Color& c);

/// Inverse conversion; out-of-gamut results are clamped per channel.
svg::Color labToRgb(const Lab& lab);

/// Euclidean distance in LAB (CIE76).
double deltaE(const Lab& x, const Lab& y);

double chroma(const Lab& c);

/// Hue angle in [0, 360).
double hueDegrees(const Lab& c);

} // namespace legendgen::extract
