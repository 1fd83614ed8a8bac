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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace legendgen::svg {

/// An 8-bit sRGB color with a separate alpha in [0, 1].
struct Color {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    double alpha = 1.0;

    friend bool operator==(const Color&, const Color&) = default;

    /// Same RGB triple, alpha ignored.
    bool sameRgb(const Color& o) const { return r == o.r && g == o.g && b == o.b; }

    /// Mean of the three channels, the "pixel value" used by the metrics.
    double mean() const { return (double(r) + double(g) + double(b)) / 3.0; }

    std::string hex() const;
};

inline constexpr Color kWhite{255, 255, 255, 1.0};
inline constexpr Color kBlack{0, 0, 0, 1.0};

/// Parses #rgb, #rrggbb, rgb(), rgba() and the SVG named colors.
/// Returns nullopt for anything else (including "none", which callers handle).
std::optional<Color> parseColor(std::string_view text);

} // namespace legendgen::svg
