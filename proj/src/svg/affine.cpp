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

#include "svg/affine.hpp"

#include "svg/numbers.hpp"

#include <cctype>
#include <numbers>
#include <string>
#include <vector>

namespace legendgen::svg {

Affine Affine::rotateDegrees(double deg)
{
    double r = deg * std::numbers::pi / 180.0;
    double cs = std::cos(r);
    double sn = std::sin(r);
    return {cs, sn, -sn, cs, 0, 0};
}

Affine Affine::inverse() const
{
    double dt = det();
    double ia = d / dt;
    double ib = -b / dt;
    double ic = -c / dt;
    double id = a / dt;
    return {ia, ib, ic, id, -(ia * e + ic * f), -(ib * e + id * f)};
}

std::optional<Affine::Similarity> Affine::asSimilarity(double tol) const
{
    double s = std::hypot(a, b);
    if (s <= tol)
        return std::nullopt;
    if (std::abs(a - d) > tol * std::max(1.0, s) || std::abs(b + c) > tol * std::max(1.0, s))
        return std::nullopt;
    return Similarity{s, std::atan2(b, a) * 180.0 / std::numbers::pi};
}

std::optional<Affine> parseTransform(std::string_view text)
{
    Affine result;
    std::size_t i = 0;
    auto skipSpace = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    skipSpace();
    while (i < text.size()) {
        std::size_t nameStart = i;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
            ++i;
        std::string name(text.substr(nameStart, i - nameStart));
        skipSpace();
        if (name.empty() || i >= text.size() || text[i] != '(')
            return std::nullopt;
        std::size_t close = text.find(')', i);
        if (close == std::string_view::npos)
            return std::nullopt;
        auto args = parseNumberList(text.substr(i + 1, close - i - 1));
        if (!args)
            return std::nullopt;
        const auto& v = *args;
        Affine t;
        if (name == "matrix" && v.size() == 6) {
            t = {v[0], v[1], v[2], v[3], v[4], v[5]};
        } else if (name == "translate" && (v.size() == 1 || v.size() == 2)) {
            t = Affine::translate(v[0], v.size() == 2 ? v[1] : 0.0);
        } else if (name == "scale" && (v.size() == 1 || v.size() == 2)) {
            t = Affine::scale(v[0], v.size() == 2 ? v[1] : v[0]);
        } else if (name == "rotate" && (v.size() == 1 || v.size() == 3)) {
            t = Affine::rotateDegrees(v[0]);
            if (v.size() == 3)
                t = Affine::translate(v[1], v[2]) * t * Affine::translate(-v[1], -v[2]);
        } else if (name == "skewX" && v.size() == 1) {
            t = {1, 0, std::tan(v[0] * std::numbers::pi / 180.0), 1, 0, 0};
        } else if (name == "skewY" && v.size() == 1) {
            t = {1, std::tan(v[0] * std::numbers::pi / 180.0), 0, 1, 0, 0};
        } else {
            return std::nullopt;
        }
        result = result * t;
        i = close + 1;
        skipSpace();
    }
    return result;
}

} // namespace legendgen::svg
