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

#include "svg/scene.hpp"

#include <algorithm>
#include <cmath>

namespace legendgen::svg {

const char* kindName(ElementKind kind)
{
    switch (kind) {
    case ElementKind::Rect: return "rect";
    case ElementKind::Circle: return "circle";
    case ElementKind::Ellipse: return "ellipse";
    case ElementKind::Line: return "line";
    case ElementKind::Path: return "path";
    case ElementKind::Text: return "text";
    case ElementKind::GroupRef: return "group-ref";
    }
    return "?";
}

Color LinearGradient::sample(double t) const
{
    if (stops.empty())
        return kBlack;
    if (t <= stops.front().offset)
        return stops.front().color;
    if (t >= stops.back().offset)
        return stops.back().color;
    for (std::size_t i = 1; i < stops.size(); ++i) {
        const auto& s0 = stops[i - 1];
        const auto& s1 = stops[i];
        if (t <= s1.offset) {
            double span = s1.offset - s0.offset;
            double u = span > 0 ? (t - s0.offset) / span : 1.0;
            auto mix = [u](double a, double b) {
                return static_cast<std::uint8_t>(std::lround(a + (b - a) * u));
            };
            return {mix(s0.color.r, s1.color.r), mix(s0.color.g, s1.color.g), mix(s0.color.b, s1.color.b),
                    s0.color.alpha + (s1.color.alpha - s0.color.alpha) * u};
        }
    }
    return stops.back().color;
}

Color LinearGradient::meanColor() const
{
    double r = 0, g = 0, b = 0;
    for (const auto& s : stops) {
        r += s.color.r;
        g += s.color.g;
        b += s.color.b;
    }
    double n = stops.empty() ? 1.0 : double(stops.size());
    return {static_cast<std::uint8_t>(std::lround(r / n)), static_cast<std::uint8_t>(std::lround(g / n)),
            static_cast<std::uint8_t>(std::lround(b / n)), 1.0};
}

bool operator==(const VisualElement& a, const VisualElement& b)
{
    bool refsEqual = (!a.reference && !b.reference) ||
                     (a.reference && b.reference && *a.reference == *b.reference);
    return refsEqual && a.id == b.id && a.kind == b.kind && a.geometry == b.geometry && a.fill == b.fill &&
           a.stroke == b.stroke && a.strokeWidth == b.strokeWidth && a.opacity == b.opacity &&
           a.fillRule == b.fillRule && a.transform == b.transform && a.text == b.text &&
           a.fillGradient == b.fillGradient;
}

const VisualElement* SceneGraph::find(const std::string& id) const
{
    auto i = indexOf(id);
    return i < 0 ? nullptr : &elements[std::size_t(i)];
}

std::ptrdiff_t SceneGraph::indexOf(const std::string& id) const
{
    auto it = std::find_if(elements.begin(), elements.end(), [&](const auto& e) { return e.id == id; });
    return it == elements.end() ? -1 : it - elements.begin();
}

} // namespace legendgen::svg
