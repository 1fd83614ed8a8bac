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


#include "extract/channels.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>

namespace legendgen::extract {

const char* channelKindName(ChannelKind kind)
{
    switch (kind) {
    case ChannelKind::Color: return "color";
    case ChannelKind::Size: return "size";
    case ChannelKind::Rotation: return "rotation";
    }
    return "color";
}

const IconicSymbol* Extraction::symbol(const std::string& id) const
{
    for (const auto& s : symbols)
        if (s.id == id)
            return &s;
    return nullptr;
}

const EncodingChannel* Extraction::channel(const std::string& id) const
{
    for (const auto& c : channels)
        if (c.id == id)
            return &c;
    return nullptr;
}

namespace {

svg::Color markColor(const svg::VisualElement& el)
{
    if (auto c = el.dominantColor())
        return *c;
    if (el.reference)
        if (auto c = el.reference->dominantColor())
            return *c;
    return svg::kBlack;
}

std::vector<svg::Color> memberColors(const svg::SceneGraph& scene, const IconicSymbol& symbol)
{
    std::vector<svg::Color> out;
    for (const auto& id : symbol.memberIds) {
        const auto* el = scene.find(id);
        if (!el)
            fail(ErrorCode::NotFound, "symbol member " + id + " missing from scene");
        out.push_back(markColor(*el));
    }
    return out;
}

std::size_t indexOfRgb(const std::vector<svg::Color>& list, const svg::Color& c)
{
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i].sameRgb(c))
            return i;
    return list.size();
}

template <class T>
std::vector<T> pick(const std::vector<T>& from, const std::vector<std::size_t>& order)
{
    std::vector<T> out;
    out.reserve(order.size());
    for (auto i : order)
        out.push_back(from[i]);
    return out;
}

// Orders colors along the shortest path, lighter end first.
std::vector<std::size_t> lightFirstOrder(const std::vector<Lab>& labs)
{
    auto order = orderColors(labs).order;
    if (labs[order.front()].L < labs[order.back()].L)
        std::reverse(order.begin(), order.end());
    return order;
}

} // namespace

double rampPosition(const std::vector<Lab>& ramp, const Lab& color)
{
    std::size_t best = 0;
    double bestDist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        double d = deltaE(ramp[i], color);
        if (d < bestDist) {
            bestDist = d;
            best = i;
        }
    }
    return ramp.size() > 1 ? double(best) / double(ramp.size() - 1) : 0.0;
}

std::vector<double> unwrapAngles(const std::vector<double>& degrees)
{
    std::vector<double> norm;
    for (double d : degrees) {
        double v = std::fmod(d, 360.0);
        norm.push_back(v < 0 ? v + 360.0 : v);
    }
    if (norm.size() < 2)
        return norm;
    std::vector<double> sorted = norm;
    std::sort(sorted.begin(), sorted.end());
    double cut = 360.0; // values below the cut stay, others wrap
    double largest = sorted.front() + 360.0 - sorted.back();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] > largest) {
            largest = sorted[i] - sorted[i - 1];
            cut = sorted[i];
        }
    }
    if (cut < 360.0)
        for (auto& v : norm)
            if (v < cut)
                v += 360.0;
    return norm;
}

EncodingChannel buildColorChannel(const svg::SceneGraph& scene, const IconicSymbol& symbol)
{
    EncodingChannel ch;
    ch.symbolId = symbol.id;
    ch.kind = ChannelKind::Color;
    ch.elementIds = symbol.memberIds;

    std::vector<svg::Color> colors = memberColors(scene, symbol);
    std::vector<svg::Color> distinct;
    for (const auto& c : colors)
        if (indexOfRgb(distinct, c) == distinct.size())
            distinct.push_back(svg::Color{c.r, c.g, c.b, 1.0});
    std::vector<Lab> labs;
    for (const auto& c : distinct)
        labs.push_back(rgbToLab(c));

    ColorClusters clusters = clusterColors(labs);
    ch.classification = classifyChannel(labs, clusters);

    if (isContinuous(ch.classification)) {
        const auto& members = clusters.clusters.front();
        std::vector<Lab> clusterLabs = pick(labs, members);
        auto order = lightFirstOrder(clusterLabs);
        std::vector<Lab> sequence = pick(clusterLabs, order);
        ch.colors = pick(pick(distinct, members), order);
        ch.ramp = interpolateRamp(sequence);
        for (const auto& c : colors)
            ch.elementValues.push_back(rampPosition(ch.ramp, rgbToLab(c)));
        return ch;
    }

    if (ch.classification == Classification::Ordinal)
        ch.colors = pick(distinct, lightFirstOrder(labs));
    else
        ch.colors = distinct;
    for (const auto& c : colors)
        ch.elementValues.push_back(double(indexOfRgb(ch.colors, c)));
    return ch;
}

Extraction extractEncodings(const svg::SceneGraph& scene)
{
    Extraction out;
    out.symbols = extractSymbols(scene);

    for (const auto& sym : out.symbols) {
        std::vector<std::size_t> mine;
        std::vector<std::vector<std::vector<double>>> sequences;

        EncodingChannel color = buildColorChannel(scene, sym);
        const std::size_t colorSlot = out.channels.size();
        {
            std::vector<std::vector<double>> seq;
            for (const auto& id : sym.memberIds) {
                Lab lab = rgbToLab(markColor(*scene.find(id)));
                seq.push_back({lab.L, lab.a, lab.b});
            }
            sequences.push_back(std::move(seq));
            mine.push_back(out.channels.size());
            out.channels.push_back(std::move(color));
        }

        const bool shaped = sym.stage == MatchStage::Transformed ||
                            (sym.stage == MatchStage::Exact && sym.kind != svg::ElementKind::Rect);
        if (shaped) {
            std::vector<double> scales, rotations;
            for (const auto& v : sym.shapeChannels) {
                scales.push_back(v.scaleFactor);
                rotations.push_back(v.rotation);
            }
            auto [smin, smax] = std::minmax_element(scales.begin(), scales.end());
            const bool circular = sym.kind == svg::ElementKind::Circle || sym.kind == svg::ElementKind::Ellipse ||
                                  sym.stage == MatchStage::Transformed;
            if (circular && *smin > 0 && *smax / *smin >= 1.05) {
                EncodingChannel size;
                size.symbolId = sym.id;
                size.kind = ChannelKind::Size;
                size.classification = Classification::Ordinal;
                size.minValue = *smin;
                size.maxValue = *smax;
                size.elementIds = sym.memberIds;
                size.elementValues = scales;
                std::vector<std::vector<double>> seq;
                for (double s : scales)
                    seq.push_back({s});
                sequences.push_back(std::move(seq));
                mine.push_back(out.channels.size());
                out.channels.push_back(std::move(size));
            }
            std::vector<double> unwrapped = unwrapAngles(rotations);
            auto [rmin, rmax] = std::minmax_element(unwrapped.begin(), unwrapped.end());
            if (*rmax - *rmin >= 2.0) {
                EncodingChannel rot;
                rot.symbolId = sym.id;
                rot.kind = ChannelKind::Rotation;
                rot.classification = Classification::Ordinal;
                rot.minValue = *rmin;
                rot.maxValue = *rmax;
                rot.elementIds = sym.memberIds;
                rot.elementValues = unwrapped;
                std::vector<std::vector<double>> seq;
                for (double r : unwrapped)
                    seq.push_back({r});
                sequences.push_back(std::move(seq));
                mine.push_back(out.channels.size());
                out.channels.push_back(std::move(rot));
            }
        }

        // A single uniform color encodes nothing once size or rotation vary.
        if (mine.size() > 1 && out.channels[colorSlot].colors.size() == 1) {
            out.channels.erase(out.channels.begin() + std::ptrdiff_t(colorSlot));
            sequences.erase(sequences.begin());
            mine.erase(mine.begin());
            for (auto& m : mine)
                --m;
        }

        for (const auto& group : mergeCorrelated(sequences)) {
            std::vector<std::size_t> global;
            for (auto i : group)
                global.push_back(mine[i]);
            out.channelGroups.push_back(std::move(global));
        }
    }
    for (std::size_t i = 0; i < out.channels.size(); ++i)
        out.channels[i].id = "ch-" + std::to_string(i);
    return out;
}

} // namespace legendgen::extract
