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

#include "legend/interact.hpp"

#include "error.hpp"
#include "extract/lab.hpp"

#include <algorithm>
#include <cmath>

namespace legendgen::legend {

using extract::ChannelKind;
using extract::EncodingChannel;

namespace {

std::ptrdiff_t channelIndex(const ChartDocument& doc, const std::string& id)
{
    const auto& chs = doc.extraction.channels;
    for (std::size_t i = 0; i < chs.size(); ++i)
        if (chs[i].id == id)
            return std::ptrdiff_t(i);
    return -1;
}

// Member value scaled to [0, 1] for range selections.
double normalizedValue(const EncodingChannel& ch, std::size_t i)
{
    if (ch.kind == ChannelKind::Color)
        return ch.elementValues[i];
    double span = ch.maxValue - ch.minValue;
    return span > 0 ? (ch.elementValues[i] - ch.minValue) / span : 0.5;
}

svg::VisualElement& member(svg::SceneGraph& scene, const std::string& id)
{
    auto idx = scene.indexOf(id);
    if (idx < 0)
        fail(ErrorCode::NotFound, "member '" + id + "' missing from scene");
    return scene.elements[std::size_t(idx)];
}

extract::Lab rampAt(const std::vector<extract::Lab>& ramp, double t)
{
    auto idx = std::size_t(std::lround(std::clamp(t, 0.0, 1.0) * double(ramp.size() - 1)));
    return ramp[idx];
}

bool sameColors(const std::vector<svg::Color>& a, const std::vector<svg::Color>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].sameRgb(b[i]))
            return false;
    return true;
}

} // namespace

std::string primaryChannelId(const ChartDocument& doc)
{
    const auto& ex = doc.extraction;
    if (ex.channelGroups.empty() || ex.channelGroups.front().empty())
        fail(ErrorCode::NoSymbolsFound, "document has no encoding channels");
    return ex.channels[ex.channelGroups.front().front()].id;
}

ChartDocument highlight(const ChartDocument& doc, const std::string& channelId, const Selection& selection,
                        HighlightState& state)
{
    auto ci = channelIndex(doc, channelId);
    if (ci < 0)
        fail(ErrorCode::UnknownSelection, "unknown channel '" + channelId + "'");
    const auto& ch = doc.extraction.channels[std::size_t(ci)];
    if (selection.category) {
        if (!(ch.kind == ChannelKind::Color && ch.discrete()) || *selection.category >= ch.colors.size())
            fail(ErrorCode::UnknownSelection, "category " + std::to_string(*selection.category) + " is not a legend item");
    } else {
        if (ch.kind == ChannelKind::Color && ch.discrete())
            fail(ErrorCode::UnknownSelection, "discrete channels select items, not ranges");
        if (!(selection.lo <= selection.hi) || selection.hi < 0 || selection.lo > 1)
            fail(ErrorCode::UnknownSelection, "range selection must overlap [0, 1]");
    }

    ChartDocument out = doc;
    state.saved.clear();
    for (std::size_t i = 0; i < ch.elementIds.size(); ++i) {
        bool selected = selection.category ? std::size_t(ch.elementValues[i]) == *selection.category
                                           : normalizedValue(ch, i) >= selection.lo &&
                                                 normalizedValue(ch, i) <= selection.hi;
        if (selected)
            continue;
        auto& el = member(out.scene, ch.elementIds[i]);
        state.saved.emplace_back(el.id, el.opacity);
        el.opacity = kDimOpacity;
    }
    return out;
}

ChartDocument unhighlight(const ChartDocument& doc, const HighlightState& state)
{
    ChartDocument out = doc;
    for (const auto& [id, opacity] : state.saved)
        member(out.scene, id).opacity = opacity;
    return out;
}

RetrieveResult retrieve(const ChartDocument& doc, const std::string& elementId)
{
    const auto& ex = doc.extraction;
    for (const auto& group : ex.channelGroups) {
        if (group.empty())
            continue;
        const auto& ch = ex.channels[group.front()];
        auto it = std::find(ch.elementIds.begin(), ch.elementIds.end(), elementId);
        if (it == ch.elementIds.end())
            continue;
        auto i = std::size_t(it - ch.elementIds.begin());
        RetrieveResult r;
        r.channelId = ch.id;
        if (ch.kind == ChannelKind::Color && ch.discrete()) {
            r.item = std::size_t(ch.elementValues[i]);
        } else {
            r.continuous = true;
            r.position = std::clamp(normalizedValue(ch, i), 0.0, 1.0);
        }
        return r;
    }
    fail(ErrorCode::NotAMark, "'" + elementId + "' is not a mark of any symbol");
}

ChartDocument retarget(const ChartDocument& doc, const std::string& channelId, const Replacement& replacement)
{
    auto ci = channelIndex(doc, channelId);
    if (ci < 0)
        fail(ErrorCode::NotFound, "unknown channel '" + channelId + "'");
    const auto& current = doc.extraction.channels[std::size_t(ci)];
    if (current.kind != ChannelKind::Color)
        fail(ErrorCode::InvalidArgument, "only color channels can be retargeted");
    const auto& original = doc.originalChannels[std::size_t(ci)];

    ChartDocument out = doc;
    auto& ch = out.extraction.channels[std::size_t(ci)];
    std::vector<svg::Color> colors = replacement.colors;
    for (auto& c : colors)
        c.alpha = 1.0;

    const bool discrete = original.discrete();
    if (discrete && colors.size() != original.colors.size())
        fail(ErrorCode::CardinalityMismatch, "palette has " + std::to_string(colors.size()) + " colors, channel has " +
                                                 std::to_string(original.colors.size()));
    if (!discrete && colors.size() < 2)
        fail(ErrorCode::CardinalityMismatch, "a replacement ramp needs at least 2 colors");
    const bool identity = sameColors(colors, original.colors);

    std::vector<extract::Lab> newRamp;
    if (!discrete) {
        if (identity) {
            newRamp = original.ramp;
        } else {
            std::vector<extract::Lab> seq;
            for (const auto& c : colors)
                seq.push_back(extract::rgbToLab(c));
            newRamp = extract::interpolateRamp(seq);
        }
    }

    for (std::size_t i = 0; i < original.elementIds.size(); ++i) {
        const auto& id = original.elementIds[i];
        auto& el = member(out.scene, id);
        const MemberPaint& paint = doc.originalPaint.at(id);
        el.fill = paint.fill;
        el.stroke = paint.stroke;
        el.fillGradient = paint.fillGradient;
        if (identity && replacement.style == RetargetStyle::Fill)
            continue;

        const auto base = paint.fill ? paint.fill : paint.stroke;
        svg::Color mapped = base.value_or(svg::kBlack);
        if (!identity) {
            if (discrete) {
                mapped = colors[std::size_t(original.elementValues[i])];
            } else {
                const double t = original.elementValues[i];
                extract::Lab orig = extract::rgbToLab(mapped);
                extract::Lab was = rampAt(original.ramp, t);
                extract::Lab now = rampAt(newRamp, t);
                mapped = extract::labToRgb({now.L + orig.L - was.L, now.a + orig.a - was.a, now.b + orig.b - was.b});
            }
            mapped.alpha = base ? base->alpha : 1.0;
        }
        el.fillGradient.reset();
        if (replacement.style == RetargetStyle::StrokeFromFill) {
            el.stroke = mapped;
            el.fill.reset();
        } else if (paint.fill) {
            el.fill = mapped;
        } else {
            el.stroke = mapped;
        }
    }

    ch.colors = identity ? original.colors : colors;
    if (!discrete)
        ch.ramp = newRamp;
    return out;
}

} // namespace legendgen::legend
