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

#include "legend/render.hpp"

#include "error.hpp"
#include "extract/lab.hpp"
#include "svg/numbers.hpp"
#include "svg/writer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace legendgen::legend {

using extract::ChannelKind;
using svg::Affine;
using svg::Box;
using svg::Color;
using svg::TextAnchor;
using svg::VisualElement;

namespace {

constexpr double kFont = kLabelFontSize;
constexpr double kPad = kPadding;
constexpr double kGap = 4.0;
constexpr double kTickLength = 3.0;
constexpr int kGradientStops = 16;
constexpr int kConnectedSegments = 8;
constexpr double kRampSwatches = 10.0;
constexpr double kNestedSwatches = 3.0;
constexpr double kNonuniformStretch = 1.5;
constexpr Color kRuleColor{0x55, 0x55, 0x55, 1.0};
constexpr Color kBorderColor{0xd0, 0xd0, 0xd0, 1.0};

struct Item {
    std::string label;
    std::optional<Color> color; // representative paint when unset
    double scale = 1.0;         // relative to the largest item
    double rotation = 0.0;      // degrees relative to the representative
    double value = 0.0;
    double posX = 0.5;
    double posY = 0.5;
};

std::string fmt(double v)
{
    double r = std::round(v * 100.0) / 100.0;
    return svg::formatNumber(r == 0 ? 0.0 : r);
}

std::string categoryLabel(std::size_t k)
{
    return "Class " + std::to_string(k + 1);
}

double labelWidth(const std::string& s)
{
    return svg::textWidth(s, kFont);
}

void shiftElement(VisualElement& el, double dx, double dy)
{
    if (!(el.transform == Affine{})) {
        el.transform = Affine::translate(dx, dy) * el.transform;
        return;
    }
    std::visit(
        [&](auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, svg::RectGeometry> || std::is_same_v<G, svg::TextGeometry>) {
                g.x += dx;
                g.y += dy;
            } else if constexpr (std::is_same_v<G, svg::CircleGeometry> ||
                                 std::is_same_v<G, svg::EllipseGeometry>) {
                g.cx += dx;
                g.cy += dy;
            } else if constexpr (std::is_same_v<G, svg::LineGeometry>) {
                g.x1 += dx;
                g.y1 += dy;
                g.x2 += dx;
                g.y2 += dy;
            } else {
                el.transform = Affine::translate(dx, dy);
            }
        },
        el.geometry);
}

// Elements in progress, with text backdrops and swatch colors.
struct Sketch {
    std::vector<VisualElement> els;
    std::vector<LegendText> texts;
    std::vector<Color> swatchColors;

    void add(VisualElement el) { els.push_back(std::move(el)); }

    void rect(double x, double y, double w, double h, std::optional<Color> fill, std::optional<Color> stroke = {},
              double strokeWidth = 1.0)
    {
        VisualElement el;
        el.kind = svg::ElementKind::Rect;
        el.geometry = svg::RectGeometry{x, y, w, h, 0, 0};
        el.fill = fill;
        el.stroke = stroke;
        el.strokeWidth = strokeWidth;
        add(std::move(el));
    }

    void line(double x1, double y1, double x2, double y2, Color stroke)
    {
        VisualElement el;
        el.kind = svg::ElementKind::Line;
        el.geometry = svg::LineGeometry{x1, y1, x2, y2};
        el.stroke = stroke;
        el.strokeWidth = 1.0;
        add(std::move(el));
    }

    void text(double x, double baseline, const std::string& s, TextAnchor anchor, Color color, Color backdrop)
    {
        VisualElement el;
        el.kind = svg::ElementKind::Text;
        el.geometry = svg::TextGeometry{x, baseline, kFont, anchor};
        el.fill = color;
        el.text = s;
        texts.push_back({els.size(), backdrop});
        add(std::move(el));
    }

    void append(const Sketch& o, double dx, double dy)
    {
        for (const auto& t : o.texts)
            texts.push_back({t.element + els.size(), t.backdrop});
        for (auto el : o.els) {
            shiftElement(el, dx, dy);
            els.push_back(std::move(el));
        }
        swatchColors.insert(swatchColors.end(), o.swatchColors.begin(), o.swatchColors.end());
    }

    Box extent() const
    {
        if (els.empty())
            return {0, 0, 0, 0};
        return svg::boundingBox(els);
    }
};

// Per-group rendering context.
struct GroupCtx {
    const ChartDocument* doc = nullptr;
    const ChannelGroup* group = nullptr;
    const VisualElement* rep = nullptr;
    Color repColor = svg::kBlack;
    Color textColor = svg::kBlack;
    double swatch = kDefaultSwatchSize;
};

GroupCtx makeCtx(const ChartDocument& doc, const ChannelGroup& g, const LegendSpec& spec)
{
    GroupCtx c;
    c.doc = &doc;
    c.group = &g;
    c.rep = g.symbol ? doc.scene.find(g.symbol->representativeId) : nullptr;
    if (c.rep && c.rep->dominantColor())
        c.repColor = *c.rep->dominantColor();
    c.repColor.alpha = 1.0;
    c.textColor = spec.textColor;
    c.swatch = spec.swatchSize;
    return c;
}

// Position of the representative within a channel's member values.
double repValue(const GroupCtx& c, const extract::EncodingChannel& ch)
{
    for (std::size_t i = 0; i < ch.elementIds.size(); ++i)
        if (c.rep && ch.elementIds[i] == c.rep->id)
            return ch.elementValues[i];
    return ch.elementValues.empty() ? 0.0 : ch.elementValues.front();
}

std::vector<Item> groupItems(const GroupCtx& c)
{
    const auto& g = *c.group;
    const auto& p = g.primary();
    std::vector<Item> items;

    if (p.kind == ChannelKind::Color && p.discrete()) {
        const std::size_t k = p.colors.size();
        const auto* size = g.find(ChannelKind::Size);
        const auto* rot = g.find(ChannelKind::Rotation);
        std::vector<double> sx(k, 0), sy(k, 0), ss(k, 0), sr(k, 0), n(k, 0);
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (std::size_t i = 0; i < p.elementIds.size(); ++i) {
            auto cat = std::size_t(p.elementValues[i]);
            if (cat >= k)
                continue;
            svg::Point ctr = svg::boundingBox(*c.doc->scene.find(p.elementIds[i])).center();
            xmin = std::min(xmin, ctr.x), xmax = std::max(xmax, ctr.x);
            ymin = std::min(ymin, ctr.y), ymax = std::max(ymax, ctr.y);
            sx[cat] += ctr.x;
            sy[cat] += ctr.y;
            if (size)
                ss[cat] += size->elementValues[i];
            if (rot)
                sr[cat] += rot->elementValues[i];
            n[cat] += 1;
        }
        double maxScale = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (n[j] > 0)
                maxScale = std::max(maxScale, ss[j] / n[j]);
        const double rot0 = rot ? repValue(c, *rot) : 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            Item it;
            it.label = categoryLabel(j);
            it.color = p.colors[j];
            it.color->alpha = 1.0;
            it.value = double(j);
            if (n[j] > 0) {
                it.posX = xmax > xmin ? (sx[j] / n[j] - xmin) / (xmax - xmin) : 0.5;
                it.posY = ymax > ymin ? (sy[j] / n[j] - ymin) / (ymax - ymin) : 0.5;
                if (size && maxScale > 0)
                    it.scale = (ss[j] / n[j]) / maxScale;
                if (rot)
                    it.rotation = sr[j] / n[j] - rot0;
            }
            items.push_back(std::move(it));
        }
        return items;
    }

    if (p.kind == ChannelKind::Size || p.kind == ChannelKind::Rotation) {
        const double r0 = repValue(c, p);
        for (std::size_t j = 0; j < kShapeSamples; ++j) {
            double t = double(j) / double(kShapeSamples - 1);
            double v = p.minValue + t * (p.maxValue - p.minValue);
            Item it;
            it.value = v;
            it.posX = it.posY = t;
            if (p.kind == ChannelKind::Size) {
                it.scale = p.maxValue > 0 ? v / p.maxValue : 1.0;
                it.label = fmt(v);
            } else {
                it.rotation = v - r0;
                it.label = fmt(v) + "°";
            }
            items.push_back(std::move(it));
        }
        return items;
    }
    return items;
}

Color rampColor(const extract::EncodingChannel& ch, double t)
{
    if (ch.ramp.empty())
        return ch.colors.empty() ? svg::kBlack : ch.colors.front();
    auto idx = std::size_t(std::lround(std::clamp(t, 0.0, 1.0) * double(ch.ramp.size() - 1)));
    return extract::labToRgb(ch.ramp[idx]);
}

VisualElement swatchShape(const GroupCtx& c, bool semantic, const Item& it, double cx, double cy, double size)
{
    Color color = it.color.value_or(c.repColor);
    if (semantic && c.rep) {
        VisualElement el = *c.rep;
        el.id.clear();
        el.opacity = 1.0;
        el.fillGradient.reset();
        if (el.fill) {
            double a = el.fill->alpha;
            el.fill = color;
            el.fill->alpha = a;
        } else if (el.stroke) {
            double a = el.stroke->alpha;
            el.stroke = color;
            el.stroke->alpha = a;
        }
        const Box b0 = svg::geometryBox(el);
        el.transform = Affine::rotateDegrees(it.rotation) * Affine::translate(-b0.center().x, -b0.center().y) *
                       el.transform;
        const Box b1 = svg::geometryBox(el);
        const double extent = std::max(b1.width(), b1.height());
        const double k = extent > 0 ? size * it.scale / extent : 1.0;
        el.transform = Affine::translate(cx, cy) * Affine::scale(k, k) *
                       Affine::translate(-b1.center().x, -b1.center().y) * el.transform;
        if (el.stroke)
            el.strokeWidth = std::min(el.strokeWidth, 1.0 / k);
        return el;
    }
    const double side = size * it.scale;
    VisualElement el;
    el.kind = svg::ElementKind::Rect;
    el.geometry = svg::RectGeometry{cx - side / 2, cy - side / 2, side, side, 0, 0};
    el.fill = color;
    if (it.rotation != 0)
        el.transform = Affine::translate(cx, cy) * Affine::rotateDegrees(it.rotation) * Affine::translate(-cx, -cy);
    return el;
}

struct Cell {
    Sketch sk;
    double w = 0;
    double h = 0;
};

Cell discreteCell(const GroupCtx& c, bool semantic, const Item& it, TextLayout text, Direction dir,
                  double labelColumn)
{
    Cell cell;
    const double s = c.swatch;
    const Color color = it.color.value_or(c.repColor);
    const double lw = labelWidth(it.label);
    const double rowH = std::max(s, kFont + 2);
    auto swatch = [&](double cx, double cy, double size) {
        cell.sk.add(swatchShape(c, semantic, it, cx, cy, size));
        cell.sk.swatchColors.push_back(color);
    };

    switch (text) {
    case TextLayout::AccompanyingSide:
        if (dir == Direction::Vertical) {
            cell.sk.text(labelColumn, rowH / 2 + 0.3 * kFont, it.label, TextAnchor::End, c.textColor, svg::kWhite);
            swatch(labelColumn + kPad + s / 2, rowH / 2, s);
            cell.w = labelColumn + kPad + s;
            cell.h = rowH;
        } else {
            cell.w = std::max(s, lw);
            swatch(cell.w / 2, s / 2, s);
            cell.sk.text(cell.w / 2, s + 2 + 0.8 * kFont, it.label, TextAnchor::Middle, c.textColor, svg::kWhite);
            cell.h = s + 2 + kFont;
        }
        break;
    case TextLayout::Embedded: {
        double bw = std::max(s, lw + 2 * kPad);
        double bh = std::max(s, kFont + 4);
        if (semantic)
            bw = bh = std::max(bw, bh);
        Item full = it;
        full.scale = 1.0;
        cell.sk.add(swatchShape(c, semantic, full, bw / 2, bh / 2, std::max(bw, bh)));
        if (!semantic)
            std::get<svg::RectGeometry>(cell.sk.els.back().geometry) = {0, 0, bw, bh, 0, 0};
        cell.sk.swatchColors.push_back(color);
        cell.sk.text(bw / 2, bh / 2 + 0.3 * kFont, it.label, TextAnchor::Middle, c.textColor, color);
        cell.w = bw;
        cell.h = bh;
        break;
    }
    case TextLayout::AsSymbol:
        cell.sk.text(0, 0.8 * kFont, it.label, TextAnchor::Start, color, svg::kWhite);
        cell.sk.swatchColors.push_back(color);
        cell.w = lw;
        cell.h = kFont;
        break;
    case TextLayout::None:
        swatch(s / 2, s / 2, s);
        cell.w = cell.h = s;
        break;
    default: // accompanying_cross
        swatch(s / 2, rowH / 2, s);
        cell.sk.text(s + kPad, rowH / 2 + 0.3 * kFont, it.label, TextAnchor::Start, c.textColor, svg::kWhite);
        cell.w = s + kPad + lw;
        cell.h = rowH;
        break;
    }
    return cell;
}

Sketch arrange(const std::vector<Cell>& cells, Direction dir, bool nonuniform, const std::vector<double>& targets)
{
    const bool vertical = dir == Direction::Vertical;
    std::vector<double> start(cells.size(), 0);
    double cursor = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        start[i] = cursor;
        cursor += (vertical ? cells[i].h : cells[i].w) + kGap;
    }
    if (nonuniform && cells.size() > 1) {
        const double span = kNonuniformStretch * (cursor - kGap);
        const bool mirrored = targets.front() > targets.back();
        double end = -1e300;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            double len = vertical ? cells[i].h : cells[i].w;
            double t = std::clamp(targets[i], 0.0, 1.0);
            double want = (mirrored ? 1.0 - t : t) * (span - len);
            start[i] = std::max(want, end + kGap);
            if (i == 0)
                start[i] = want;
            end = start[i] + len;
        }
    }
    Sketch out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        out.append(cells[i].sk, vertical ? 0 : start[i], vertical ? start[i] : 0);
    return out;
}

struct SubLegend {
    Sketch sk;
    std::vector<double> itemValues;
    bool continuous = false;
    bool sampled = false;
};

SubLegend discreteLegend(const GroupCtx& c, const std::vector<Item>& items, bool semantic, TextLayout text,
                         Direction dir, bool nonuniform)
{
    double labelColumn = 0;
    for (const auto& it : items)
        labelColumn = std::max(labelColumn, labelWidth(it.label));
    std::vector<Cell> cells;
    std::vector<double> targets;
    SubLegend out;
    for (const auto& it : items) {
        cells.push_back(discreteCell(c, semantic, it, text, dir, labelColumn));
        targets.push_back(dir == Direction::Vertical ? it.posY : it.posX);
        out.itemValues.push_back(it.value);
    }
    out.sk = arrange(cells, dir, nonuniform, targets);
    return out;
}

void tickLabels(Sketch& sk, const GroupCtx& c, Direction dir, double length, double thickness,
                const std::vector<std::pair<double, std::string>>& ticks)
{
    for (const auto& [t, label] : ticks) {
        double p = t * length;
        if (dir == Direction::Horizontal) {
            sk.line(p, thickness, p, thickness + kTickLength, kRuleColor);
            sk.text(p, thickness + kTickLength + 1 + 0.8 * kFont, label, TextAnchor::Middle, c.textColor,
                    svg::kWhite);
        } else {
            sk.line(thickness, p, thickness + kTickLength, p, kRuleColor);
            sk.text(thickness + kTickLength + 2, p + 0.3 * kFont, label, TextAnchor::Start, c.textColor,
                    svg::kWhite);
        }
    }
}

const std::vector<std::pair<double, std::string>> kRampTicks = {{0.0, "0"}, {0.5, "0.5"}, {1.0, "1"}};

SubLegend continuousLegend(const GroupCtx& c, Direction dir, const std::string& gradientId)
{
    const auto& p = c.group->primary();
    SubLegend out;
    out.continuous = true;
    out.sampled = true;
    const double len = kRampSwatches * c.swatch, thick = c.swatch;
    const bool horizontal = dir == Direction::Horizontal;
    svg::LinearGradient grad;
    grad.id = gradientId;
    grad.x1 = 0, grad.y1 = 0;
    grad.x2 = horizontal ? 1 : 0;
    grad.y2 = horizontal ? 0 : 1;
    for (int k = 0; k < kGradientStops; ++k) {
        double t = double(k) / double(kGradientStops - 1);
        Color col = rampColor(p, t);
        grad.stops.push_back({t, col});
        out.sk.swatchColors.push_back(col);
        out.itemValues.push_back(t);
    }
    out.sk.rect(0, 0, horizontal ? len : thick, horizontal ? thick : len, grad.meanColor());
    out.sk.els.back().fillGradient = grad;
    tickLabels(out.sk, c, dir, len, thick, kRampTicks);
    return out;
}

SubLegend connectedLegend(const GroupCtx& c, Direction dir)
{
    const auto& p = c.group->primary();
    SubLegend out;
    const bool horizontal = dir == Direction::Horizontal;
    const double thick = c.swatch;
    if (!p.discrete()) {
        out.continuous = true;
        out.sampled = true;
        const double seg = kRampSwatches * c.swatch / kConnectedSegments;
        for (int k = 0; k < kConnectedSegments; ++k) {
            double t = (k + 0.5) / kConnectedSegments;
            Color col = rampColor(p, t);
            if (horizontal)
                out.sk.rect(seg * k, 0, seg, thick, col);
            else
                out.sk.rect(0, seg * k, thick, seg, col);
            out.sk.swatchColors.push_back(col);
            out.itemValues.push_back(t);
        }
        tickLabels(out.sk, c, dir, seg * kConnectedSegments, thick, kRampTicks);
        return out;
    }
    auto items = groupItems(c);
    double seg = thick;
    if (horizontal)
        for (const auto& it : items)
            seg = std::max(seg, labelWidth(it.label) + kPad);
    else
        seg = std::max(thick, kFont + 2);
    std::vector<std::pair<double, std::string>> ticks;
    const double len = seg * double(items.size());
    for (std::size_t k = 0; k < items.size(); ++k) {
        Color col = items[k].color.value_or(c.repColor);
        if (horizontal)
            out.sk.rect(seg * double(k), 0, seg, thick, col);
        else
            out.sk.rect(0, seg * double(k), thick, seg, col);
        out.sk.swatchColors.push_back(col);
        out.itemValues.push_back(items[k].value);
        ticks.push_back({(double(k) + 0.5) / double(items.size()), items[k].label});
    }
    tickLabels(out.sk, c, dir, len, thick, ticks);
    return out;
}

SubLegend nestedLegend(const GroupCtx& c, bool semantic)
{
    auto items = groupItems(c);
    SubLegend out;
    const double big = kNestedSwatches * c.swatch;
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return items[a].scale > items[b].scale; });
    for (auto i : order) {
        const auto& it = items[i];
        double d = big * it.scale;
        auto el = swatchShape(c, semantic, it, big / 2, big - d / 2, big);
        el.stroke = svg::kWhite;
        el.strokeWidth = 1.0 / std::max(1e-9, el.transform.meanScale());
        out.sk.add(std::move(el));
        out.sk.swatchColors.push_back(it.color.value_or(c.repColor));
        double top = big - d;
        out.sk.line(big / 2, top, big + kPad, top, kRuleColor);
        out.sk.text(big + 2 * kPad, top + 0.3 * kFont, it.label, TextAnchor::Start, c.textColor, svg::kWhite);
        out.itemValues.push_back(it.value);
    }
    return out;
}

Item mergeItems(const Item& a, const Item& b)
{
    Item m;
    m.label = a.label + ", " + b.label;
    m.color = a.color ? a.color : b.color;
    m.scale = a.scale * b.scale;
    m.rotation = a.rotation + b.rotation;
    m.value = a.value;
    m.posX = a.posX;
    m.posY = a.posY;
    return m;
}

SubLegend matrixLegend(const GroupCtx& c, const std::vector<Item>& rows, const std::vector<Item>& cols,
                       bool semantic, TextLayout text, Direction dir)
{
    // Vertical: primary values down the rows. Horizontal: transposed.
    const bool vertical = dir == Direction::Vertical;
    const auto& down = vertical ? rows : cols;
    const auto& across = vertical ? cols : rows;
    const double s = c.swatch;
    const double cellSide = s + kGap;
    double rowLabel = 0, colLabel = 0;
    for (const auto& it : down)
        rowLabel = std::max(rowLabel, labelWidth(it.label));
    for (const auto& it : across)
        colLabel = std::max(colLabel, labelWidth(it.label));
    const double colPitch = std::max(cellSide, colLabel + kGap);
    const bool labelsLeft = text == TextLayout::AccompanyingSide;
    const double gridX = labelsLeft ? rowLabel + kPad : 0;
    const double gridY = kFont + 2;

    SubLegend out;
    for (std::size_t j = 0; j < across.size(); ++j)
        out.sk.text(gridX + colPitch * (double(j) + 0.5), kFont * 0.8, across[j].label, TextAnchor::Middle,
                    c.textColor, svg::kWhite);
    for (std::size_t i = 0; i < down.size(); ++i) {
        double cy = gridY + cellSide * (double(i) + 0.5);
        for (std::size_t j = 0; j < across.size(); ++j) {
            Item m = vertical ? mergeItems(down[i], across[j]) : mergeItems(across[j], down[i]);
            out.sk.add(swatchShape(c, semantic, m, gridX + colPitch * (double(j) + 0.5), cy, s));
            out.sk.swatchColors.push_back(m.color.value_or(c.repColor));
        }
        if (labelsLeft)
            out.sk.text(rowLabel, cy + 0.3 * kFont, down[i].label, TextAnchor::End, c.textColor, svg::kWhite);
        else
            out.sk.text(gridX + colPitch * double(across.size()) + kPad, cy + 0.3 * kFont, down[i].label,
                        TextAnchor::Start, c.textColor, svg::kWhite);
    }
    for (const auto& it : rows)
        out.itemValues.push_back(it.value);
    return out;
}

// Effective layout for a secondary group: its first admissible choices.
SubLegend groupLegend(const GroupCtx& c, const LegendSpec& spec, bool primary, const std::string& gradientId)
{
    SymbolLayout layout = spec.symbolLayout;
    SymbolType type = spec.symbolType == SymbolType::DataEncoded ? SymbolType::NonSemantic : spec.symbolType;
    TextLayout text = spec.textLayout;
    if (!primary) {
        DesignSpace own({*c.group});
        auto layouts = own.symbolLayouts();
        if (std::find(layouts.begin(), layouts.end(), layout) == layouts.end())
            layout = layouts.front();
        auto types = own.symbolTypes(layout);
        if (std::find(types.begin(), types.end(), type) == types.end())
            type = types.front();
        auto texts = own.textLayouts(layout, MultiLayout::Single);
        if (std::find(texts.begin(), texts.end(), text) == texts.end())
            text = texts.front();
    }
    const bool semantic = type == SymbolType::Semantic;
    switch (layout) {
    case SymbolLayout::Continuous: return continuousLegend(c, spec.direction, gradientId);
    case SymbolLayout::Connected: return connectedLegend(c, spec.direction);
    case SymbolLayout::Nested: return nestedLegend(c, semantic);
    default:
        return discreteLegend(c, groupItems(c), semantic, text, spec.direction,
                              layout == SymbolLayout::DiscreteNonuniform);
    }
}

RenderedLegend labelLegend(const GroupCtx& c, const ChartDocument& doc)
{
    RenderedLegend out;
    out.anchored = false;
    out.semantic = true;
    Sketch sk;
    const auto& p = c.group->primary();
    for (std::size_t k = 0; k < p.colors.size(); ++k) {
        std::size_t member = p.elementIds.size();
        for (std::size_t i = 0; i < p.elementIds.size(); ++i)
            if (std::size_t(p.elementValues[i]) == k) {
                member = i;
                break;
            }
        if (member == p.elementIds.size())
            continue;
        const Box b = svg::boundingBox(*doc.scene.find(p.elementIds[member]));
        const std::string label = categoryLabel(k);
        const double w = labelWidth(label);
        const double cy = b.center().y;
        double x = b.xMax + 2 * kPad;
        bool left = x + w + 2 > doc.scene.width && b.xMin - 2 * kPad - w - 2 >= 0;
        if (left)
            x = b.xMin - 2 * kPad - w;
        const Box back{x - 2, cy - kFont / 2 - 2, x + w + 2, cy + kFont / 2 + 2};
        sk.line(left ? b.xMin : b.xMax, cy, left ? back.xMax : back.xMin, cy, kRuleColor);
        sk.rect(back.xMin, back.yMin, back.width(), back.height(), svg::kWhite);
        sk.text(x, cy + 0.3 * kFont, label, TextAnchor::Start, c.textColor, svg::kWhite);
        out.regions.push_back(back);
        Color col = p.colors[k];
        col.alpha = 1.0;
        out.swatchColors.push_back(col);
        out.itemValues.push_back(double(k));
    }
    out.elements = std::move(sk.els);
    out.texts = std::move(sk.texts);
    if (!out.elements.empty()) {
        Box b = svg::boundingBox(out.elements);
        out.width = b.width();
        out.height = b.height();
    }
    return out;
}

} // namespace

std::string legendIdPrefix(const svg::SceneGraph& scene)
{
    std::string prefix = "lg-legend";
    auto clash = [&](const std::string& p) {
        for (const auto& el : scene.elements) {
            if (el.id.rfind(p, 0) == 0)
                return true;
            if (el.fillGradient && el.fillGradient->id.rfind(p, 0) == 0)
                return true;
        }
        return false;
    };
    while (clash(prefix))
        prefix += "-x";
    return prefix;
}

RenderedLegend renderLegend(const LegendSpec& spec, const ChartDocument& doc)
{
    auto groups = channelGroups(doc);
    DesignSpace space(groups);
    return renderLegend(spec, doc, space, groups);
}

RenderedLegend renderLegend(const LegendSpec& spec, const ChartDocument& doc, const DesignSpace& space,
                            const std::vector<ChannelGroup>& groups)
{
    if (!space.admissible(spec))
        fail(ErrorCode::InadmissibleSpec, std::string("legend spec is not admissible: ") + name(spec.symbolLayout) +
                                              "/" + name(spec.symbolType) + "/" + name(spec.textLayout) + "/" +
                                              name(spec.multiLayout));
    const std::string prefix = legendIdPrefix(doc.scene);
    auto finishIds = [&](RenderedLegend& r) {
        for (std::size_t i = 0; i < r.elements.size(); ++i) {
            r.elements[i].id = prefix + "-" + std::to_string(i);
            if (r.elements[i].fillGradient)
                r.elements[i].fillGradient->id = prefix + "-grad-" + std::to_string(i);
        }
    };

    const GroupCtx primary = makeCtx(doc, groups.front(), spec);
    if (spec.textLayout == TextLayout::AsLabel) {
        RenderedLegend r = labelLegend(primary, doc);
        finishIds(r);
        return r;
    }

    SubLegend main;
    const bool semantic = spec.symbolType == SymbolType::Semantic;
    if (spec.multiLayout == MultiLayout::Matrix || spec.multiLayout == MultiLayout::Flattened) {
        const GroupCtx second = makeCtx(doc, groups[1], spec);
        auto rows = groupItems(primary);
        auto cols = groupItems(second);
        if (spec.multiLayout == MultiLayout::Matrix) {
            main = matrixLegend(primary, rows, cols, semantic, spec.textLayout, spec.direction);
        } else {
            std::vector<Item> flat;
            for (const auto& a : rows)
                for (const auto& b : cols)
                    flat.push_back(mergeItems(a, b));
            main = discreteLegend(primary, flat, semantic, spec.textLayout, spec.direction,
                                  spec.symbolLayout == SymbolLayout::DiscreteNonuniform);
            main.itemValues.clear();
            for (const auto& a : rows)
                main.itemValues.push_back(a.value);
        }
    } else {
        main = groupLegend(primary, spec, true, "g");
        // Vertical legends stack sub-legends side by side when parallel.
        const bool alongDirection = spec.multiLayout == MultiLayout::Combined;
        const bool stackDown = (spec.direction == Direction::Vertical) == alongDirection;
        for (std::size_t g = 1; g < groups.size(); ++g) {
            SubLegend sub = groupLegend(makeCtx(doc, groups[g], spec), spec, false, "g");
            Box a = main.sk.extent(), b = sub.sk.extent();
            if (stackDown)
                main.sk.append(sub.sk, a.xMin - b.xMin, a.yMax + 2 * kGap - b.yMin);
            else
                main.sk.append(sub.sk, a.xMax + 2 * kGap - b.xMin, a.yMin - b.yMin);
        }
    }

    RenderedLegend out;
    out.semantic = semantic;
    out.continuous = main.continuous;
    out.sampledColors = main.sampled;
    out.itemValues = main.itemValues;
    out.swatchColors = main.sk.swatchColors;

    Box ext = main.sk.extent();
    const double w = std::ceil(ext.width() + 2 * kPad);
    const double h = std::ceil(ext.height() + 2 * kPad);
    const double dx = (w - ext.width()) / 2 - ext.xMin;
    const double dy = (h - ext.height()) / 2 - ext.yMin;

    Sketch panel;
    panel.rect(0.5, 0.5, w - 1, h - 1, svg::kWhite, kBorderColor, 1.0);
    panel.append(main.sk, dx, dy);
    out.elements = std::move(panel.els);
    out.texts = std::move(panel.texts);
    out.width = w;
    out.height = h;
    out.regions = {Box{0, 0, w, h}};
    finishIds(out);
    return out;
}

svg::Box placedBox(const RenderedLegend& legend, const LegendSpec& spec)
{
    if (!legend.anchored) {
        if (legend.elements.empty())
            return {0, 0, 0, 0};
        return svg::boundingBox(legend.elements);
    }
    return {spec.anchorX, spec.anchorY, spec.anchorX + legend.width, spec.anchorY + legend.height};
}

CompositeDocument composite(const ChartDocument& doc, const RenderedLegend& legend, const LegendSpec& spec)
{
    CompositeDocument out;
    out.scene = doc.scene;
    out.spec = spec;
    out.legendGroupId = legendIdPrefix(doc.scene);
    out.legend = legend.elements;
    if (legend.anchored)
        for (auto& el : out.legend)
            shiftElement(el, spec.anchorX, spec.anchorY);
    out.legendBox = placedBox(legend, spec);
    const Box canvas{0, 0, doc.scene.width, doc.scene.height};
    out.combinedBox = legend.elements.empty() ? canvas : canvas.united(out.legendBox);
    return out;
}

std::string CompositeDocument::toSvg() const
{
    const Box canvas{0, 0, scene.width, scene.height};
    std::optional<svg::Viewport> vp;
    if (!(combinedBox == canvas))
        vp = svg::Viewport{combinedBox.xMin, combinedBox.yMin, combinedBox.width(), combinedBox.height()};
    return svg::writeSvg(scene, legend, legendGroupId, vp);
}

} // namespace legendgen::legend
