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

#include "service/records.hpp"

#include "error.hpp"
#include "legend/render.hpp"

namespace legendgen::service {

Json extractionReport(const legend::ChartDocument& doc)
{
    const auto& ex = doc.extraction;
    Json symbols = Json::array();
    for (const auto& s : ex.symbols)
        symbols.push_back({{"id", s.id},
                           {"kind", svg::kindName(s.kind)},
                           {"stage", extract::stageName(s.stage)},
                           {"representative", s.representativeId},
                           {"members", s.memberIds.size()}});
    Json channels = Json::array();
    for (const auto& c : ex.channels) {
        Json j{{"id", c.id},
               {"symbol", c.symbolId},
               {"kind", extract::channelKindName(c.kind)},
               {"classification", extract::classificationName(c.classification)},
               {"members", c.elementIds.size()}};
        if (c.kind == extract::ChannelKind::Color) {
            Json colors = Json::array();
            for (const auto& col : c.colors)
                colors.push_back(col.hex());
            j["colors"] = colors;
        } else {
            j["range"] = {c.minValue, c.maxValue};
        }
        channels.push_back(j);
    }
    Json groups = Json::array();
    for (const auto& g : ex.channelGroups) {
        Json ids = Json::array();
        for (auto i : g)
            ids.push_back(ex.channels[i].id);
        groups.push_back(ids);
    }
    return {{"document_id", doc.id},
            {"width", doc.scene.width},
            {"height", doc.scene.height},
            {"symbols", symbols},
            {"channels", channels},
            {"groups", groups}};
}

Json specToJson(const legend::LegendSpec& spec)
{
    return Json::parse(legend::serializeSpec(spec));
}

legend::LegendSpec specFromJson(const Json& j)
{
    if (!j.is_object())
        fail(ErrorCode::InvalidArgument, "spec must be a JSON object");
    return legend::parseSpec(j.dump());
}

Json metricsToJson(const metrics::MetricVector& x)
{
    return Json::parse(metrics::serializeMetrics(x));
}

Json candidateRecord(const legend::ChartDocument& doc, const search::SearchProblem& problem,
                     const search::Candidate& c, bool preview)
{
    Json j{{"spec", specToJson(c.spec)}, {"metrics", metricsToJson(c.metrics)}, {"score", c.score}};
    if (preview) {
        auto rendered = legend::renderLegend(c.spec, doc, problem.space(), legend::channelGroups(doc));
        j["svg"] = legend::composite(doc, rendered, c.spec).toSvg();
    }
    return j;
}

Json errorRecord(ErrorCode code, const std::string& message)
{
    return {{"error", {{"code", errorCodeName(code)}, {"status", int(code)}, {"message", message}}}};
}

} // namespace legendgen::service
