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

#include "legend/document.hpp"

#include "svg/parser.hpp"

#include <cstdint>
#include <cstdio>

namespace legendgen::legend {

std::string documentId(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ChartDocument analyzeScene(svg::SceneGraph scene, std::string id)
{
    ChartDocument doc;
    doc.id = std::move(id);
    doc.scene = std::move(scene);
    doc.extraction = extract::extractEncodings(doc.scene);
    doc.originalChannels = doc.extraction.channels;
    for (const auto& sym : doc.extraction.symbols)
        for (const auto& mid : sym.memberIds) {
            const auto* el = doc.scene.find(mid);
            doc.originalPaint[mid] = {el->fill, el->stroke, el->fillGradient};
        }
    return doc;
}

ChartDocument analyzeChart(std::string_view svgText)
{
    return analyzeScene(svg::parseSvg(svgText), documentId(svgText));
}

} // namespace legendgen::legend
