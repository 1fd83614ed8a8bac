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

#include "extract/channels.hpp"
#include "svg/scene.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace legendgen::legend {

/// Paint of a mark as first parsed.
struct MemberPaint {
    std::optional<svg::Color> fill;
    std::optional<svg::Color> stroke;
    std::optional<svg::LinearGradient> fillGradient;
};

/// A parsed chart with its extracted encodings.
struct ChartDocument {
    std::string id;
    svg::SceneGraph scene;
    extract::Extraction extraction;
    // Extraction and paints before any retargeting.
    std::vector<extract::EncodingChannel> originalChannels;
    std::map<std::string, MemberPaint> originalPaint;
};

/// 16 hex digits of the FNV-1a 64-bit hash of the text.
std::string documentId(std::string_view text);

/// Parses and extracts. Throws MalformedDocument or NoSymbolsFound.
ChartDocument analyzeChart(std::string_view svgText);

/// Builds a document from an already parsed scene.
ChartDocument analyzeScene(svg::SceneGraph scene, std::string id);

} // namespace legendgen::legend
