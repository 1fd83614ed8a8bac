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

#include "svg/scene.hpp"

#include <optional>
#include <span>
#include <string>

namespace legendgen::svg {

/// Visible document rectangle written as width/height plus viewBox.
struct Viewport {
    double x = 0, y = 0, width = 0, height = 0;
};

/// Serializes a flat scene as standalone SVG. Each element carries its
/// composed transform as a matrix. When `overlay` is non-empty it is written
/// after the scene inside <g id="overlayGroupId">. Output is deterministic.
std::string writeSvg(const SceneGraph& scene, std::span<const VisualElement> overlay = {},
                     const std::string& overlayGroupId = "overlay",
                     const std::optional<Viewport>& viewport = std::nullopt);

/// Serializes a single element (no defs), for fragments and debugging.
std::string writeElement(const VisualElement& el);

std::string escapeXml(const std::string& text);

} // namespace legendgen::svg
