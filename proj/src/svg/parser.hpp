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

#include <string_view>

namespace legendgen::svg {

/// Parses an SVG document into a flat scene graph in paint order.
///
/// Group transforms and paint attributes are composed down into each element.
/// Supported: rect, circle, ellipse, line, polyline/polygon (as paths), path,
/// text, use, g, and linearGradient fills (resolved to their mean color for
/// extraction, kept for rendering). Unsupported content (images, filters,
/// masks, unknown colors) is skipped and recorded in `warnings`.
///
/// Throws MalformedDocument when the text is not XML or the root is not an
/// <svg> with a usable size.
SceneGraph parseSvg(std::string_view text);

} // namespace legendgen::svg
