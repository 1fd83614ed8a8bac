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

#include "error.hpp"
#include "legend/document.hpp"
#include "legend/spec.hpp"
#include "model/model.hpp"
#include "search/search.hpp"

#include <json.hpp>

#include <string>

namespace legendgen::service {

using Json = nlohmann::ordered_json;

/// Symbols, channels and channel groups of a parsed chart.
Json extractionReport(const legend::ChartDocument& doc);

/// Spec, metrics, score and (when previews are on) the composited SVG.
Json candidateRecord(const legend::ChartDocument& doc, const search::SearchProblem& problem,
                     const search::Candidate& c, bool preview);

Json errorRecord(ErrorCode code, const std::string& message);

/// Parses a spec from a JSON value; InvalidArgument on bad input.
legend::LegendSpec specFromJson(const Json& j);
Json specToJson(const legend::LegendSpec& spec);
Json metricsToJson(const metrics::MetricVector& x);

} // namespace legendgen::service
