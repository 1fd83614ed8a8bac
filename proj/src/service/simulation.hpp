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

#include "feedback/feedback.hpp"

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace legendgen::service {

/// Parsed charts with their search problems; addresses stay stable.
class ChartSet {
public:
    void add(std::string name, std::string_view svgText);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<const search::SearchProblem*>& problems() const { return problems_; }

private:
    std::vector<std::string> names_;
    std::vector<std::unique_ptr<legend::ChartDocument>> docs_;
    std::vector<std::unique_ptr<search::SearchProblem>> owned_;
    std::vector<const search::SearchProblem*> problems_;
};

/// Every *.svg in dir, by file name. Throws IoError, or NotFound when the
/// directory holds no charts.
ChartSet loadChartDir(const std::filesystem::path& dir);

struct SimulationConfig {
    feedback::SessionConfig session;
    std::uint64_t modelSeed = 0;
    std::vector<int> checkpoints{0, 10, 25, 50};
    std::ostream* log = nullptr; // session log records
};

struct SimulationResult {
    std::vector<feedback::RoundRecord> rounds;
    std::vector<std::pair<int, double>> alignment; // (tuples, accuracy) per checkpoint
    double initialAlignment = 0;
    double finalAlignment = 0;
    int tuples = 0;
    model::QualityModel model;
};

/// One simulated-user session. A checkpoint past the number of tuples the
/// session produced reports the final model.
SimulationResult simulate(const ChartSet& training, const ChartSet& heldout, const SimulationConfig& config);

} // namespace legendgen::service
