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


// Writes the generated chart corpus under a data directory.

#include "fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace legendgen::fixtures;

namespace {

void write(const fs::path& path, const std::string& text)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

} // namespace

int main(int argc, char** argv)
{
    fs::path root = argc > 1 ? argv[1] : "data";
    try {
        for (const auto& f : labeledCharts())
            write(root / "charts" / "labeled" / (f.name + ".svg"), f.svg);
        for (const auto& f : trainingCharts())
            write(root / "charts" / "train" / (f.name + ".svg"), f.svg);
        for (const auto& f : heldoutCharts())
            write(root / "charts" / "heldout" / (f.name + ".svg"), f.svg);
        write(root / "fixtures" / "mountains.svg", mountainScene());
    } catch (const std::exception& e) {
        std::cerr << "make_fixtures: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
