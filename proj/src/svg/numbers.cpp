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

#include "svg/numbers.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace legendgen::svg {

std::optional<double> readNumber(std::string_view text, std::size_t& pos)
{
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
        ++pos;
    if (pos >= text.size())
        return std::nullopt;

    // Scan the longest valid number; "1.5.5" reads as 1.5 then .5 as SVG requires.
    std::size_t i = pos;
    if (text[i] == '+' || text[i] == '-')
        ++i;
    bool digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        digits = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            digits = true;
        }
    }
    if (!digits)
        return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-'))
            ++j;
        if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            i = j;
        }
    }
    std::size_t begin = pos;
    if (text[begin] == '+')
        ++begin;
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + i, v);
    if (ec != std::errc() || ptr != text.data() + i)
        return std::nullopt;
    pos = i;
    return v;
}

std::optional<std::vector<double>> parseNumberList(std::string_view text)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
            ++pos;
        if (pos >= text.size())
            break;
        auto v = readNumber(text, pos);
        if (!v)
            return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::optional<double> parseLength(std::string_view text)
{
    std::size_t pos = 0;
    auto v = readNumber(text, pos);
    if (!v)
        return std::nullopt;
    std::string_view rest = text.substr(pos);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back())))
        rest.remove_suffix(1);
    if (rest.empty() || rest == "px")
        return v;
    return std::nullopt;
}

std::string formatNumber(double v)
{
    if (v == 0)
        return "0";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace legendgen::svg
