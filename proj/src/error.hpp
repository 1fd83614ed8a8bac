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

#include <stdexcept>
#include <string>

namespace legendgen {

/// Stable error codes. The numeric values are part of the C API and the
/// service wire format; append only.
enum class ErrorCode {
    MalformedDocument = 1,
    UnsupportedFeature = 2,
    DegeneratePath = 3,
    ZeroArea = 4,
    EmptySelection = 5,
    NoSymbolsFound = 6,
    TooFewColors = 7,
    LengthMismatch = 8,
    RegionOutOfBounds = 9,
    NoInk = 10,
    InvalidBoxes = 11,
    InadmissibleSpec = 12,
    UnknownSelection = 13,
    NotAMark = 14,
    CardinalityMismatch = 15,
    NoAdmissibleSpec = 16,
    NonFiniteInput = 17,
    DivergedUpdate = 18,
    NoChange = 19,
    InvalidArgument = 20,
    VersionConflict = 21,
    NotFound = 22,
    IoError = 23,
};

const char* errorCodeName(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message)
{
    throw Error(code, message);
}

} // namespace legendgen
