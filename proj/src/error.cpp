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

#include "error.hpp"

namespace legendgen {

const char* errorCodeName(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MalformedDocument: return "malformed_document";
    case ErrorCode::UnsupportedFeature: return "unsupported_feature";
    case ErrorCode::DegeneratePath: return "degenerate_path";
    case ErrorCode::ZeroArea: return "zero_area";
    case ErrorCode::EmptySelection: return "empty_selection";
    case ErrorCode::NoSymbolsFound: return "no_symbols_found";
    case ErrorCode::TooFewColors: return "too_few_colors";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::RegionOutOfBounds: return "region_out_of_bounds";
    case ErrorCode::NoInk: return "no_ink";
    case ErrorCode::InvalidBoxes: return "invalid_boxes";
    case ErrorCode::InadmissibleSpec: return "inadmissible_spec";
    case ErrorCode::UnknownSelection: return "unknown_selection";
    case ErrorCode::NotAMark: return "not_a_mark";
    case ErrorCode::CardinalityMismatch: return "cardinality_mismatch";
    case ErrorCode::NoAdmissibleSpec: return "no_admissible_spec";
    case ErrorCode::NonFiniteInput: return "non_finite_input";
    case ErrorCode::DivergedUpdate: return "diverged_update";
    case ErrorCode::NoChange: return "no_change";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::VersionConflict: return "version_conflict";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::IoError: return "io_error";
    }
    return "unknown";
}

} // namespace legendgen
