// Copyright 2026 The gdpurify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gdpurify/errors.h"

namespace gdpurify {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::OddCycle:
            return "OddCycle";
        case ErrorCode::DuplicateEdge:
            return "DuplicateEdge";
        case ErrorCode::InvalidParam:
            return "InvalidParam";
        case ErrorCode::BadParam:
            return "BadParam";
        case ErrorCode::BadDistribution:
            return "BadDistribution";
        case ErrorCode::NegativeCoefficient:
            return "NegativeCoefficient";
        case ErrorCode::ZeroSuccess:
            return "ZeroSuccess";
        case ErrorCode::NoFixedPoint:
            return "NoFixedPoint";
        case ErrorCode::BracketError:
            return "BracketError";
        case ErrorCode::EmptyRegion:
            return "EmptyRegion";
        case ErrorCode::TooLarge:
            return "TooLarge";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace gdpurify
