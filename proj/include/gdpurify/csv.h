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

#ifndef GDPURIFY_CSV_H
#define GDPURIFY_CSV_H

#include <string>
#include <string_view>

namespace gdpurify {

inline constexpr std::string_view kVersion = "0.1.0";

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

/// First line of every CSV the tools emit; excluded from determinism comparisons.
std::string csv_version_stamp();

}  // namespace gdpurify

#endif
