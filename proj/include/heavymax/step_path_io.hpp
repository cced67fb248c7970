/*
 * Copyright 2026 The heavymax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "heavymax/step_path.hpp"

namespace heavymax {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest text that round-trips a double (17 significant digits).
std::string format_double(double v);

/// CSV with header `t,comp1,...,compd`, one row per breakpoint.
std::string to_csv(const StepPath& path);
StepPath from_csv(std::string_view text);

/// JSON object with fields `dim`, `breakpoints`, `values` (values as rows).
std::string to_json(const StepPath& path);
StepPath from_json(std::string_view text);

StepPath read_csv_file(const std::string& filename);
void write_text_file(const std::string& filename, std::string_view contents);

}  // namespace heavymax
