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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heavymax/harness.hpp"

namespace heavymax {

/// Bad configuration input: unknown key, unparsable value or a value the
/// models reject. The message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key/value configuration with namespaced keys, e.g.
///
///   innovation.alpha = 1.0
///   coefficient.matrices = [[[1,1],[0,0]],[[0,0],[1,1]]]
///   experiment.n_grid = [1000, 10000, 100000]
///
/// Matrix and list values are JSON. Lines starting with '#' are comments.
class Config {
 public:
  /// Every known key at its default value.
  Config();

  static Config preset(const std::string& name);
  static std::vector<std::string> preset_names();
  static const std::vector<std::string>& known_keys();

  /// Applies "key = value" lines over the current values.
  void merge_text(std::string_view text, const std::string& origin = "config");
  void merge_file(const std::string& path);
  /// One "key=value" override.
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  /// The resolved key/value pairs in key order.
  std::vector<std::pair<std::string, std::string>> echo() const;

  Scenario scenario() const;
  ExperimentPlan plan() const;

  /// output.dir, else $HEAVYMAX_OUTPUT_DIR, else "heavymax-out".
  std::string output_dir() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace heavymax
