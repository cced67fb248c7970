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

#include "heavymax/step_path_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace heavymax {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const StepPath& path) {
  std::string out = "t";
  for (std::size_t c = 0; c < path.dim(); ++c) out += ",comp" + std::to_string(c + 1);
  out += '\n';
  for (std::size_t i = 0; i < path.pieces(); ++i) {
    out += format_double(path.time(i));
    for (double v : path.value(i)) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& field, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE)
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + field + "'");
  return v;
}

}  // namespace

StepPath from_csv(std::string_view text) {
  std::vector<std::string> lines;
  for (auto& l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    if (!l.empty()) lines.push_back(std::move(l));
  }
  if (lines.empty()) throw ParseError("empty CSV");
  const auto header = split(lines[0], ',');
  if (header.size() < 2 || header[0] != "t") throw ParseError("CSV header must be t,comp1,...");
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c] != "comp" + std::to_string(c))
      throw ParseError("CSV header column " + std::to_string(c + 1) + " must be comp" +
                       std::to_string(c));
  }
  const std::size_t d = header.size() - 1;
  std::vector<double> times, vals;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != d + 1)
      throw ParseError("line " + std::to_string(i + 1) + ": expected " + std::to_string(d + 1) +
                       " fields");
    times.push_back(parse_number(fields[0], i + 1));
    for (std::size_t c = 1; c <= d; ++c) vals.push_back(parse_number(fields[c], i + 1));
  }
  if (times.empty()) throw ParseError("CSV has no rows");
  try {
    return StepPath(d, std::move(times), std::move(vals));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_json(const StepPath& path) {
  // Hand-written so doubles keep 17 significant digits.
  std::string out = "{\"dim\":" + std::to_string(path.dim()) + ",\"breakpoints\":[";
  for (std::size_t i = 0; i < path.pieces(); ++i) {
    if (i) out += ',';
    out += format_double(path.time(i));
  }
  out += "],\"values\":[";
  for (std::size_t i = 0; i < path.pieces(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t c = 0; c < path.dim(); ++c) {
      if (c) out += ',';
      out += format_double(path.value(i, c));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

StepPath from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const std::size_t d = j.at("dim").get<std::size_t>();
    auto times = j.at("breakpoints").get<std::vector<double>>();
    std::vector<double> vals;
    for (const auto& row : j.at("values")) {
      auto r = row.get<std::vector<double>>();
      if (r.size() != d) throw ParseError("JSON value row has wrong dimension");
      vals.insert(vals.end(), r.begin(), r.end());
    }
    return StepPath(d, std::move(times), std::move(vals));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad StepPath JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

StepPath read_csv_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw ParseError("cannot open " + filename);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_csv(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(filename + ": " + e.what());
  }
}

void write_text_file(const std::string& filename, std::string_view contents) {
  std::ofstream out(filename, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + filename);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + filename);
}

}  // namespace heavymax
