// Copyright 2026 The pretc Authors
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

#include "pretc/friction_map.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pretc {

FrictionMap::FrictionMap(Breakpoints both_sides)
    : left_(both_sides), right_(std::move(both_sides)) {
  check(left_, "friction map");
}

FrictionMap::FrictionMap(Breakpoints left, Breakpoints right)
    : left_(std::move(left)), right_(std::move(right)) {
  check(left_, "friction map (left)");
  check(right_, "friction map (right)");
}

void FrictionMap::check(const Breakpoints& bp, const std::string& origin) {
  if (bp.empty()) {
    throw std::invalid_argument(origin + ": map must have at least one entry");
  }
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (!std::isfinite(bp[i].first) || !std::isfinite(bp[i].second)) {
      throw std::invalid_argument(origin + ": non-finite entry");
    }
    if (!(bp[i].second > 0.0 && bp[i].second <= 1.2)) {
      throw std::invalid_argument(origin + ": mu must lie in (0, 1.2]");
    }
    if (i > 0 && !(bp[i].first > bp[i - 1].first)) {
      throw std::invalid_argument(origin +
                                  ": positions must be strictly increasing");
    }
  }
}

FrictionMap FrictionMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("friction map: cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

FrictionMap FrictionMap::parse(const std::string& text,
                               const std::string& origin) {
  Breakpoints bp;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // strtod gives correctly rounded decimal parsing; reject trailing junk.
    const char* s = line.c_str();
    char* end = nullptr;
    errno = 0;
    const double pos = std::strtod(s, &end);
    if (end == s) {
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (blank) continue;
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected 'position_m mu'");
    }
    const char* s2 = end;
    const double mu = std::strtod(s2, &end);
    if (end == s2) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": missing mu value");
    }
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    if (*end != '\0') {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": trailing characters");
    }
    if (errno == ERANGE || !std::isfinite(pos) || !std::isfinite(mu)) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": value out of range");
    }
    bp.emplace_back(pos, mu);
  }
  try {
    return FrictionMap(std::move(bp));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
}

double FrictionMap::mu(Side side, double position_m) const {
  const Breakpoints& bp = side == Side::kLeft ? left_ : right_;
  // Last breakpoint with position <= query; right-continuous.
  auto it = std::upper_bound(
      bp.begin(), bp.end(), position_m,
      [](double v, const std::pair<double, double>& e) { return v < e.first; });
  if (it == bp.begin()) return bp.front().second;
  return std::prev(it)->second;
}

}  // namespace pretc
