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

#ifndef PRETC_FRICTION_MAP_HPP_
#define PRETC_FRICTION_MAP_HPP_

#include <string>
#include <utility>
#include <vector>

namespace pretc {

enum class Side { kLeft = 0, kRight = 1 };

/// Piecewise-constant, right-continuous spatial friction map, one breakpoint
/// track per vehicle side. Lookups before the first breakpoint return the
/// first value; lookups past the last breakpoint return the last value.
class FrictionMap {
 public:
  using Breakpoints = std::vector<std::pair<double, double>>;  // (pos_m, mu)

  /// Same breakpoints on both sides.
  explicit FrictionMap(Breakpoints both_sides);
  FrictionMap(Breakpoints left, Breakpoints right);

  /// Parses the plain-text map format: one "position_m mu" pair per line,
  /// '#' starts a comment. Positions must be strictly increasing and
  /// 0 < mu <= 1.2, otherwise the file is rejected.
  static FrictionMap load(const std::string& path);
  static FrictionMap parse(const std::string& text, const std::string& origin);

  double mu(Side side, double position_m) const;
  double mu_left(double position_m) const { return mu(Side::kLeft, position_m); }
  double mu_right(double position_m) const { return mu(Side::kRight, position_m); }

  const Breakpoints& breakpoints(Side side) const {
    return side == Side::kLeft ? left_ : right_;
  }

 private:
  static void check(const Breakpoints& bp, const std::string& origin);

  Breakpoints left_;
  Breakpoints right_;
};

}  // namespace pretc

#endif  // PRETC_FRICTION_MAP_HPP_
