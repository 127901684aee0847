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

#ifndef PRETC_CSV_HPP_
#define PRETC_CSV_HPP_

#include <string>
#include <vector>

#include "pretc/scenario.hpp"

namespace pretc {

/// Fixed time-series header. Numeric fields are written with 9 significant
/// digits; identical runs produce byte-identical files.
std::string series_csv(const TimeSeries& series);
void write_series_csv(const TimeSeries& series, const std::string& path);

std::string metrics_csv(const std::vector<MetricsRow>& rows);
void write_metrics_csv(const std::vector<MetricsRow>& rows,
                       const std::string& path);

}  // namespace pretc

#endif  // PRETC_CSV_HPP_
