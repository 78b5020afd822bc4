// Copyright 2026 The GraphTS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphts {

enum class ClassLabel { kHealthy = 0, kMyopathy = 1, kNeuropathy = 2 };

inline constexpr int kClassCount = 3;

// "H", "M" or "N".
std::string_view to_string(ClassLabel label);
// Throws Error(kUnknownLabel) for anything outside H/M/N.
ClassLabel parse_label(std::string_view text);

// Uniformly sampled signal; the time coordinate of sample i is i.
struct TimeSeries {
  std::vector<double> samples;
  double sampling_rate = 0.0;
  std::string source_id;
  std::optional<ClassLabel> label;

  std::size_t size() const { return samples.size(); }
};

// Throws kEmptyInput / kInvalidParams / kNonFiniteValue on a broken series.
void validate(const TimeSeries& ts);

}  // namespace graphts
