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

#include "graphts/series.hpp"

#include <cmath>
#include <string>

#include "graphts/error.hpp"

namespace graphts {

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::kHealthy: return "H";
    case ClassLabel::kMyopathy: return "M";
    case ClassLabel::kNeuropathy: return "N";
  }
  return "?";
}

ClassLabel parse_label(std::string_view text) {
  if (text == "H") return ClassLabel::kHealthy;
  if (text == "M") return ClassLabel::kMyopathy;
  if (text == "N") return ClassLabel::kNeuropathy;
  throw Error(ErrorCode::kUnknownLabel,
              "label '" + std::string(text) + "' is not one of H, M, N");
}

void validate(const TimeSeries& ts) {
  if (ts.samples.empty()) {
    throw Error(ErrorCode::kEmptyInput, "series '" + ts.source_id + "' is empty");
  }
  if (!(ts.sampling_rate > 0.0) || !std::isfinite(ts.sampling_rate)) {
    throw Error(ErrorCode::kInvalidParams,
                "sampling rate must be positive, got " +
                    std::to_string(ts.sampling_rate));
  }
  for (std::size_t i = 0; i < ts.samples.size(); ++i) {
    if (!std::isfinite(ts.samples[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "sample " + std::to_string(i) + " of '" + ts.source_id +
                      "' is not finite");
    }
  }
}

}  // namespace graphts
