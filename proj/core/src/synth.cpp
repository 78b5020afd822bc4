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

#include "graphts/synth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "graphts/error.hpp"
#include "graphts/random.hpp"

namespace graphts {

void SynthParams::validate() const {
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const BurstProfile& p = profiles[i];
    const std::string which =
        std::string(to_string(static_cast<ClassLabel>(i)));
    if (!(p.amplitude_min > 0.0) || !(p.amplitude_max >= p.amplitude_min)) {
      throw Error(ErrorCode::kInvalidParams,
                  which + ": amplitude band must be positive and ordered");
    }
    if (!(p.length_min_ms > 0.0) || !(p.length_max_ms >= p.length_min_ms)) {
      throw Error(ErrorCode::kInvalidParams,
                  which + ": burst length band must be positive and ordered");
    }
    if (p.phases_min < 1 || p.phases_max < p.phases_min) {
      throw Error(ErrorCode::kInvalidParams,
                  which + ": phase band must be >= 1 and ordered");
    }
    if (!(p.rate_hz > 0.0)) {
      throw Error(ErrorCode::kInvalidParams, which + ": burst rate must be > 0");
    }
    if (!(p.irregularity >= 0.0 && p.irregularity <= 1.0)) {
      throw Error(ErrorCode::kInvalidParams, which + ": irregularity must be in [0, 1]");
    }
  }
  if (!(noise_sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "noise sigma must be >= 0");
  }
}

std::uint64_t mix_seed(std::uint64_t seed, ClassLabel label) {
  std::uint64_t state =
      seed ^ (0xd1b54a32d192ed03ULL * (static_cast<std::uint64_t>(label) + 1));
  return splitmix64(state);
}

TimeSeries synthesize_emg(ClassLabel label, std::uint64_t seed,
                          double sampling_rate, double duration_s,
                          const SynthParams& params) {
  params.validate();
  if (!(duration_s > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "duration must be > 0");
  }
  if (!(sampling_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "sampling rate must be > 0");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sampling_rate));
  if (n == 0) {
    throw Error(ErrorCode::kInvalidParams, "duration shorter than one sample");
  }

  TimeSeries ts;
  ts.samples.assign(n, 0.0);
  ts.sampling_rate = sampling_rate;
  ts.label = label;
  ts.source_id = "synthetic-" + std::string(to_string(label)) + "-" +
                 std::to_string(seed);

  const BurstProfile& p = params.profiles[static_cast<std::size_t>(label)];
  Xoshiro256 rng(mix_seed(seed, label));

  auto interval = [&] {
    return (1.0 - p.irregularity) / p.rate_hz +
           p.irregularity * rng.exponential(p.rate_hz);
  };
  // First onset uniform within one period so periodic trains are not phase
  // locked to the series start.
  double onset_s = rng.uniform() / p.rate_hz;
  while (onset_s < duration_s) {
    const double amplitude = rng.uniform(p.amplitude_min, p.amplitude_max);
    const double length_s = rng.uniform(p.length_min_ms, p.length_max_ms) / 1000.0;
    const int phases =
        p.phases_min + static_cast<int>(rng.below(
                           static_cast<std::uint64_t>(p.phases_max - p.phases_min + 1)));
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;

    const auto first = static_cast<std::size_t>(std::ceil(onset_s * sampling_rate));
    const double span = length_s * sampling_rate;
    for (std::size_t i = first; i < n; ++i) {
      const double u = (static_cast<double>(i) - onset_s * sampling_rate) / span;
      if (u >= 1.0) break;
      const double hann = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * u);
      ts.samples[i] += sign * amplitude * hann *
                       std::sin(std::numbers::pi * phases * u);
    }
    onset_s += interval();
  }

  for (double& v : ts.samples) v += params.noise_sigma * rng.normal();
  return ts;
}

}  // namespace graphts
