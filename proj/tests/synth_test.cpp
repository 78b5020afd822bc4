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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "graphts/error.hpp"

namespace graphts {
namespace {

double peak_abs(const TimeSeries& ts) {
  double m = 0.0;
  for (double v : ts.samples) m = std::max(m, std::abs(v));
  return m;
}

// Longest run of samples above `level` in absolute value, allowing gaps of
// up to `gap` samples (zero crossings inside one burst).
std::size_t longest_burst(const TimeSeries& ts, double level, std::size_t gap) {
  std::size_t best = 0, start = 0, last = 0;
  bool open = false;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (std::abs(ts.samples[i]) <= level) continue;
    if (!open || i - last > gap) {
      start = i;
      open = true;
    }
    last = i;
    best = std::max(best, last - start + 1);
  }
  return best;
}

TEST(Synth, LengthLabelAndSourceId) {
  const auto ts = synthesize_emg(ClassLabel::kMyopathy, 7, 4000.0, 1.0);
  EXPECT_EQ(ts.size(), 4000u);
  EXPECT_EQ(ts.label, ClassLabel::kMyopathy);
  EXPECT_EQ(ts.sampling_rate, 4000.0);
  EXPECT_FALSE(ts.source_id.empty());
  for (double v : ts.samples) ASSERT_TRUE(std::isfinite(v));
}

TEST(Synth, PureFunctionOfInputs) {
  const auto a = synthesize_emg(ClassLabel::kHealthy, 3, 4000.0, 0.5);
  const auto b = synthesize_emg(ClassLabel::kHealthy, 3, 4000.0, 0.5);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, synthesize_emg(ClassLabel::kHealthy, 4, 4000.0, 0.5).samples);
  EXPECT_NE(a.samples, synthesize_emg(ClassLabel::kNeuropathy, 3, 4000.0, 0.5).samples);
  EXPECT_NE(mix_seed(3, ClassLabel::kHealthy), mix_seed(3, ClassLabel::kMyopathy));
}

TEST(Synth, NeuropathyIsLargerAndLongerThanMyopathy) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto n = synthesize_emg(ClassLabel::kNeuropathy, seed, 4000.0, 1.0);
    const auto m = synthesize_emg(ClassLabel::kMyopathy, seed, 4000.0, 1.0);
    EXPECT_GT(peak_abs(n), peak_abs(m)) << "seed " << seed;
  }
  SynthParams quiet;
  quiet.noise_sigma = 0.0;
  const auto n = synthesize_emg(ClassLabel::kNeuropathy, 5, 4000.0, 1.0, quiet);
  const auto m = synthesize_emg(ClassLabel::kMyopathy, 5, 4000.0, 1.0, quiet);
  EXPECT_GT(longest_burst(n, 0.05, 8), longest_burst(m, 0.05, 8));
}

TEST(Synth, ZeroRateProfileIsRejected) {
  SynthParams p;
  p.profiles[0].rate_hz = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.profiles[2].irregularity = 1.5;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.profiles[1].amplitude_max = p.profiles[1].amplitude_min / 2;
  EXPECT_THROW(p.validate(), Error);
  EXPECT_THROW(synthesize_emg(ClassLabel::kHealthy, 1, 0.0, 1.0), Error);
}

TEST(Synth, NoiseOnlyWhenNoBurstsFit) {
  SynthParams p;
  p.noise_sigma = 0.0;
  p.profiles[0].rate_hz = 1e-6;
  p.profiles[0].irregularity = 0.0;
  const auto ts = synthesize_emg(ClassLabel::kHealthy, 1, 4000.0, 0.1, p);
  EXPECT_EQ(peak_abs(ts), 0.0);
}

}  // namespace
}  // namespace graphts
