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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphts/series.hpp"

namespace graphts {

// Discrete IIR low-pass, normalized so that a[0] == 1.
struct FilterCoeffs {
  int order = 0;
  double cutoff_hz = 0.0;
  std::vector<double> numerator;    // b
  std::vector<double> denominator;  // a
};

struct EnvelopeParams {
  std::size_t moving_average_len = 101;  // 25 ms at 4 kHz
  int filter_order = 2;
  double cutoff_hz = 50.0;

  // Throws kInvalidWindowLen / kNyquistViolation / kUnsupportedOrder.
  void validate(double sampling_rate) const;
};

struct Window {
  std::string source_id;
  std::size_t start_index = 0;
  std::size_t peak_index = 0;  // absolute index of the triggering peak
  std::vector<double> samples;
  std::optional<ClassLabel> label;
};

// Peak threshold: an absolute amplitude, or a quantile of the rectified
// series (linear interpolation at position (n - 1) * q).
struct Threshold {
  enum class Kind { kAbsolute, kQuantile };
  Kind kind = Kind::kQuantile;
  double value = 0.95;

  static Threshold absolute(double amplitude) {
    return {Kind::kAbsolute, amplitude};
  }
  static Threshold quantile(double q) { return {Kind::kQuantile, q}; }
};

TimeSeries rectify(const TimeSeries& ts);

// Centered mean over `window_len` (odd) samples; the window shrinks to the
// available samples near the ends, so output length equals input length.
TimeSeries moving_average(const TimeSeries& ts, std::size_t window_len);
std::vector<double> moving_average(std::span<const double> x,
                                   std::size_t window_len);

// Low-pass Butterworth by bilinear transform with cutoff pre-warping.
// Order in [1, 8], 0 < cutoff_hz < sampling_rate_hz / 2.
FilterCoeffs butterworth_design(int order, double cutoff_hz,
                                double sampling_rate_hz);

// Complex frequency response magnitude |H(e^{jw})| at `freq_hz`.
double magnitude_response(const FilterCoeffs& coeffs, double freq_hz,
                          double sampling_rate_hz);

// Single causal pass, direct form II transposed, with the given initial
// state (length max(len a, len b) - 1).
std::vector<double> lfilter(const FilterCoeffs& coeffs,
                            std::span<const double> x,
                            std::span<const double> initial_state);

// State that makes lfilter start in steady state for a unit-step input.
std::vector<double> lfilter_steady_state(const FilterCoeffs& coeffs);

// Zero-phase forward-backward filtering. The signal is extended by odd
// reflection of 3 * (filter length - 1) samples at each end and each pass
// starts in steady state. The forward-then-backward result and the
// backward-then-forward result are averaged, which makes the operator
// exactly commute with time reversal. Requires at least
// 3 * max(len a, len b) samples (kSeriesTooShort otherwise).
TimeSeries filtfilt(const FilterCoeffs& coeffs, const TimeSeries& ts);
std::vector<double> filtfilt(const FilterCoeffs& coeffs,
                             std::span<const double> x);

// rectify -> moving_average -> filtfilt(butterworth), clamped at 0.
TimeSeries linear_envelope(const TimeSeries& ts, const EnvelopeParams& params);

double resolve_threshold(std::span<const double> rectified, Threshold t);

// Peak-centered windows on the rectified signal. A local maximum above the
// threshold is a candidate; candidates are accepted greedily by descending
// height (ties: lower index) and any candidate within window_len of an
// accepted peak, or whose window would overlap an accepted one, is
// suppressed. Windows are shifted inward at the series bounds. Output is
// sorted by start index; samples are copied from `ts` itself.
std::vector<Window> detect_windows(const TimeSeries& ts, Threshold threshold,
                                   std::size_t window_len);

}  // namespace graphts
