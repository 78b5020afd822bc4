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

#include <array>
#include <cstdint>

#include "graphts/series.hpp"

namespace graphts {

// Morphology of one class of motor unit action potentials. Each burst is a
// Hann-windowed sinusoid with `phases` half-cycles (a train of alternating
// biphasic lobes) whose peak amplitude and length are drawn uniformly from
// the bands below. Amplitudes are unitless.
struct BurstProfile {
  double amplitude_min = 1.0;
  double amplitude_max = 1.0;
  double length_min_ms = 10.0;
  double length_max_ms = 10.0;
  int phases_min = 2;
  int phases_max = 4;
  double rate_hz = 10.0;  // mean onset rate
  // Share of each inter-onset interval that is exponentially distributed:
  // 1 gives Poisson firing, 0 a fixed period of 1 / rate_hz.
  double irregularity = 1.0;
};

struct SynthParams {
  // Indexed by ClassLabel.
  std::array<BurstProfile, kClassCount> profiles{{
      // Healthy: moderate amplitude and length, four or five phases,
      // regular firing.
      {0.8, 1.6, 8.0, 14.0, 4, 5, 10.0, 0.2},
      // Myopathy: low amplitude, short, polyphasic, dense near-periodic
      // recruitment.
      {0.15, 0.45, 3.0, 6.0, 5, 8, 100.0, 0.05},
      // Neuropathy: high amplitude, long, polyphasic, sparse.
      {2.2, 4.0, 50.0, 90.0, 5, 8, 5.0, 0.2},
  }};
  double noise_sigma = 0.02;

  // Throws kInvalidParams on non-positive amplitude / length / rate knobs or
  // an irregularity outside [0, 1].
  void validate() const;
};

// Deterministic synthetic EMG: renewal-process burst onsets, per-class burst
// morphology, additive Gaussian baseline noise. All randomness comes from
// Xoshiro256 seeded with mix_seed(seed, label), so the output is a pure
// function of (label, seed, sampling_rate, duration, params).
TimeSeries synthesize_emg(ClassLabel label, std::uint64_t seed,
                          double sampling_rate, double duration_s,
                          const SynthParams& params = {});

std::uint64_t mix_seed(std::uint64_t seed, ClassLabel label);

}  // namespace graphts
