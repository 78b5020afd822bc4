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

#include "graphts/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "graphts/error.hpp"
#include "graphts/random.hpp"
#include "graphts/synth.hpp"

namespace graphts {
namespace {

TimeSeries series(std::vector<double> v, double rate = 4000.0) {
  TimeSeries ts;
  ts.samples = std::move(v);
  ts.sampling_rate = rate;
  ts.source_id = "t";
  return ts;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(Rectify, AbsoluteValueAndIdempotence) {
  auto ts = series({-1, 2, -3});
  ts.label = ClassLabel::kMyopathy;
  const auto r = rectify(ts);
  EXPECT_EQ(r.samples, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(r.label, ts.label);
  EXPECT_EQ(r.sampling_rate, ts.sampling_rate);
  EXPECT_EQ(rectify(r).samples, r.samples);
}

TEST(MovingAverage, TruncatedEdges) {
  const auto out = moving_average(series({0, 3, 0, 3, 0}), 3);
  const std::vector<double> want{1.5, 1.0, 2.0, 1.0, 1.5};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(out.samples[i], want[i], 1e-15);
  EXPECT_EQ(moving_average(series({4, -1, 7}), 1).samples, (std::vector<double>{4, -1, 7}));
  const auto flat = moving_average(series(std::vector<double>(50, 2.5)), 11);
  for (double v : flat.samples) EXPECT_NEAR(v, 2.5, 1e-12);
}

TEST(MovingAverage, RejectsEvenOrZeroLength) {
  EXPECT_EQ(code_of([] { moving_average(series({1, 2, 3}), 2); }), ErrorCode::kInvalidWindowLen);
  EXPECT_EQ(code_of([] { moving_average(series({1, 2, 3}), 0); }), ErrorCode::kInvalidWindowLen);
}

// Reference coefficients from scipy.signal.butter(order, fc, fs=fs).
struct ButterCase {
  int order;
  double fc, fs;
  std::vector<double> b, a;
};

TEST(Butterworth, MatchesReferenceDesigns) {
  const std::vector<ButterCase> cases = {
      {2, 50, 4000,
       {0.0014603163055277345, 0.002920632611055469, 0.0014603163055277345},
       {1.0, -1.8890330793945245, 0.8948743446166354}},
      {4, 100, 1000,
       {0.004824343357716228, 0.019297373430864913, 0.02894606014629737,
        0.019297373430864913, 0.004824343357716228},
       {1.0, -2.369513007182038, 2.313988414415881, -1.054665405878568,
        0.18737949236818502}},
      {1, 10, 100, {0.24523727525278557, 0.24523727525278557}, {1.0, -0.5095254494944288}},
      {8, 30, 250,
       {8.218427107298559e-05, 0.0006574741685838847, 0.0023011595900435966,
        0.004602319180087193, 0.005752898975108991, 0.004602319180087193,
        0.0023011595900435966, 0.0006574741685838847, 8.218427107298559e-05},
       {1.0, -4.143802958194565, 8.073026010442971, -9.441837794626684, 7.176589681590152,
        -3.60505532173209, 1.163211749572623, -0.21961547662868183, 0.018523282970960172}},
  };
  for (const auto& c : cases) {
    const auto f = butterworth_design(c.order, c.fc, c.fs);
    ASSERT_EQ(f.numerator.size(), c.b.size());
    ASSERT_EQ(f.denominator.size(), c.a.size());
    for (std::size_t i = 0; i < c.b.size(); ++i) {
      EXPECT_NEAR(f.numerator[i], c.b[i], 1e-12 * std::max(1.0, std::abs(c.b[i])));
      EXPECT_NEAR(f.denominator[i], c.a[i], 1e-12 * std::max(1.0, std::abs(c.a[i])));
    }
  }
}

TEST(Butterworth, DcGainCutoffAndStability) {
  for (int order = 1; order <= 8; ++order) {
    const auto f = butterworth_design(order, 50.0, 4000.0);
    double sb = 0.0, sa = 0.0;
    for (double v : f.numerator) sb += v;
    for (double v : f.denominator) sa += v;
    EXPECT_NEAR(sb / sa, 1.0, 1e-9) << "order " << order;
    EXPECT_DOUBLE_EQ(f.denominator[0], 1.0);
    // Expanded polynomials lose digits at high order (scipy shows the same
    // 1.9e-6 drift at order 8).
    const double tol = order <= 6 ? 1e-8 : 1e-5;
    EXPECT_NEAR(magnitude_response(f, 50.0, 4000.0), 1.0 / std::numbers::sqrt2, tol);
    EXPECT_NEAR(magnitude_response(f, 0.0, 4000.0), 1.0, 1e-9);
  }
  // Stability for order 2: the poles of z^2 + a1 z + a2 sit inside the unit circle.
  const auto f = butterworth_design(2, 50.0, 4000.0);
  const std::complex<double> disc =
      std::sqrt(std::complex<double>(f.denominator[1] * f.denominator[1] - 4 * f.denominator[2]));
  EXPECT_LT(std::abs((-f.denominator[1] + disc) / 2.0), 1.0);
  EXPECT_LT(std::abs((-f.denominator[1] - disc) / 2.0), 1.0);
}

TEST(Butterworth, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { butterworth_design(2, 2000.0, 4000.0); }), ErrorCode::kNyquistViolation);
  EXPECT_EQ(code_of([] { butterworth_design(2, 0.0, 4000.0); }), ErrorCode::kNyquistViolation);
  EXPECT_EQ(code_of([] { butterworth_design(0, 50.0, 4000.0); }), ErrorCode::kUnsupportedOrder);
  EXPECT_EQ(code_of([] { butterworth_design(9, 50.0, 4000.0); }), ErrorCode::kUnsupportedOrder);
}

TEST(Lfilter, MatchesReferenceWithInitialState) {
  // scipy.signal.lfilter(b, a, x, zi=[0.1, -0.2]) and lfilter_zi(b, a).
  const auto f = butterworth_design(2, 50.0, 4000.0);
  const std::vector<double> x{1.0, -2.0, 3.5, 0.25, 4.0, -1.0, 0.0, 2.0};
  const std::vector<double> zi{0.1, -0.2};
  const std::vector<double> want{0.10146031630552774,  -0.00833810625302648,
                                 -0.10581503443721514, -0.18475988237662863,
                                 -0.24264383951768143, -0.28243806749188827,
                                 -0.31347847289773556, -0.33796430813478207};
  const auto y = lfilter(f, x, zi);
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(y[i], want[i], 1e-12);
  const auto ss = lfilter_steady_state(f);
  ASSERT_EQ(ss.size(), 2u);
  EXPECT_NEAR(ss[0], 0.9985396836944879, 1e-12);
  EXPECT_NEAR(ss[1], -0.8934140283111217, 1e-12);
}

TEST(Filtfilt, ConstantPassesThrough) {
  const auto f = butterworth_design(2, 50.0, 4000.0);
  const auto out = filtfilt(f, series(std::vector<double>(1000, 5.0)));
  ASSERT_EQ(out.size(), 1000u);
  for (double v : out.samples) EXPECT_NEAR(v, 5.0, 1e-6);
}

TEST(Filtfilt, SineAtCutoffIsHalved) {
  const double fs = 4000.0, fc = 50.0;
  const auto f = butterworth_design(2, fc, fs);
  std::vector<double> x(8000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::sin(2.0 * std::numbers::pi * fc * static_cast<double>(i) / fs);
  }
  const auto y = filtfilt(f, std::span<const double>(x));
  double peak = 0.0;
  for (std::size_t i = x.size() / 4; i < 3 * x.size() / 4; ++i) peak = std::max(peak, std::abs(y[i]));
  EXPECT_NEAR(peak, 0.5, 0.05);
}

TEST(Filtfilt, TimeReversalAndEvenSymmetry) {
  const auto f = butterworth_design(4, 80.0, 4000.0);
  Xoshiro256 rng(4);
  std::vector<double> x(1500);
  for (double& v : x) v = rng.normal();
  const std::vector<double> rev(x.rbegin(), x.rend());
  const auto y = filtfilt(f, std::span<const double>(x));
  const auto yr = filtfilt(f, std::span<const double>(rev));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(yr[i], y[x.size() - 1 - i], 1e-9);

  std::vector<double> pulse(1001, 0.0);
  for (int k = -30; k <= 30; ++k) pulse[static_cast<std::size_t>(500 + k)] = 1.0 - std::abs(k) / 31.0;
  const auto p = filtfilt(f, std::span<const double>(pulse));
  for (std::size_t i = 0; i < pulse.size(); ++i) EXPECT_NEAR(p[i], p[pulse.size() - 1 - i], 1e-9);
}

TEST(Filtfilt, RequiresEnoughSamples) {
  const auto f = butterworth_design(2, 50.0, 4000.0);
  EXPECT_EQ(code_of([&] { filtfilt(f, series(std::vector<double>(8, 1.0))); }),
            ErrorCode::kSeriesTooShort);
  EXPECT_NO_THROW(filtfilt(f, series(std::vector<double>(9, 1.0))));
}

TEST(LinearEnvelope, ConstantAndNonNegativity) {
  const EnvelopeParams params;
  const auto env = linear_envelope(series(std::vector<double>(2000, -3.0)), params);
  for (double v : env.samples) EXPECT_NEAR(v, 3.0, 1e-6);

  Xoshiro256 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(600);
    for (double& v : x) v = rng.normal() * rng.uniform(0.1, 5.0);
    const auto raw = series(x);
    const auto e = linear_envelope(raw, params);
    ASSERT_EQ(e.size(), x.size());
    double mean_e = 0.0, mean_r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      ASSERT_GE(e.samples[i], 0.0);
      mean_e += e.samples[i];
      mean_r += std::abs(x[i]);
    }
    mean_e /= static_cast<double>(x.size());
    mean_r /= static_cast<double>(x.size());
    double var_e = 0.0, var_r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      var_e += (e.samples[i] - mean_e) * (e.samples[i] - mean_e);
      var_r += (std::abs(x[i]) - mean_r) * (std::abs(x[i]) - mean_r);
    }
    EXPECT_LT(var_e, var_r);
  }
}

TEST(LinearEnvelope, BurstPeakStaysInPlace) {
  std::vector<double> x(4000, 0.0);
  for (int k = -40; k <= 40; ++k) {
    const double u = (k + 40) / 80.0;
    x[static_cast<std::size_t>(2000 + k)] =
        (0.5 - 0.5 * std::cos(2 * std::numbers::pi * u)) * std::sin(std::numbers::pi * 5 * u);
  }
  const EnvelopeParams params;
  const auto env = linear_envelope(series(x), params);
  const auto peak = static_cast<std::size_t>(
      std::max_element(env.samples.begin(), env.samples.end()) - env.samples.begin());
  EXPECT_LE(peak > 2000 ? peak - 2000 : 2000 - peak, params.moving_average_len);
}

TEST(EnvelopeParams, Validation) {
  EnvelopeParams p;
  EXPECT_NO_THROW(p.validate(4000.0));
  p.moving_average_len = 100;
  EXPECT_EQ(code_of([&] { p.validate(4000.0); }), ErrorCode::kInvalidWindowLen);
  p = {};
  p.cutoff_hz = 2500.0;
  EXPECT_EQ(code_of([&] { p.validate(4000.0); }), ErrorCode::kNyquistViolation);
  p = {};
  p.filter_order = 12;
  EXPECT_EQ(code_of([&] { p.validate(4000.0); }), ErrorCode::kUnsupportedOrder);
}

TEST(Threshold, QuantileInterpolates) {
  const std::vector<double> v{4, 1, 3, 2, 5};
  EXPECT_DOUBLE_EQ(resolve_threshold(v, Threshold::quantile(0.5)), 3.0);
  EXPECT_DOUBLE_EQ(resolve_threshold(v, Threshold::quantile(0.875)), 4.5);
  EXPECT_DOUBLE_EQ(resolve_threshold(v, Threshold::absolute(0.7)), 0.7);
}

TEST(DetectWindows, SingleSpikeIsCentered) {
  std::vector<double> x(4000, 0.0);
  x[500] = 1.0;
  const auto w = detect_windows(series(x), Threshold::absolute(0.5), 200);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].start_index, 400u);
  EXPECT_EQ(w[0].peak_index, 500u);
  EXPECT_EQ(w[0].samples.size(), 200u);
  EXPECT_EQ(w[0].samples[100], 1.0);
}

TEST(DetectWindows, ZeroSignalHasNoWindows) {
  EXPECT_TRUE(detect_windows(series(std::vector<double>(4000, 0.0)), Threshold::absolute(0.5), 200)
                  .empty());
}

TEST(DetectWindows, HigherPeakSuppressesNeighbor) {
  std::vector<double> x(4000, 0.0);
  x[500] = 1.0;
  x[560] = -0.8;  // rectified
  const auto w = detect_windows(series(x), Threshold::absolute(0.5), 200);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].peak_index, 500u);

  // Equal heights: the lower index wins.
  x[560] = 1.0;
  const auto tie = detect_windows(series(x), Threshold::absolute(0.5), 200);
  ASSERT_EQ(tie.size(), 1u);
  EXPECT_EQ(tie[0].peak_index, 500u);
}

TEST(DetectWindows, ClippedAtBoundsAndSorted) {
  std::vector<double> x(1000, 0.0);
  x[10] = 0.9;
  x[995] = 1.0;
  x[500] = 0.7;
  const auto w = detect_windows(series(x), Threshold::absolute(0.5), 200);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].start_index, 0u);
  EXPECT_EQ(w[1].start_index, 400u);
  EXPECT_EQ(w[2].start_index, 800u);
}

TEST(DetectWindows, WindowTooLong) {
  EXPECT_EQ(code_of([] { detect_windows(series(std::vector<double>(100, 1.0)),
                                        Threshold::absolute(0.5), 101); }),
            ErrorCode::kWindowTooLong);
}

TEST(DetectWindows, NonOverlappingAndContainPeaks) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto ts = synthesize_emg(static_cast<ClassLabel>(seed % 3), seed, 4000.0, 1.0);
    const auto w = detect_windows(ts, Threshold::quantile(0.95), 200);
    for (std::size_t i = 0; i < w.size(); ++i) {
      EXPECT_EQ(w[i].samples.size(), 200u);
      EXPECT_LE(w[i].start_index + 200, ts.size());
      EXPECT_GE(w[i].peak_index, w[i].start_index);
      EXPECT_LT(w[i].peak_index, w[i].start_index + 200);
      EXPECT_EQ(w[i].label, ts.label);
      if (i > 0) EXPECT_LE(w[i - 1].start_index + 200, w[i].start_index);
    }
  }
}

}  // namespace
}  // namespace graphts
