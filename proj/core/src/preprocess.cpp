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
#include <string>

#include "graphts/error.hpp"

namespace graphts {

void EnvelopeParams::validate(double sampling_rate) const {
  if (moving_average_len < 1 || moving_average_len % 2 == 0) {
    throw Error(ErrorCode::kInvalidWindowLen,
                "moving average length must be odd and >= 1, got " +
                    std::to_string(moving_average_len));
  }
  if (filter_order < 1 || filter_order > 8) {
    throw Error(ErrorCode::kUnsupportedOrder,
                "filter order must be in [1, 8], got " +
                    std::to_string(filter_order));
  }
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sampling_rate / 2.0)) {
    throw Error(ErrorCode::kNyquistViolation,
                "cutoff " + std::to_string(cutoff_hz) +
                    " Hz must lie in (0, " + std::to_string(sampling_rate / 2) +
                    ") Hz");
  }
}

TimeSeries rectify(const TimeSeries& ts) {
  TimeSeries out = ts;
  for (double& v : out.samples) v = std::fabs(v);
  return out;
}

std::vector<double> moving_average(std::span<const double> x,
                                   std::size_t window_len) {
  if (window_len < 1 || window_len % 2 == 0) {
    throw Error(ErrorCode::kInvalidWindowLen,
                "window length must be odd and >= 1, got " +
                    std::to_string(window_len));
  }
  const std::size_t n = x.size();
  const std::size_t half = window_len / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += x[j];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

TimeSeries moving_average(const TimeSeries& ts, std::size_t window_len) {
  TimeSeries out = ts;
  out.samples = moving_average(ts.samples, window_len);
  return out;
}

FilterCoeffs butterworth_design(int order, double cutoff_hz,
                                double sampling_rate_hz) {
  if (order < 1 || order > 8) {
    throw Error(ErrorCode::kUnsupportedOrder,
                "order must be in [1, 8], got " + std::to_string(order));
  }
  if (!(sampling_rate_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "sampling rate must be positive");
  }
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sampling_rate_hz / 2.0)) {
    throw Error(ErrorCode::kNyquistViolation,
                "cutoff " + std::to_string(cutoff_hz) + " Hz not below Nyquist " +
                    std::to_string(sampling_rate_hz / 2.0) + " Hz");
  }
  using cd = std::complex<double>;
  const double two_fs = 2.0 * sampling_rate_hz;
  const double warped =
      two_fs * std::tan(std::numbers::pi * cutoff_hz / sampling_rate_hz);

  // Denominator = prod (1 - z_k z^-1) over the mapped analog poles.
  std::vector<cd> poly{cd(1.0, 0.0)};
  for (int k = 0; k < order; ++k) {
    const double theta =
        std::numbers::pi * (2.0 * k + 1.0 + order) / (2.0 * order);
    const cd analog = warped * std::polar(1.0, theta);
    const cd digital = (two_fs + analog) / (two_fs - analog);
    if (std::abs(digital) >= 1.0) {
      throw Error(ErrorCode::kInternal, "designed filter is unstable");
    }
    std::vector<cd> next(poly.size() + 1, cd(0.0, 0.0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= digital * poly[i];
    }
    poly = std::move(next);
  }

  FilterCoeffs c;
  c.order = order;
  c.cutoff_hz = cutoff_hz;
  c.denominator.resize(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) c.denominator[i] = poly[i].real();
  c.denominator[0] = 1.0;

  // All zeros at z = -1: binomial numerator, scaled for unit DC gain.
  c.numerator.assign(static_cast<std::size_t>(order) + 1, 0.0);
  double binom = 1.0;
  for (int i = 0; i <= order; ++i) {
    c.numerator[static_cast<std::size_t>(i)] = binom;
    binom = binom * (order - i) / (i + 1);
  }
  double sum_a = 0.0;
  for (double v : c.denominator) sum_a += v;
  const double gain = sum_a / std::ldexp(1.0, order);
  for (double& v : c.numerator) v *= gain;
  return c;
}

double magnitude_response(const FilterCoeffs& coeffs, double freq_hz,
                          double sampling_rate_hz) {
  using cd = std::complex<double>;
  const double w = 2.0 * std::numbers::pi * freq_hz / sampling_rate_hz;
  auto eval = [&](const std::vector<double>& p) {
    cd acc(0.0, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      acc += p[i] * std::polar(1.0, -w * static_cast<double>(i));
    }
    return acc;
  };
  return std::abs(eval(coeffs.numerator) / eval(coeffs.denominator));
}

namespace {

std::size_t filter_length(const FilterCoeffs& c) {
  return std::max(c.numerator.size(), c.denominator.size());
}

double coeff(const std::vector<double>& v, std::size_t i) {
  return i < v.size() ? v[i] : 0.0;
}

}  // namespace

std::vector<double> lfilter(const FilterCoeffs& coeffs,
                            std::span<const double> x,
                            std::span<const double> initial_state) {
  const std::size_t len = filter_length(coeffs);
  const auto& b = coeffs.numerator;
  const auto& a = coeffs.denominator;
  std::vector<double> z(initial_state.begin(), initial_state.end());
  z.resize(len - 1, 0.0);
  std::vector<double> y(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double out = coeff(b, 0) * x[t] + (len > 1 ? z[0] : 0.0);
    for (std::size_t i = 0; i + 1 < len; ++i) {
      const double carry = i + 1 < len - 1 ? z[i + 1] : 0.0;
      z[i] = coeff(b, i + 1) * x[t] + carry - coeff(a, i + 1) * out;
    }
    y[t] = out;
  }
  return y;
}

std::vector<double> lfilter_steady_state(const FilterCoeffs& coeffs) {
  const std::size_t len = filter_length(coeffs);
  const auto& b = coeffs.numerator;
  const auto& a = coeffs.denominator;
  double sum_b = 0.0, sum_a = 0.0;
  for (double v : b) sum_b += v;
  for (double v : a) sum_a += v;
  const double dc = sum_b / sum_a;
  std::vector<double> z(len - 1, 0.0);
  // Back-substitute the DF-II-T state equations with x = 1, y = dc.
  double carry = 0.0;
  for (std::size_t i = len - 1; i-- > 0;) {
    z[i] = coeff(b, i + 1) - coeff(a, i + 1) * dc + carry;
    carry = z[i];
  }
  return z;
}

namespace {

std::vector<double> forward_backward(const FilterCoeffs& coeffs,
                                     std::span<const double> x,
                                     std::size_t pad,
                                     const std::vector<double>& zi) {
  const std::size_t n = x.size();
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) {
    ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);
  }

  auto scaled = [&](double first) {
    std::vector<double> s(zi);
    for (double& v : s) v *= first;
    return s;
  };
  std::vector<double> y = lfilter(coeffs, ext, scaled(ext.front()));
  std::reverse(y.begin(), y.end());
  y = lfilter(coeffs, y, scaled(y.front()));
  std::reverse(y.begin(), y.end());
  return {y.begin() + static_cast<std::ptrdiff_t>(pad),
          y.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

}  // namespace

std::vector<double> filtfilt(const FilterCoeffs& coeffs,
                             std::span<const double> x) {
  const std::size_t len = filter_length(coeffs);
  if (x.size() < 3 * len) {
    throw Error(ErrorCode::kSeriesTooShort,
                "filtfilt needs at least " + std::to_string(3 * len) +
                    " samples, got " + std::to_string(x.size()));
  }
  const std::size_t pad = 3 * (len - 1);
  const auto zi = lfilter_steady_state(coeffs);

  std::vector<double> forward = forward_backward(coeffs, x, pad, zi);
  std::vector<double> mirrored(x.rbegin(), x.rend());
  std::vector<double> backward = forward_backward(coeffs, mirrored, pad, zi);
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    forward[i] = 0.5 * (forward[i] + backward[n - 1 - i]);
  }
  return forward;
}

TimeSeries filtfilt(const FilterCoeffs& coeffs, const TimeSeries& ts) {
  TimeSeries out = ts;
  out.samples = filtfilt(coeffs, ts.samples);
  return out;
}

TimeSeries linear_envelope(const TimeSeries& ts, const EnvelopeParams& params) {
  params.validate(ts.sampling_rate);
  const auto coeffs =
      butterworth_design(params.filter_order, params.cutoff_hz, ts.sampling_rate);
  TimeSeries out = moving_average(rectify(ts), params.moving_average_len);
  out.samples = filtfilt(coeffs, out.samples);
  for (double& v : out.samples) v = std::max(v, 0.0);
  return out;
}

double resolve_threshold(std::span<const double> rectified, Threshold t) {
  if (t.kind == Threshold::Kind::kAbsolute) {
    if (!(t.value > 0.0)) {
      throw Error(ErrorCode::kInvalidParams,
                  "absolute threshold must be > 0");
    }
    return t.value;
  }
  if (!(t.value >= 0.0 && t.value <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "threshold quantile must be in [0, 1]");
  }
  if (rectified.empty()) return 0.0;
  std::vector<double> sorted(rectified.begin(), rectified.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = t.value * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<Window> detect_windows(const TimeSeries& ts, Threshold threshold,
                                   std::size_t window_len) {
  const std::size_t n = ts.samples.size();
  if (window_len == 0 || window_len > n) {
    throw Error(ErrorCode::kWindowTooLong,
                "window length " + std::to_string(window_len) +
                    " does not fit a series of " + std::to_string(n) +
                    " samples");
  }
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = std::fabs(ts.samples[i]);
  const double level = resolve_threshold(r, threshold);

  // Local maxima; a plateau reports its first sample.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(r[i] > level)) continue;
    const bool rises = i == 0 || r[i] > r[i - 1];
    const bool holds = i + 1 == n || r[i] >= r[i + 1];
    if (rises && holds) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });

  auto start_for = [&](std::size_t peak) {
    const std::size_t half = window_len / 2;
    std::size_t start = peak >= half ? peak - half : 0;
    return std::min(start, n - window_len);
  };

  std::vector<Window> accepted;
  for (std::size_t peak : candidates) {
    const std::size_t start = start_for(peak);
    bool clash = false;
    for (const Window& w : accepted) {
      const std::size_t gap =
          peak > w.peak_index ? peak - w.peak_index : w.peak_index - peak;
      const bool overlaps = start < w.start_index + window_len &&
                            w.start_index < start + window_len;
      if (gap < window_len || overlaps) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    Window w;
    w.source_id = ts.source_id;
    w.start_index = start;
    w.peak_index = peak;
    w.label = ts.label;
    w.samples.assign(ts.samples.begin() + static_cast<std::ptrdiff_t>(start),
                     ts.samples.begin() +
                         static_cast<std::ptrdiff_t>(start + window_len));
    accepted.push_back(std::move(w));
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Window& a, const Window& b) {
              return a.start_index < b.start_index;
            });
  return accepted;
}

}  // namespace graphts
