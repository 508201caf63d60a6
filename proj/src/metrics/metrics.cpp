// Copyright 2026 The GSC Authors.
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


#include "metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "common/error.hpp"

namespace gsc::metrics {

double Nmse(std::span<const double> x, std::span<const double> x_hat) {
  if (x.size() != x_hat.size()) {
    Fail(ErrorCode::kDimensionMismatch, "nmse: lengths " + std::to_string(x.size()) +
                                            " and " + std::to_string(x_hat.size()));
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = x[i] - x_hat[i];
    num += e * e;
    den += x[i] * x[i];
  }
  if (den == 0.0) Fail(ErrorCode::kInvalidArgument, "nmse: reference has zero norm");
  return num / den;
}

double KlDivergenceHist(std::span<const double> samples_p,
                        std::span<const double> samples_q, int bins, double epsilon) {
  if (samples_p.empty() || samples_q.empty()) {
    Fail(ErrorCode::kInvalidArgument, "kl: empty sample set");
  }
  if (bins < 2) Fail(ErrorCode::kInvalidArgument, "kl: need at least 2 bins");
  if (!(epsilon >= 0.0)) Fail(ErrorCode::kInvalidArgument, "kl: epsilon must be >= 0");

  double lo = samples_p[0];
  double hi = samples_p[0];
  for (auto s : {samples_p, samples_q}) {
    for (double v : s) {
      if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "kl: non-finite sample");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double width = (hi - lo) / bins;
  auto histogram = [&](std::span<const double> s) {
    std::vector<double> h(bins, 0.0);
    for (double v : s) {
      int b = width > 0 ? static_cast<int>((v - lo) / width) : 0;
      h[std::clamp(b, 0, bins - 1)] += 1.0;
    }
    const double norm = 1.0 + bins * epsilon;
    for (auto& c : h) c = (c / static_cast<double>(s.size()) + epsilon) / norm;
    return h;
  };
  const auto p = histogram(samples_p);
  const auto q = histogram(samples_q);
  double kl = 0.0;
  for (int i = 0; i < bins; ++i) {
    if (p[i] > 0.0) kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(kl, 0.0);
}

namespace {

std::vector<std::uint32_t> CodePoints(std::string_view s) {
  std::vector<std::uint32_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    bool ok = len > 0 && i + len <= s.size();
    for (int t = 1; ok && t < len; ++t) {
      ok = (static_cast<unsigned char>(s[i + t]) & 0xC0) == 0x80;
    }
    if (!ok) {
      out.push_back(0x110000u + c);  // outside the code point range
      ++i;
      continue;
    }
    std::uint32_t cp = len == 1 ? c : c & (0x7F >> len);
    for (int t = 1; t < len; ++t) cp = (cp << 6) | (static_cast<unsigned char>(s[i + t]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

}  // namespace

double CharacterErrorRate(std::string_view reference, std::string_view hypothesis) {
  const auto r = CodePoints(reference);
  const auto h = CodePoints(hypothesis);
  if (r.empty()) return h.empty() ? 0.0 : 1.0;
  std::vector<std::size_t> prev(h.size() + 1), cur(h.size() + 1);
  for (std::size_t j = 0; j <= h.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= r.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= h.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (r[i - 1] != h[j - 1])});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[h.size()]) / static_cast<double>(r.size());
}

void ValidateReport(const MetricReport& r) {
  auto check = [](const std::optional<double>& v, const char* name, double lo, double hi) {
    if (v && !(std::isfinite(*v) && *v >= lo && *v <= hi)) {
      Fail(ErrorCode::kValidation, std::string("metric ") + name + " out of range: " +
                                       std::to_string(*v));
    }
  };
  const double inf = HUGE_VAL;
  check(r.semantic_nmse, "semantic_nmse", 0.0, inf);
  check(r.piqe, "piqe", 0.0, 100.0);
  check(r.kl_divergence, "kl", 0.0, inf);
  check(r.cer, "cer", 0.0, inf);
  if (r.nrqm && !std::isfinite(*r.nrqm)) Fail(ErrorCode::kValidation, "metric nrqm not finite");
}

}  // namespace gsc::metrics
