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


#ifndef GSC_METRICS_METRICS_HPP
#define GSC_METRICS_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gsc::metrics {

// ||x - x_hat||^2 / ||x||^2. Throws kDimensionMismatch on unequal lengths and
// kInvalidArgument when ||x|| = 0.
double Nmse(std::span<const double> x, std::span<const double> x_hat);

inline constexpr int kDefaultKlBins = 64;
inline constexpr double kDefaultKlEpsilon = 1e-9;

// KL(P || Q) between histograms of the two sample sets over `bins` equal
// bins spanning the joint [min, max]. Probabilities are smoothed as
// (count / N + epsilon) / (1 + bins * epsilon). Throws kInvalidArgument on
// empty samples, bins < 2, or non-finite samples.
double KlDivergenceHist(std::span<const double> samples_p,
                        std::span<const double> samples_q,
                        int bins = kDefaultKlBins,
                        double epsilon = kDefaultKlEpsilon);

// Levenshtein distance over Unicode code points divided by the reference
// length. Both empty -> 0; empty reference with nonempty hypothesis -> 1.
// Invalid UTF-8 bytes count as one unit each.
double CharacterErrorRate(std::string_view reference, std::string_view hypothesis);

// One row of a Table-1-shaped comparison.
struct MetricReport {
  std::string scenario;
  std::string method;
  std::string budget_label;
  std::optional<std::uint64_t> budget_bytes;
  std::optional<double> semantic_nmse;
  std::optional<double> piqe;
  std::optional<double> nrqm;  // adapter-supplied only
  std::optional<double> kl_divergence;
  std::optional<double> cer;
  std::uint64_t bytes_transmitted = 0;
  std::uint64_t coded_bits = 0;
  std::optional<std::uint64_t> flops_estimate;  // empty when a stage declares none
  std::uint64_t seed = 0;
  std::string basis_mode;  // "shared" or "self-contained"; empty for baselines
  std::optional<bool> task_constraint_met;
  std::optional<bool> perceptual_constraint_met;
  std::size_t failed_codewords = 0;

  bool operator==(const MetricReport&) const = default;
};

// Throws kValidation when a present value is non-finite or out of range
// (NMSE, KL, CER < 0; PIQE outside [0, 100]).
void ValidateReport(const MetricReport& r);

}  // namespace gsc::metrics

#endif  // GSC_METRICS_METRICS_HPP
