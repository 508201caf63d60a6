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


// Independent reference computations used by the unit and acceptance tests.
// They are deliberately naive: dense loops, no shared code with src/.

#ifndef GSC_TESTS_ORACLES_HPP
#define GSC_TESTS_ORACLES_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Cyclic Jacobi eigensolver for a symmetric matrix. Returns eigenpairs
// sorted by decreasing eigenvalue; vectors are unit length.
inline std::vector<std::pair<double, std::vector<double>>> JacobiEigen(Matrix a) {
  const std::size_t n = a.size();
  Matrix v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::pair<double, std::vector<double>>> out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k][j];
    out.emplace_back(a[j][j], col);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  return out;
}

// Sample covariance (divide by N) of row samples.
inline Matrix Covariance(const std::vector<std::vector<double>>& rows) {
  const std::size_t d = rows[0].size();
  std::vector<double> mean(d, 0.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
  }
  for (double& m : mean) m /= static_cast<double>(rows.size());
  Matrix c(d, std::vector<double>(d, 0.0));
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) c[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
    }
  }
  for (auto& row : c) {
    for (double& x : row) x /= static_cast<double>(rows.size());
  }
  return c;
}

// Dense GF(2) parity matrix, rows bit-packed, for H * c checks that share
// nothing with the encoder's own data structures.
class DenseGf2 {
 public:
  DenseGf2(const std::vector<std::vector<int>>& rows, std::size_t n)
      : words_((n + 63) / 64), bits_(rows.size() * words_, 0) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (int j : rows[i]) bits_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64);
    }
  }

  std::vector<int> Syndrome(const std::vector<std::uint8_t>& word) const {
    std::vector<std::uint64_t> w(words_, 0);
    for (std::size_t j = 0; j < word.size(); ++j) {
      if (word[j]) w[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    std::vector<int> s(bits_.size() / words_, 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      int acc = 0;
      for (std::size_t t = 0; t < words_; ++t) acc ^= std::popcount(bits_[i * words_ + t] & w[t]) & 1;
      s[i] = acc;
    }
    return s;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

inline std::vector<int> Syndrome(const std::vector<std::vector<int>>& rows, std::size_t n,
                                 const std::vector<std::uint8_t>& word) {
  return DenseGf2(rows, n).Syndrome(word);
}

inline double Nmse(const std::vector<double>& x, const std::vector<double>& y) {
  long double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (static_cast<long double>(x[i]) - y[i]) * (static_cast<long double>(x[i]) - y[i]);
    den += static_cast<long double>(x[i]) * x[i];
  }
  return static_cast<double>(num / den);
}

// Q(x) = P(N(0,1) > x).
inline double Q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace oracle

#endif  // GSC_TESTS_ORACLES_HPP
