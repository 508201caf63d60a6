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

#include <cmath>
#include <limits>

#include "common/error.hpp"
#include "phy/ldpc.hpp"

namespace gsc::phy {

namespace {

bool SyndromeZero(const LdpcCode& code, const Bits& hard) {
  const auto& ptr = code.check_offsets();
  const auto& var = code.edge_variables();
  for (int c = 0; c < code.check_count(); ++c) {
    int s = 0;
    for (int e = ptr[c]; e < ptr[c + 1]; ++e) s ^= hard[var[e]];
    if (s) return false;
  }
  return true;
}

}  // namespace

DecodeResult LdpcDecode(const LdpcCode& code, std::span<const double> llrs,
                        int max_iters, double normalization) {
  const int n = code.n();
  if (static_cast<int>(llrs.size()) != n) {
    Fail(ErrorCode::kDimensionMismatch, "decode: " + std::to_string(llrs.size()) +
                                            " LLRs for a length-" + std::to_string(n) +
                                            " code");
  }
  const auto& cptr = code.check_offsets();
  const auto& evar = code.edge_variables();
  const auto& vptr = code.variable_offsets();
  const auto& vedge = code.variable_edges();

  std::vector<double> app(llrs.begin(), llrs.end());
  std::vector<double> c2v(code.edge_count(), 0.0);
  std::vector<double> v2c;
  DecodeResult res;
  res.codeword.resize(n);
  for (int v = 0; v < n; ++v) res.codeword[v] = app[v] < 0 ? 1 : 0;

  if (SyndromeZero(code, res.codeword)) {
    res.converged = true;
  } else {
    for (int it = 1; it <= max_iters; ++it) {
      for (int c = 0; c < code.check_count(); ++c) {
        const int b = cptr[c];
        const int e_end = cptr[c + 1];
        double min1 = std::numeric_limits<double>::infinity();
        double min2 = min1;
        int argmin = -1;
        int sign = 0;
        v2c.resize(e_end - b);
        for (int e = b; e < e_end; ++e) {
          double m = app[evar[e]] - c2v[e];
          v2c[e - b] = m;
          double a = std::abs(m);
          sign ^= m < 0;
          if (a < min1) {
            min2 = min1;
            min1 = a;
            argmin = e;
          } else if (a < min2) {
            min2 = a;
          }
        }
        for (int e = b; e < e_end; ++e) {
          double mag = normalization * (e == argmin ? min2 : min1);
          bool neg = sign ^ (v2c[e - b] < 0);
          c2v[e] = neg ? -mag : mag;
        }
      }
      for (int v = 0; v < n; ++v) {
        double total = llrs[v];
        for (int t = vptr[v]; t < vptr[v + 1]; ++t) total += c2v[vedge[t]];
        app[v] = total;
        res.codeword[v] = total < 0 ? 1 : 0;
      }
      res.iterations = it;
      if (SyndromeZero(code, res.codeword)) {
        res.converged = true;
        break;
      }
    }
  }
  res.message = code.ExtractMessage(res.codeword);
  return res;
}

}  // namespace gsc::phy
