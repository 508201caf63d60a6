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

#ifndef GSC_PHY_LDPC_HPP
#define GSC_PHY_LDPC_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gsc::phy {

using Bits = std::vector<std::uint8_t>;  // one bit (0/1) per element

// Binary LDPC code given by a sparse parity-check matrix H ((n-k) x n after
// removing redundant rows), with a systematic encoder derived by GF(2)
// elimination. Message bits occupy info_positions() verbatim.
class LdpcCode {
 public:
  // `rows[i]` lists the columns (0-based) of the ones in check row i.
  // Rows that are linearly dependent are kept for decoding; k = n - rank(H).
  // Throws kInvalidArgument on out-of-range or duplicate column indices.
  LdpcCode(std::string code_id, int n, std::vector<std::vector<int>> rows);

  const std::string& code_id() const { return code_id_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int check_count() const { return static_cast<int>(rows_.size()); }
  int rank() const { return n_ - k_; }
  double rate() const { return static_cast<double>(k_) / n_; }
  std::size_t edge_count() const { return edge_var_.size(); }

  const std::vector<std::vector<int>>& rows() const { return rows_; }
  const std::vector<int>& info_positions() const { return info_positions_; }

  Bits Encode(std::span<const std::uint8_t> message) const;
  Bits ExtractMessage(std::span<const std::uint8_t> codeword) const;
  bool IsCodeword(std::span<const std::uint8_t> word) const;

  // CSR adjacency used by the decoder: edges grouped by check node.
  const std::vector<int>& check_offsets() const { return check_ptr_; }
  const std::vector<int>& edge_variables() const { return edge_var_; }
  const std::vector<int>& variable_offsets() const { return var_ptr_; }
  const std::vector<int>& variable_edges() const { return var_edges_; }

 private:
  std::string code_id_;
  int n_ = 0;
  int k_ = 0;
  std::vector<std::vector<int>> rows_;
  std::vector<int> info_positions_;
  std::vector<int> parity_positions_;
  // parity_rows_[i] has bit j set when info bit j feeds parity_positions_[i].
  std::vector<std::vector<std::uint64_t>> parity_rows_;
  std::vector<int> check_ptr_, edge_var_, var_ptr_, var_edges_;
};

// Quasi-cyclic construction: a dv-regular base graph (row weight dv*nb/mb)
// lifted by z x z circulant permutations. Base graph and shifts are drawn
// from `seed`; shifts avoid 4-cycles where possible. A construction whose H
// is rank deficient is redrawn from a derived seed, up to 16 attempts, then
// throws kRankDeficient.
struct QcParams {
  int lifting = 64;
  int base_rows = 64;
  int base_cols = 128;
  int column_weight = 3;
  std::uint64_t seed = 1;
};

LdpcCode MakeRegularQcLdpc(const QcParams& params);

// Lifts an explicit base matrix of circulant shifts (-1 = zero block).
LdpcCode MakeQcLdpcFromBase(std::string code_id, int lifting,
                            const std::vector<std::vector<int>>& shifts);

// Canonical id, e.g. "qc:z=64:mb=64:nb=128:dv=3:seed=1" (comma-free so it
// can sit in a CSV cell).
std::string QcCodeId(const QcParams& params);

// Resolves "default" (rate 1/2, z=64, n=8192), "small" (z=8, n=64), a
// canonical "qc:..." id, or a path to an alist file. Built codes are cached
// and shared.
std::shared_ptr<const LdpcCode> CodeById(std::string_view id);

// alist exchange format. Errors name the 1-based line number.
LdpcCode LoadAlist(std::string_view text, std::string code_id = "alist");
std::string ToAlist(const LdpcCode& code);

struct DecodeResult {
  Bits message;
  Bits codeword;
  bool converged = false;
  int iterations = 0;
};

inline constexpr double kMinSumNormalization = 0.8;
inline constexpr int kDefaultMaxIterations = 25;

// Normalized min-sum, flooding schedule; positive LLR favors bit 0. Returns
// the hard decision after the last iteration even without convergence.
DecodeResult LdpcDecode(const LdpcCode& code, std::span<const double> llrs,
                        int max_iters = kDefaultMaxIterations,
                        double normalization = kMinSumNormalization);

}  // namespace gsc::phy

#endif  // GSC_PHY_LDPC_HPP
