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

#include "phy/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "common/image.hpp"
#include "common/rng.hpp"

namespace gsc::phy {

namespace {

using Word = std::uint64_t;

std::size_t WordCount(int bits) { return (static_cast<std::size_t>(bits) + 63) / 64; }

bool TestBit(const std::vector<Word>& row, int i) { return (row[i / 64] >> (i % 64)) & 1; }
void SetBit(std::vector<Word>& row, int i) { row[i / 64] |= Word{1} << (i % 64); }

}  // namespace

LdpcCode::LdpcCode(std::string code_id, int n, std::vector<std::vector<int>> rows)
    : code_id_(std::move(code_id)), n_(n), rows_(std::move(rows)) {
  if (n_ <= 0 || rows_.empty()) {
    Fail(ErrorCode::kInvalidArgument, "LDPC code needs n > 0 and at least one check");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto& r = rows_[i];
    std::sort(r.begin(), r.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) {
      Fail(ErrorCode::kInvalidArgument, "check " + std::to_string(i) + " repeats a column");
    }
    if (!r.empty() && (r.front() < 0 || r.back() >= n_)) {
      Fail(ErrorCode::kInvalidArgument, "check " + std::to_string(i) + " column out of range");
    }
  }

  // Reduced row echelon form over GF(2). Pivots are taken right to left so
  // the information set tends to sit at the front of the codeword.
  const std::size_t words = WordCount(n_);
  std::vector<std::vector<Word>> m(rows_.size(), std::vector<Word>(words, 0));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (int c : rows_[i]) SetBit(m[i], c);
  }
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int col = n_ - 1; col >= 0 && r < m.size(); --col) {
    std::size_t sel = r;
    while (sel < m.size() && !TestBit(m[sel], col)) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[r]);
    const std::size_t w = col / 64;
    const Word mask = Word{1} << (col % 64);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != r && (m[j][w] & mask)) {
        for (std::size_t t = 0; t < words; ++t) m[j][t] ^= m[r][t];
      }
    }
    pivot_col.push_back(col);
    ++r;
  }
  const int rank = static_cast<int>(r);
  k_ = n_ - rank;
  if (k_ <= 0) Fail(ErrorCode::kRankDeficient, "parity matrix leaves no information bits");

  parity_positions_ = pivot_col;
  std::vector<bool> is_pivot(n_, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int c = 0; c < n_; ++c) {
    if (!is_pivot[c]) info_positions_.push_back(c);
  }
  parity_rows_.assign(rank, std::vector<Word>(WordCount(k_), 0));
  for (int i = 0; i < rank; ++i) {
    for (int t = 0; t < k_; ++t) {
      if (TestBit(m[i], info_positions_[t])) SetBit(parity_rows_[i], t);
    }
  }

  check_ptr_.assign(1, 0);
  std::vector<std::vector<int>> var_adj(n_);
  for (const auto& row : rows_) {
    for (int c : row) {
      var_adj[c].push_back(static_cast<int>(edge_var_.size()));
      edge_var_.push_back(c);
    }
    check_ptr_.push_back(static_cast<int>(edge_var_.size()));
  }
  var_ptr_.assign(1, 0);
  for (const auto& adj : var_adj) {
    var_edges_.insert(var_edges_.end(), adj.begin(), adj.end());
    var_ptr_.push_back(static_cast<int>(var_edges_.size()));
  }
}

Bits LdpcCode::Encode(std::span<const std::uint8_t> message) const {
  if (static_cast<int>(message.size()) != k_) {
    Fail(ErrorCode::kDimensionMismatch, "encode: message has " +
                                            std::to_string(message.size()) +
                                            " bits, code expects " + std::to_string(k_));
  }
  std::vector<Word> packed(WordCount(k_), 0);
  for (int t = 0; t < k_; ++t) {
    if (message[t] & 1) SetBit(packed, t);
  }
  Bits cw(n_, 0);
  for (int t = 0; t < k_; ++t) cw[info_positions_[t]] = message[t] & 1;
  for (std::size_t i = 0; i < parity_rows_.size(); ++i) {
    int parity = 0;
    for (std::size_t w = 0; w < packed.size(); ++w) {
      parity ^= std::popcount(parity_rows_[i][w] & packed[w]) & 1;
    }
    cw[parity_positions_[i]] = static_cast<std::uint8_t>(parity);
  }
  return cw;
}

Bits LdpcCode::ExtractMessage(std::span<const std::uint8_t> codeword) const {
  if (static_cast<int>(codeword.size()) != n_) {
    Fail(ErrorCode::kDimensionMismatch, "codeword length mismatch");
  }
  Bits msg(k_);
  for (int t = 0; t < k_; ++t) msg[t] = codeword[info_positions_[t]] & 1;
  return msg;
}

bool LdpcCode::IsCodeword(std::span<const std::uint8_t> word) const {
  if (static_cast<int>(word.size()) != n_) return false;
  for (const auto& row : rows_) {
    int s = 0;
    for (int c : row) s ^= word[c] & 1;
    if (s) return false;
  }
  return true;
}

std::string QcCodeId(const QcParams& p) {
  std::ostringstream os;
  os << "qc:z=" << p.lifting << ":mb=" << p.base_rows << ":nb=" << p.base_cols
     << ":dv=" << p.column_weight << ":seed=" << p.seed;
  return os.str();
}

LdpcCode MakeQcLdpcFromBase(std::string code_id, int lifting,
                            const std::vector<std::vector<int>>& shifts) {
  if (lifting < 1 || shifts.empty()) {
    Fail(ErrorCode::kInvalidArgument, "QC lifting needs z >= 1 and a nonempty base");
  }
  const int mb = static_cast<int>(shifts.size());
  const int nb = static_cast<int>(shifts[0].size());
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(mb) * lifting);
  for (int i = 0; i < mb; ++i) {
    if (static_cast<int>(shifts[i].size()) != nb) {
      Fail(ErrorCode::kInvalidArgument, "ragged base matrix");
    }
    for (int j = 0; j < nb; ++j) {
      int s = shifts[i][j];
      if (s < 0) continue;
      for (int r = 0; r < lifting; ++r) {
        rows[i * lifting + r].push_back(j * lifting + (r + s) % lifting);
      }
    }
  }
  return LdpcCode(std::move(code_id), nb * lifting, std::move(rows));
}

namespace {

std::vector<std::vector<int>> DrawBaseGraph(const QcParams& p, Rng& rng) {
  const int row_weight = p.column_weight * p.base_cols / p.base_rows;
  std::vector<int> residual(p.base_rows, row_weight);
  std::vector<std::vector<int>> base(p.base_rows, std::vector<int>(p.base_cols, -1));
  std::vector<int> order(p.base_rows);
  for (int j = 0; j < p.base_cols; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return residual[a] > residual[b]; });
    for (int t = 0; t < p.column_weight; ++t) {
      int i = order[t];
      if (residual[i] == 0) Fail(ErrorCode::kInvalidArgument, "base graph degrees unrealizable");
      --residual[i];
      base[i][j] = 0;
    }
  }
  return base;
}

void DrawShifts(std::vector<std::vector<int>>& base, int z, Rng& rng) {
  const int mb = static_cast<int>(base.size());
  const int nb = static_cast<int>(base[0].size());
  std::uniform_int_distribution<int> pick(0, z - 1);
  auto creates_4cycle = [&](int i, int j, int s) {
    for (int i2 = 0; i2 < mb; ++i2) {
      if (i2 == i || base[i2][j] < 0) continue;
      for (int j2 = 0; j2 < nb; ++j2) {
        if (j2 == j || base[i][j2] < 0 || base[i2][j2] < 0) continue;
        int d = s - base[i][j2] + base[i2][j2] - base[i2][j];
        if (((d % z) + z) % z == 0) return true;
      }
    }
    return false;
  };
  // Entries are marked assigned (>= 0) only once their shift is final, so
  // start every entry at the sentinel -2 for "present, unassigned".
  for (auto& row : base) {
    for (auto& v : row) v = v < 0 ? -1 : -2;
  }
  for (int j = 0; j < nb; ++j) {
    for (int i = 0; i < mb; ++i) {
      if (base[i][j] == -1) continue;
      int s = pick(rng);
      for (int attempt = 0; attempt < 64 && creates_4cycle(i, j, s); ++attempt) s = pick(rng);
      base[i][j] = s;
    }
  }
}

}  // namespace

LdpcCode MakeRegularQcLdpc(const QcParams& p) {
  if (p.lifting < 4) Fail(ErrorCode::kInvalidArgument, "QC lifting z must be >= 4");
  if (p.base_rows < 1 || p.base_cols <= p.base_rows) {
    Fail(ErrorCode::kInvalidArgument, "QC base must have more columns than rows");
  }
  if (p.column_weight < 1 || p.column_weight > p.base_rows ||
      (p.column_weight * p.base_cols) % p.base_rows != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "column weight " + std::to_string(p.column_weight) +
             " does not give an integral row weight for a " +
             std::to_string(p.base_rows) + "x" + std::to_string(p.base_cols) + " base");
  }
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng = MakeRng(p.seed, static_cast<std::uint64_t>(attempt));
    auto base = DrawBaseGraph(p, rng);
    DrawShifts(base, p.lifting, rng);
    LdpcCode code = MakeQcLdpcFromBase(QcCodeId(p), p.lifting, base);
    if (code.rank() == code.check_count()) return code;
  }
  Fail(ErrorCode::kRankDeficient, "QC construction " + QcCodeId(p) +
                                      " rank deficient after 16 attempts");
}

namespace {

QcParams ParseQcId(std::string_view id) {
  QcParams p;
  std::string body(id.substr(3));
  std::stringstream ss(body);
  std::string field;
  std::set<std::string> seen;
  while (std::getline(ss, field, ':')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) Fail(ErrorCode::kParse, "bad code id field '" + field + "'");
    std::string key = field.substr(0, eq);
    long long v = 0;
    try {
      v = std::stoll(field.substr(eq + 1));
    } catch (const std::exception&) {
      Fail(ErrorCode::kParse, "bad value in code id field '" + field + "'");
    }
    if (key == "z") p.lifting = static_cast<int>(v);
    else if (key == "mb") p.base_rows = static_cast<int>(v);
    else if (key == "nb") p.base_cols = static_cast<int>(v);
    else if (key == "dv") p.column_weight = static_cast<int>(v);
    else if (key == "seed") p.seed = static_cast<std::uint64_t>(v);
    else Fail(ErrorCode::kParse, "unknown code id key '" + key + "'");
  }
  return p;
}

}  // namespace

std::shared_ptr<const LdpcCode> CodeById(std::string_view id) {
  static std::recursive_mutex mu;
  static std::map<std::string, std::shared_ptr<const LdpcCode>, std::less<>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(id); it != cache.end()) return it->second;

  std::shared_ptr<const LdpcCode> code;
  if (id == "default") {
    code = CodeById(QcCodeId(QcParams{}));
  } else if (id == "small") {
    code = CodeById(QcCodeId(QcParams{8, 4, 8, 3, 1}));
  } else if (id.starts_with("qc:")) {
    code = std::make_shared<const LdpcCode>(MakeRegularQcLdpc(ParseQcId(id)));
  } else if (std::filesystem::is_regular_file(std::filesystem::path(id)) ||
             id.find('/') != std::string_view::npos || id.ends_with(".alist")) {
    // Anything path-like is read as a file so a missing one reports kIo.
    std::filesystem::path path(id);
    Bytes raw = ReadFileBytes(path);
    code = std::make_shared<const LdpcCode>(LoadAlist(
        std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()),
        "alist:" + path.filename().string()));
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown code id '" + std::string(id) + "'");
  }
  cache.emplace(std::string(id), code);
  return code;
}

}  // namespace gsc::phy
