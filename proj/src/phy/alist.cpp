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

// alist layout:
//   n m
//   max_col_degree max_row_degree
//   n column degrees
//   m row degrees
//   n lines: 1-based row indices of each column, zero-padded
//   m lines: 1-based column indices of each row, zero-padded

#include <algorithm>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "phy/ldpc.hpp"

namespace gsc::phy {

namespace {

struct Line {
  int number;
  std::vector<long long> values;
};

std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        line.values.push_back(v);
      } catch (const std::exception&) {
        Fail(ErrorCode::kParse, "alist line " + std::to_string(number) +
                                    ": not an integer '" + tok + "'");
      }
    }
    if (!line.values.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void LineError(int line, const std::string& what) {
  Fail(ErrorCode::kParse, "alist line " + std::to_string(line) + ": " + what);
}

// Reads `degree` 1-based indices in [1, limit] followed by zero padding.
std::vector<int> ReadIndices(const Line& line, long long degree, long long limit) {
  if (static_cast<long long>(line.values.size()) < degree) {
    LineError(line.number, "expected " + std::to_string(degree) + " indices");
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < line.values.size(); ++i) {
    long long v = line.values[i];
    if (static_cast<long long>(i) < degree) {
      if (v < 1 || v > limit) {
        LineError(line.number, "index " + std::to_string(v) + " outside [1, " +
                                   std::to_string(limit) + "]");
      }
      out.push_back(static_cast<int>(v - 1));
    } else if (v != 0) {
      LineError(line.number, "padding entry " + std::to_string(v) + " is not 0");
    }
  }
  return out;
}

}  // namespace

LdpcCode LoadAlist(std::string_view text, std::string code_id) {
  auto lines = Tokenize(text);
  if (lines.size() < 4) Fail(ErrorCode::kParse, "alist: fewer than 4 header lines");
  auto expect = [&](std::size_t idx, std::size_t count, const char* what) -> const Line& {
    if (idx >= lines.size()) {
      Fail(ErrorCode::kParse, std::string("alist: missing ") + what);
    }
    if (lines[idx].values.size() != count) {
      LineError(lines[idx].number, std::string("expected ") + std::to_string(count) +
                                       " values for " + what);
    }
    return lines[idx];
  };
  const Line& dims = expect(0, 2, "n m");
  const long long n = dims.values[0];
  const long long m = dims.values[1];
  if (n < 1 || m < 1 || n > (1 << 24) || m > (1 << 24)) {
    LineError(dims.number, "invalid dimensions");
  }
  const Line& maxes = expect(1, 2, "max degrees");
  const Line& col_deg = expect(2, static_cast<std::size_t>(n), "column degrees");
  const Line& row_deg = expect(3, static_cast<std::size_t>(m), "row degrees");
  for (auto d : col_deg.values) {
    if (d < 0 || d > maxes.values[0] || d > m) LineError(col_deg.number, "column degree out of range");
  }
  for (auto d : row_deg.values) {
    if (d < 0 || d > maxes.values[1] || d > n) LineError(row_deg.number, "row degree out of range");
  }
  if (lines.size() < 4 + static_cast<std::size_t>(n + m)) {
    Fail(ErrorCode::kParse, "alist: expected " + std::to_string(n + m) +
                                " index lines, found " + std::to_string(lines.size() - 4));
  }
  if (lines.size() > 4 + static_cast<std::size_t>(n + m)) {
    LineError(lines[4 + n + m].number, "unexpected trailing content");
  }

  std::set<std::pair<int, int>> from_cols, from_rows;
  for (long long j = 0; j < n; ++j) {
    const Line& line = lines[4 + j];
    for (int i : ReadIndices(line, col_deg.values[j], m)) {
      if (!from_cols.insert({i, static_cast<int>(j)}).second) LineError(line.number, "duplicate index");
    }
  }
  std::vector<std::vector<int>> rows(m);
  for (long long i = 0; i < m; ++i) {
    const Line& line = lines[4 + n + i];
    rows[i] = ReadIndices(line, row_deg.values[i], n);
    for (int j : rows[i]) {
      if (!from_rows.insert({static_cast<int>(i), j}).second) LineError(line.number, "duplicate index");
    }
  }
  if (from_cols != from_rows) {
    Fail(ErrorCode::kParse, "alist: column and row lists describe different matrices");
  }
  return LdpcCode(std::move(code_id), static_cast<int>(n), std::move(rows));
}

std::string ToAlist(const LdpcCode& code) {
  const int n = code.n();
  const int m = code.check_count();
  std::vector<std::vector<int>> cols(n);
  for (int i = 0; i < m; ++i) {
    for (int j : code.rows()[i]) cols[j].push_back(i);
  }
  std::size_t max_col = 0, max_row = 0;
  for (const auto& c : cols) max_col = std::max(max_col, c.size());
  for (const auto& r : code.rows()) max_row = std::max(max_row, r.size());

  std::ostringstream os;
  auto emit = [&](const std::vector<int>& idx, std::size_t width) {
    for (std::size_t t = 0; t < width; ++t) {
      if (t) os << ' ';
      os << (t < idx.size() ? idx[t] + 1 : 0);
    }
    os << '\n';
  };
  os << n << ' ' << m << '\n' << max_col << ' ' << max_row << '\n';
  for (int j = 0; j < n; ++j) os << (j ? " " : "") << cols[j].size();
  os << '\n';
  for (int i = 0; i < m; ++i) os << (i ? " " : "") << code.rows()[i].size();
  os << '\n';
  for (const auto& c : cols) emit(c, max_col);
  for (const auto& r : code.rows()) emit(r, max_row);
  return os.str();
}

}  // namespace gsc::phy
