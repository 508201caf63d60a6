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


#include <doctest.h>

#include <cmath>
#include <random>

#include "codec/dct_codec.hpp"
#include "codec/payload.hpp"
#include "codec/pca.hpp"
#include "codec/quantizer.hpp"
#include "common/image.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gsc;
using namespace gsc::codec;
using testutil::CodeOf;

namespace {

std::vector<std::vector<double>> Gaussian(std::mt19937_64& rng, int n, int d,
                                          const std::vector<double>& scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  for (auto& r : rows) {
    for (int j = 0; j < d; ++j) r[j] = g(rng) * scale[j % scale.size()] + 0.1 * j;
  }
  return rows;
}

double ReconNmse(const PcaBasis& b, const std::vector<std::vector<double>>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    auto rec = b.Reconstruct(b.Project(r));
    x.insert(x.end(), r.begin(), r.end());
    y.insert(y.end(), rec.begin(), rec.end());
  }
  return oracle::Nmse(x, y);
}

Stream RandomVectorStream(std::mt19937_64& rng) {
  const int rank = 1 + static_cast<int>(rng() % 6);
  const int count = static_cast<int>(rng() % 9);
  const int bits = 1 + static_cast<int>(rng() % 16);
  std::vector<float> lo(rank), hi(rank);
  std::uniform_real_distribution<float> u(-100.f, 100.f);
  for (int i = 0; i < rank; ++i) {
    lo[i] = u(rng);
    hi[i] = lo[i] + 0.001f + std::abs(u(rng));
  }
  Stream s;
  s.kind = rng() % 2 ? StreamKind::kTask : StreamKind::kPerceptual;
  s.basis_id = std::string(rng() % 12, 'a' + static_cast<char>(rng() % 26));
  s.rank = static_cast<std::uint16_t>(rank);
  s.vector_count = static_cast<std::uint32_t>(count);
  s.quant = MakeQuantSpec(bits, lo, hi);
  for (int i = 0; i < rank * count; ++i) s.codes.push_back(static_cast<std::uint32_t>(rng() % (1u << bits)));
  return s;
}

SemanticPayload RandomPayload(std::mt19937_64& rng) {
  SemanticPayload p;
  const int n = static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i) {
    if (rng() % 3 == 0) {
      std::string text;
      for (std::size_t c = rng() % 40; c > 0; --c) text.push_back(static_cast<char>(rng() % 256));
      p.streams.push_back(MakeTextStream(text));
    } else {
      p.streams.push_back(RandomVectorStream(rng));
    }
  }
  return p;
}

}  // namespace

TEST_CASE("PCA matches a Jacobi eigendecomposition of the covariance") {
  std::mt19937_64 rng(5);
  auto rows = Gaussian(rng, 400, 8, {5, 3, 2, 1.5, 1, 0.7, 0.4, 0.2});
  PcaBasis b = FitBasis(rows, 3, "g");
  auto eig = oracle::JacobiEigen(oracle::Covariance(rows));
  for (int r = 0; r < 3; ++r) {
    double dot = 0;
    for (int j = 0; j < 8; ++j) dot += b.components()(r, j) * eig[r].second[j];
    const double sign = dot < 0 ? -1.0 : 1.0;
    for (int j = 0; j < 8; ++j) {
      CHECK(b.components()(r, j) == doctest::Approx(sign * eig[r].second[j]).epsilon(0).scale(1).epsilon(1e-6));
    }
    CHECK(b.variances()(r) == doctest::Approx(eig[r].first).epsilon(1e-9));
  }
  std::vector<double> mean(8, 0.0);
  for (const auto& r : rows) {
    for (int j = 0; j < 8; ++j) mean[j] += r[j] / rows.size();
  }
  for (int j = 0; j < 8; ++j) CHECK(b.mean()(j) == doctest::Approx(mean[j]).epsilon(1e-12));
}

TEST_CASE("PCA invariants") {
  std::mt19937_64 rng(9);
  auto rows = Gaussian(rng, 200, 32, {4, 2, 1, 0.5, 0.25});
  double prev = INFINITY;
  for (int k = 1; k <= 32; ++k) {
    PcaBasis b = FitBasis(rows, k, "r");
    Eigen::MatrixXd gram = b.components() * b.components().transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-8);
    // Sign convention: first nonzero entry of each component is positive.
    for (int r = 0; r < k; ++r) {
      for (int j = 0; j < 32; ++j) {
        if (std::abs(b.components()(r, j)) > 1e-12) {
          CHECK(b.components()(r, j) > 0);
          break;
        }
      }
    }
    const double e = ReconNmse(b, rows);
    CHECK(e <= prev + 1e-15);
    prev = e;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("PCA special cases") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  // Points on a 2-D plane inside 5-D space.
  std::vector<std::vector<double>> plane;
  for (int i = 0; i < 50; ++i) {
    const double a = g(rng), c = g(rng);
    plane.push_back({a, c, a + c, 2 * a - c, 1.0});
  }
  CHECK(ReconNmse(FitBasis(plane, 2, "p"), plane) < 1e-10);

  PcaBasis b = FitBasis(plane, 5, "p");
  std::vector<double> mean(b.mean().data(), b.mean().data() + 5);
  for (double y : b.Project(mean)) CHECK(std::abs(y) < 1e-12);
  auto back = b.Reconstruct(std::vector<double>(5, 0.0));
  for (int j = 0; j < 5; ++j) CHECK(back[j] == doctest::Approx(mean[j]));
  std::vector<double> x{3, -1, 4, 1, -5};
  auto rx = b.Reconstruct(b.Project(x));
  for (int j = 0; j < 5; ++j) CHECK(rx[j] == doctest::Approx(x[j]).epsilon(1e-10));

  // Constant data: completion from the standard basis, still orthonormal.
  std::vector<std::vector<double>> flat(4, std::vector<double>{1, 2, 3});
  PcaBasis c = FitBasis(flat, 3, "c");
  Eigen::MatrixXd gram = c.components() * c.components().transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(FitBasis(flat, 3, "c").components() == c.components());

  CHECK(CodeOf([&] { FitBasis(plane, 6, "x"); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { FitBasis(flat, 4, "x"); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { FitBasis(std::vector<std::vector<double>>{{1, 2}}, 2, "x"); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { b.Project(std::vector<double>{1, 2}); }) == ErrorCode::kDimensionMismatch);
  CHECK(b.Truncated(2).rank() == 2);
  CHECK(CodeOf([&] { b.Truncated(6); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("Quantizer examples and error bound") {
  QuantSpec s = MakeQuantSpec(1, {0.f}, {1.f});
  CHECK(Quantize(s, std::vector<double>{0.7}) == std::vector<std::uint32_t>{1});
  CHECK(Dequantize(s, std::vector<std::uint32_t>{1}) == std::vector<double>{0.75});
  CHECK(Dequantize(s, std::vector<std::uint32_t>{0}) == std::vector<double>{0.25});
  QuantSpec s8 = MakeQuantSpec(8, {-1.f}, {1.f});
  CHECK(Quantize(s8, std::vector<double>{-1.0})[0] == 0);
  CHECK(Quantize(s8, std::vector<double>{1.0})[0] == 255);
  CHECK(Quantize(s8, std::vector<double>{7.0})[0] == 255);
  CHECK(Quantize(s8, std::vector<double>{-7.0})[0] == 0);

  std::mt19937_64 rng(4);
  for (int bits = 1; bits <= 16; ++bits) {
    QuantSpec q = MakeQuantSpec(bits, {-1.f, 10.f}, {1.f, 10.5f});
    for (int i = 0; i < 1000; ++i) {
      std::uniform_real_distribution<double> u0(-1, 1), u1(10, 10.5);
      std::vector<double> v{u0(rng), u1(rng)};
      auto r = Dequantize(q, Quantize(q, v));
      CHECK(std::abs(r[0] - v[0]) <= 2.0 / std::ldexp(1.0, bits + 1) + 1e-12);
      CHECK(std::abs(r[1] - v[1]) <= 0.5 / std::ldexp(1.0, bits + 1) + 1e-12);
    }
  }
  CHECK(CodeOf([] { MakeQuantSpec(0, {0.f}, {1.f}); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { MakeQuantSpec(17, {0.f}, {1.f}); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { MakeQuantSpec(4, {1.f}, {1.f}); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { Dequantize(s, std::vector<std::uint32_t>{2}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("FitQuantSpec covers the data and widens constant components") {
  std::vector<std::vector<double>> v{{0.1, 5.0}, {0.3, 5.0}, {-0.2, 5.0}};
  QuantSpec q = FitQuantSpec(8, v);
  CHECK(q.lo[0] <= -0.2);
  CHECK(q.hi[0] >= 0.3);
  CHECK(q.lo[1] == doctest::Approx(4.5));
  CHECK(q.hi[1] == doctest::Approx(5.5));
}

TEST_CASE("Payload sizes") {
  SemanticPayload empty;
  CHECK(SerializePayload(empty).size() == kPayloadHeaderBytes);
  CHECK(PayloadByteSize(empty) == kPayloadHeaderBytes);
  CHECK(DeserializePayload(SerializePayload(empty)) == empty);

  std::vector<std::vector<double>> vecs(10, std::vector<double>(16, 0.0));
  for (int i = 0; i < 10; ++i) vecs[i][i] = i;
  Stream s = MakeVectorStream(StreamKind::kTask, "t0", vecs, FitQuantSpec(8, vecs));
  SemanticPayload p{{s}};
  const std::size_t header = 1 + 1 + 2 + 2 + 4 + 1 + 8 * 16;
  CHECK(StreamByteSize(s) - header == 160);
  CHECK(SerializePayload(p).size() == kPayloadHeaderBytes + header + 160);

  const std::string caption = "A white truck parked on the roadside.";
  Stream t = MakeTextStream(caption);
  CHECK(StreamByteSize(t) == 1 + 4 + caption.size());

  std::mt19937_64 rng(1);
  PcaBasis basis = FitBasis(Gaussian(rng, 20, 6, {1}), 3, "basis");
  Stream bs = MakeBasisStream(basis);
  CHECK(StreamByteSize(bs) == BasisStreamByteSize(5, 3, 6));
  PcaBasis back = StreamBasis(bs);
  CHECK(back.components() == basis.components());
  CHECK(back.mean() == basis.mean());
}

TEST_CASE("Payload round trips and truncation over random payloads") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    SemanticPayload p = RandomPayload(rng);
    Bytes bytes = SerializePayload(p);
    CHECK(bytes.size() == PayloadByteSize(p));
    SemanticPayload back = DeserializePayload(bytes);
    CHECK(back == p);
    CHECK(SerializePayload(back) == bytes);
    if (i % 10 == 0) {
      for (std::size_t n = 0; n < bytes.size(); ++n) {
        CHECK_THROWS_AS(DeserializePayload(std::span(bytes.data(), n)), Error);
      }
    }
  }
}

TEST_CASE("Payload header errors are distinct") {
  Bytes bytes = SerializePayload(SemanticPayload{{MakeTextStream("hi")}});
  Bytes bad = bytes;
  bad[1] = 'X';
  CHECK(CodeOf([&] { DeserializePayload(bad); }) == ErrorCode::kBadMagic);
  bad = bytes;
  bad[4] = 2;
  CHECK(CodeOf([&] { DeserializePayload(bad); }) == ErrorCode::kVersionMismatch);
  CHECK(CodeOf([&] { DeserializePayload(std::span(bytes.data(), bytes.size() - 1)); }) ==
        ErrorCode::kTruncated);
  bad = bytes;
  bad.push_back(0);
  CHECK(CodeOf([&] { DeserializePayload(bad); }) == ErrorCode::kParse);
  bad = bytes;
  bad[6] = 9;
  CHECK(CodeOf([&] { DeserializePayload(bad); }) == ErrorCode::kParse);
}

TEST_CASE("Partial parse keeps the readable prefix") {
  SemanticPayload p{{MakeTextStream("one"), MakeTextStream("two"), MakeTextStream("three")}};
  Bytes bytes = SerializePayload(p);
  bytes.resize(bytes.size() - 2);
  PartialPayload part = DeserializePartial(bytes);
  CHECK(part.parsed == std::vector<bool>{true, true, false});
  REQUIRE(part.payload.streams.size() == 2);
  CHECK(part.payload.streams[1].data == "two");
  CHECK(part.byte_ranges[0] == std::pair<std::size_t, std::size_t>{6, 6 + 8});
  CHECK(part.error.has_value());
  CHECK(DeserializePartial(Bytes{1, 2}).parsed.empty());
}

TEST_CASE("DCT codec examples") {
  Image flat(24, 16, 1, 77.0);
  for (int q : {1, 50, 100}) {
    Image back = DctDecode(DctEncode(flat, q));
    for (double v : back.pixels) CHECK(std::abs(v - 77.0) <= 1.0);
  }
  Image ramp(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) ramp.at(x, y) = 16.0 * x + 8.0 * y;
  }
  Image back = DctDecode(DctEncode(ramp, 100));
  for (std::size_t i = 0; i < ramp.pixels.size(); ++i) {
    CHECK(std::abs(back.pixels[i] - ramp.pixels[i]) <= 1.0);
  }

  // Separable 1-D DCT-II written out directly.
  std::array<double, 64> block{};
  for (int i = 0; i < 64; ++i) block[i] = std::sin(i * 0.7) * 50;
  auto coefs = ForwardDct8x8(block);
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double sum = 0;
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          sum += block[y * 8 + x] * std::cos((2 * x + 1) * v * M_PI / 16) *
                 std::cos((2 * y + 1) * u * M_PI / 16);
        }
      }
      const double cu = u ? 1.0 : 1.0 / std::sqrt(2.0), cv = v ? 1.0 : 1.0 / std::sqrt(2.0);
      CHECK(coefs[u * 8 + v] == doctest::Approx(0.25 * cu * cv * sum).epsilon(1e-9));
    }
  }
  auto inv = InverseDct8x8(coefs);
  for (int i = 0; i < 64; ++i) CHECK(inv[i] == doctest::Approx(block[i]).epsilon(1e-9));

  Image camera = ReadPnm(testutil::Fixture("piqe/camera.pgm"));
  std::size_t prev = SIZE_MAX;
  for (int q = 90; q >= 10; q -= 10) {
    const std::size_t n = DctEncode(camera, q).size();
    CHECK(n <= prev);
    prev = n;
  }
  Bytes enc = DctEncode(camera, 50);
  CHECK(DctDecode(enc).width == 256);
  for (std::size_t n = 0; n < enc.size(); n += 97) {
    CHECK_THROWS_AS(DctDecode(std::span(enc.data(), n)), Error);
  }
  CHECK(CodeOf([&] { DctEncode(camera, 0); }) == ErrorCode::kInvalidArgument);
}
