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
#include <sstream>

#include "common/rng.hpp"
#include "oracles.hpp"
#include "phy/ber.hpp"
#include "phy/channel.hpp"
#include "phy/frame.hpp"
#include "phy/ldpc.hpp"
#include "test_util.hpp"

using namespace gsc;
using namespace gsc::phy;
using testutil::CodeOf;
using testutil::MessageOf;

namespace {

Bits RandomBits(Rng& rng, std::size_t n) {
  Bits b(n);
  for (auto& x : b) x = rng() & 1;
  return b;
}

bool ZeroSyndrome(const LdpcCode& code, const Bits& word) {
  for (int s : oracle::Syndrome(code.rows(), code.n(), word)) {
    if (s) return false;
  }
  return true;
}

const char* kToyAlist =
    "6 3\n"
    "2 3\n"
    "1 1 2 2 1 1\n"
    "3 3 2\n"
    "1 0\n2 0\n1 3\n2 3\n1 0\n2 0\n"
    "1 3 5\n2 4 6\n3 4 0\n";

}  // namespace

TEST_CASE("QC construction encodes onto the parity kernel") {
  QcParams p{8, 4, 8, 3, 1};
  LdpcCode code = MakeRegularQcLdpc(p);
  CHECK(code.n() == 64);
  CHECK(code.k() == 32);
  CHECK(code.rate() == 0.5);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    Bits m = RandomBits(rng, code.k());
    Bits c = code.Encode(m);
    CHECK(ZeroSyndrome(code, c));
    CHECK(code.IsCodeword(c));
    for (int j = 0; j < code.k(); ++j) CHECK(c[code.info_positions()[j]] == m[j]);
    CHECK(code.ExtractMessage(c) == m);
  }
  CHECK(ToAlist(MakeRegularQcLdpc(p)) == ToAlist(code));
  QcParams other = p;
  other.seed = 2;
  CHECK(ToAlist(MakeRegularQcLdpc(other)) != ToAlist(code));
}

TEST_CASE("Default code properties") {
  auto code = CodeById("default");
  CHECK(code->n() == 8192);
  CHECK(code->k() == 4096);
  CHECK(code->code_id() == "qc:z=64:mb=64:nb=128:dv=3:seed=1");
  CHECK(CodeById("qc:z=64:mb=64:nb=128:dv=3:seed=1") == code);
  // Column weight 3, row weight 6.
  std::vector<int> col(code->n());
  for (const auto& r : code->rows()) {
    CHECK(r.size() == 6);
    for (int j : r) ++col[j];
  }
  for (int c : col) CHECK(c == 3);
  Rng rng(8);
  for (int i = 0; i < 20; ++i) CHECK(ZeroSyndrome(*code, code->Encode(RandomBits(rng, code->k()))));
}

TEST_CASE("Exhaustive enumeration of a z=4 code") {
  LdpcCode code = MakeRegularQcLdpc({4, 4, 8, 3, 7});
  REQUIRE(code.k() == 16);
  Bits m(16);
  for (std::uint32_t v = 0; v < (1u << 16); ++v) {
    for (int j = 0; j < 16; ++j) m[j] = (v >> j) & 1;
    if (!ZeroSyndrome(code, code.Encode(m))) FAIL("codeword " << v << " violates parity");
  }
  CHECK(CodeOf([] { MakeRegularQcLdpc({4, 3, 6, 3, 1}); }) == ErrorCode::kRankDeficient);
}

TEST_CASE("Encoder linearity and length checks") {
  auto code = CodeById("small");
  CHECK(code->Encode(Bits(code->k(), 0)) == Bits(code->n(), 0));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    Bits a = code->Encode(RandomBits(rng, code->k()));
    Bits b = code->Encode(RandomBits(rng, code->k()));
    for (int j = 0; j < code->n(); ++j) a[j] ^= b[j];
    CHECK(code->IsCodeword(a));
  }
  CHECK(CodeOf([&] { code->Encode(Bits(code->k() + 1)); }) == ErrorCode::kDimensionMismatch);
  CHECK(CodeOf([&] { LdpcDecode(*code, std::vector<double>(3)); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("alist parsing") {
  LdpcCode toy = LoadAlist(kToyAlist);
  CHECK(toy.n() == 6);
  CHECK(toy.check_count() == 3);
  CHECK(toy.rows()[0] == std::vector<int>{0, 2, 4});
  CHECK(toy.rows()[1] == std::vector<int>{1, 3, 5});
  CHECK(toy.rows()[2] == std::vector<int>{2, 3});
  CHECK(toy.k() == 3);
  CHECK(ToAlist(toy) == kToyAlist);

  auto code = CodeById("small");
  LdpcCode back = LoadAlist(ToAlist(*code));
  CHECK(back.rows() == code->rows());
  CHECK(back.k() == code->k());
  CHECK(ToAlist(back) == ToAlist(*code));

  std::string bad = kToyAlist;
  bad.replace(bad.find("1 3 5"), 5, "1 3 7");
  CHECK(CodeOf([&] { LoadAlist(bad); }) == ErrorCode::kParse);
  CHECK(MessageOf([&] { LoadAlist(bad); }).find("line 11") != std::string::npos);
  bad = kToyAlist;
  bad.replace(bad.find("1 0\n2 0\n1 3"), 3, "0 0");
  CHECK(MessageOf([&] { LoadAlist(bad); }).find("line 5") != std::string::npos);
  CHECK(CodeOf([] { LoadAlist("6 3\n2 3\n1 1\n"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] { LoadAlist("6 x\n"); }) == ErrorCode::kParse);
  bad = kToyAlist;
  bad += "1\n";
  CHECK(CodeOf([&] { LoadAlist(bad); }) == ErrorCode::kParse);
}

TEST_CASE("Modulation and LLR conventions") {
  auto syms = Modulate(Bits{0, 1}, Modulation::kBpsk);
  CHECK(syms == std::vector<Symbol>{{1, 0}, {-1, 0}});
  auto q = Modulate(Bits{0, 0, 1, 1, 0, 1}, Modulation::kQpsk);
  REQUIRE(q.size() == 3);
  for (const auto& s : q) CHECK(std::norm(s) == doctest::Approx(1.0));
  CHECK(q[0].real() > 0);
  CHECK(q[1].imag() < 0);
  CHECK(q[2].real() > 0);
  CHECK(q[2].imag() < 0);
  CHECK(CodeOf([] { Modulate(Bits{0, 1, 1}, Modulation::kQpsk); }) == ErrorCode::kInvalidArgument);
  CHECK(ParseModulation("qpsk") == Modulation::kQpsk);
  CHECK(CodeOf([] { ParseModulation("16qam"); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { ValidateChannel({NAN}); }) == ErrorCode::kInvalidArgument);

  Rng rng(2);
  for (Modulation m : {Modulation::kBpsk, Modulation::kQpsk}) {
    Bits bits = RandomBits(rng, 1000);
    ChannelConfig cfg{std::nullopt, m, 4};
    auto noisy = Awgn(Modulate(bits, m), cfg);
    CHECK(noisy == Modulate(bits, m));
    auto llr = LlrFromSymbols(noisy, std::nullopt, m);
    for (std::size_t i = 0; i < bits.size(); ++i) CHECK((llr[i] < 0) == (bits[i] == 1));
  }
  std::vector<Symbol> y{{0.3, 0}};
  double prev = 0;
  for (double snr : {-5.0, 0.0, 5.0}) {
    double l = LlrFromSymbols(y, snr, Modulation::kBpsk)[0];
    CHECK(l == doctest::Approx(4 * 0.3 * std::pow(10, snr / 10)));
    CHECK(l > prev);
    prev = l;
  }
  CHECK(EbN0FromEsN0(10, 0.5, Modulation::kBpsk) == doctest::Approx(10 + 10 * std::log10(2.0)));
  CHECK(EsN0FromEbN0(EbN0FromEsN0(3, 0.5, Modulation::kQpsk), 0.5, Modulation::kQpsk) ==
        doctest::Approx(3));
}

TEST_CASE("AWGN noise power matches the SNR") {
  std::vector<Symbol> ones(1000000, Symbol(1, 0));
  for (double snr : {10.0, 0.0}) {
    auto noisy = Awgn(ones, ChannelConfig{snr, Modulation::kBpsk, 11});
    double power = 0;
    for (std::size_t i = 0; i < ones.size(); ++i) power += std::norm(noisy[i] - ones[i]);
    power /= ones.size();
    const double measured = -10 * std::log10(power);
    CHECK(std::abs(measured - snr) < 0.1);
    if (snr == 0.0) CHECK(std::abs(power - 1.0) < 0.02);
  }
  auto a = Awgn(ones, ChannelConfig{3.0, Modulation::kBpsk, 5});
  CHECK(a == Awgn(ones, ChannelConfig{3.0, Modulation::kBpsk, 5}));
  CHECK(a != Awgn(ones, ChannelConfig{3.0, Modulation::kBpsk, 6}));
}

TEST_CASE("Decoder behavior") {
  auto code = CodeById("default");
  Rng rng(6);
  Bits m = RandomBits(rng, code->k());
  Bits c = code->Encode(m);
  std::vector<double> llr(code->n());
  for (int i = 0; i < code->n(); ++i) llr[i] = c[i] ? -20.0 : 20.0;
  DecodeResult r = LdpcDecode(*code, llr);
  CHECK(r.converged);
  CHECK(r.iterations <= 1);
  CHECK(r.message == m);

  llr[100] = -llr[100];
  r = LdpcDecode(*code, llr);
  CHECK(r.converged);
  CHECK(r.message == m);
  CHECK(r.codeword == c);

  // Pure noise: not a codeword, still returns a full-length estimate.
  std::normal_distribution<double> g;
  for (auto& l : llr) l = g(rng) * 0.1;
  r = LdpcDecode(*code, llr, 5);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5);
  CHECK(r.message.size() == static_cast<std::size_t>(code->k()));
}

TEST_CASE("Framing pads to whole codewords") {
  auto code = CodeById("small");
  Bytes payload{0x80, 0x01, 0xff, 0x00, 0x5a};
  CHECK(BytesToBits(Bytes{0x80}) == Bits{1, 0, 0, 0, 0, 0, 0, 0});
  CHECK(BitsToBytes(BytesToBits(payload)) == payload);
  CHECK(CodeOf([] { BitsToBytes(Bits{1, 0}); }) == ErrorCode::kInvalidArgument);

  CodedFrame f = EncodeFrame(*code, payload);
  CHECK(f.payload_bits == 40);
  CHECK(f.padding_bits == 24);
  CHECK(f.bits.size() == 128);
  CHECK(f.codeword_count(*code) == 2);

  Bytes big(1000);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<std::uint8_t>(i * 37);
  f = EncodeFrame(*code, big);
  CHECK(f.bits.size() % code->n() == 0);
  CHECK(f.codeword_count(*code) == 250);
  CHECK(f.padding_bits == 0);
  FrameDecode d = DecodeFrame(*code, f, ChannelLlrs(f, *code, ChannelConfig{}, 0));
  CHECK(d.payload == big);
  CHECK(d.failed_codewords == 0);
  CHECK(CodeOf([&] { DecodeFrame(*code, f, std::vector<double>(10)); }) ==
        ErrorCode::kDimensionMismatch);

  CodedFrame empty = EncodeFrame(*code, Bytes{});
  CHECK(empty.bits.empty());
  CHECK(DecodeFrame(*code, empty, std::vector<double>{}).payload.empty());

  ChannelConfig loud{-10.0, Modulation::kBpsk, 3};
  auto l1 = ChannelLlrs(f, *code, loud, 7);
  CHECK(l1 == ChannelLlrs(f, *code, loud, 7));
  CHECK(l1 != ChannelLlrs(f, *code, loud, 8));
  d = DecodeFrame(*code, f, l1);
  CHECK(d.failed_codewords > 0);
  CHECK(d.payload.size() == big.size());
}

TEST_CASE("BER measurement") {
  auto code = CodeById("small");
  BerResult clean = MeasureBer(*code, ChannelConfig{}, 10000);
  CHECK(clean.ber() == 0.0);
  CHECK(clean.frames == 313);
  CHECK(clean.info_bits == 313 * 32);

  ChannelConfig cfg{0.0, Modulation::kBpsk, 9};
  BerResult a = MeasureBer(*code, cfg, 20000, 1);
  BerResult b = MeasureBer(*code, cfg, 20000, 3);
  CHECK(a.bit_errors == b.bit_errors);
  CHECK(a.frame_errors == b.frame_errors);

  auto big = CodeById("default");
  double prev = 1.0;
  for (double snr : {-10.0, 0.0, 10.0}) {
    BerResult r = MeasureBer(*big, ChannelConfig{snr, Modulation::kBpsk, 1}, 40000);
    CHECK(r.ber() <= prev);
    prev = r.ber();
  }
  CHECK(prev == 0.0);

  // Uncoded hard decisions at -10 dB follow Q(sqrt(2 Es/N0)).
  Rng rng(4);
  Bits bits = RandomBits(rng, 200000);
  auto llr = LlrFromSymbols(Awgn(Modulate(bits, Modulation::kBpsk),
                                 ChannelConfig{-10.0, Modulation::kBpsk, 2}),
                            -10.0, Modulation::kBpsk);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) errors += (llr[i] < 0) != (bits[i] == 1);
  CHECK(static_cast<double>(errors) / bits.size() ==
        doctest::Approx(oracle::Q(std::sqrt(0.2))).epsilon(0.02));

  std::ostringstream os;
  WriteBerCsv(os, {clean});
  CHECK(os.str() ==
        "snr_db,code_id,modulation,info_bits,bit_errors,ber,bler\n"
        "noiseless,qc:z=8:mb=4:nb=8:dv=3:seed=1,BPSK,10016,0,0,0\n");
}
