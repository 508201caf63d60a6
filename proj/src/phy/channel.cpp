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


#include "phy/channel.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "common/error.hpp"

namespace gsc::phy {

namespace {

constexpr double kQpskAmp = 0.70710678118654752440;

double AmplitudeOf(Modulation m) { return m == Modulation::kBpsk ? 1.0 : kQpskAmp; }

}  // namespace

const char* ModulationName(Modulation m) {
  return m == Modulation::kBpsk ? "BPSK" : "QPSK";
}

Modulation ParseModulation(std::string_view name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "BPSK") return Modulation::kBpsk;
  if (up == "QPSK") return Modulation::kQpsk;
  Fail(ErrorCode::kInvalidArgument, "unknown modulation '" + std::string(name) + "'");
}

int BitsPerSymbol(Modulation m) { return m == Modulation::kBpsk ? 1 : 2; }

void ValidateChannel(const ChannelConfig& config) {
  if (config.snr_db && !std::isfinite(*config.snr_db)) {
    Fail(ErrorCode::kInvalidArgument, "snr_db must be finite or absent (noiseless)");
  }
}

std::vector<Symbol> Modulate(std::span<const std::uint8_t> bits, Modulation m) {
  std::vector<Symbol> out;
  if (m == Modulation::kBpsk) {
    out.reserve(bits.size());
    for (auto b : bits) out.emplace_back((b & 1) ? -1.0 : 1.0, 0.0);
    return out;
  }
  if (bits.size() % 2 != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "QPSK needs an even bit count, got " + std::to_string(bits.size()));
  }
  out.reserve(bits.size() / 2);
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    out.emplace_back((bits[i] & 1) ? -kQpskAmp : kQpskAmp,
                     (bits[i + 1] & 1) ? -kQpskAmp : kQpskAmp);
  }
  return out;
}

std::vector<Symbol> Awgn(std::span<const Symbol> symbols, const ChannelConfig& config,
                         Rng& rng) {
  ValidateChannel(config);
  std::vector<Symbol> out(symbols.begin(), symbols.end());
  if (config.noiseless()) return out;
  const double snr = std::pow(10.0, *config.snr_db / 10.0);
  std::normal_distribution<double> noise(0.0, std::sqrt(0.5 / snr));
  for (auto& s : out) {
    double re = noise(rng);
    double im = noise(rng);
    s += Symbol(re, im);
  }
  return out;
}

std::vector<Symbol> Awgn(std::span<const Symbol> symbols, const ChannelConfig& config) {
  Rng rng = MakeRng(config.seed, 0);
  return Awgn(symbols, config, rng);
}

std::vector<double> LlrFromSymbols(std::span<const Symbol> symbols,
                                   std::optional<double> snr_db, Modulation m) {
  const double snr = std::pow(10.0, snr_db.value_or(kNoiselessSnrDb) / 10.0);
  const double scale = 4.0 * AmplitudeOf(m) * snr;
  std::vector<double> llr;
  llr.reserve(symbols.size() * BitsPerSymbol(m));
  for (const auto& y : symbols) {
    llr.push_back(scale * y.real());
    if (m == Modulation::kQpsk) llr.push_back(scale * y.imag());
  }
  return llr;
}

double EbN0FromEsN0(double es_n0_db, double code_rate, Modulation m) {
  if (!(code_rate > 0)) Fail(ErrorCode::kInvalidArgument, "code rate must be positive");
  return es_n0_db - 10.0 * std::log10(code_rate * BitsPerSymbol(m));
}

double EsN0FromEbN0(double eb_n0_db, double code_rate, Modulation m) {
  if (!(code_rate > 0)) Fail(ErrorCode::kInvalidArgument, "code rate must be positive");
  return eb_n0_db + 10.0 * std::log10(code_rate * BitsPerSymbol(m));
}

}  // namespace gsc::phy
