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


// Modulation and AWGN channel.
//
// SNR is Es/N0 per channel use. Symbols have unit average energy; noise adds
// N0/2 = 1 / (2 * snr_linear) variance to each real dimension. BPSK maps
// 0 -> +1, 1 -> -1 on the in-phase axis. QPSK is Gray mapped: bit pairs
// (b0, b1) drive the in-phase and quadrature signs at amplitude 1/sqrt(2).
// LLRs are log(P(b=0|y) / P(b=1|y)) = 4 * a * snr_linear * y for a component
// of amplitude a, so positive values favor bit 0.

#ifndef GSC_PHY_CHANNEL_HPP
#define GSC_PHY_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "common/rng.hpp"

namespace gsc::phy {

enum class Modulation { kBpsk, kQpsk };

const char* ModulationName(Modulation m);  // "BPSK" / "QPSK"
// Case-insensitive; throws kInvalidArgument.
Modulation ParseModulation(std::string_view name);
int BitsPerSymbol(Modulation m);

struct ChannelConfig {
  std::optional<double> snr_db;  // nullopt = noiseless
  Modulation modulation = Modulation::kBpsk;
  std::uint64_t seed = 1;

  bool noiseless() const { return !snr_db.has_value(); }
};

// Throws kInvalidArgument for a non-finite SNR.
void ValidateChannel(const ChannelConfig& config);

using Symbol = std::complex<double>;

// Throws kInvalidArgument for an odd bit count under QPSK.
std::vector<Symbol> Modulate(std::span<const std::uint8_t> bits, Modulation m);

// Adds noise drawn from `rng`; a noiseless config returns the input.
std::vector<Symbol> Awgn(std::span<const Symbol> symbols, const ChannelConfig& config,
                         Rng& rng);
// Same, with a generator seeded from config.seed.
std::vector<Symbol> Awgn(std::span<const Symbol> symbols, const ChannelConfig& config);

// SNR assumed by the receiver when the channel is noiseless: large enough
// that LLR magnitudes dominate any decoder arithmetic, still finite.
inline constexpr double kNoiselessSnrDb = 60.0;

std::vector<double> LlrFromSymbols(std::span<const Symbol> symbols,
                                   std::optional<double> snr_db, Modulation m);

// Eb/N0 = Es/N0 - 10 log10(rate * bits_per_symbol), all in dB.
double EbN0FromEsN0(double es_n0_db, double code_rate, Modulation m);
double EsN0FromEbN0(double eb_n0_db, double code_rate, Modulation m);

}  // namespace gsc::phy

#endif  // GSC_PHY_CHANNEL_HPP
