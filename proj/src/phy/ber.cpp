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


#include "phy/ber.hpp"

#include "common/format.hpp"
#include "common/parallel.hpp"
#include "common/rng.hpp"

namespace gsc::phy {

BerResult MeasureBer(const LdpcCode& code, const ChannelConfig& config,
                     std::uint64_t num_bits, unsigned threads, int max_iters) {
  ValidateChannel(config);
  const std::uint64_t k = static_cast<std::uint64_t>(code.k());
  const std::uint64_t frames = (num_bits + k - 1) / k;
  std::vector<std::uint64_t> errors(frames, 0);
  std::vector<std::uint32_t> iters(frames, 0);

  ParallelFor(frames, threads, [&](std::size_t f) {
    Rng rng = MakeRng(config.seed, f);
    Bits msg(k);
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng() >> 63);
    Bits cw = code.Encode(msg);
    auto rx = Awgn(Modulate(cw, config.modulation), config, rng);
    auto llr = LlrFromSymbols(rx, config.snr_db, config.modulation);
    auto res = LdpcDecode(code, llr, max_iters);
    std::uint64_t e = 0;
    for (std::uint64_t i = 0; i < k; ++i) e += res.message[i] != msg[i];
    errors[f] = e;
    iters[f] = static_cast<std::uint32_t>(res.iterations);
  });

  BerResult r;
  r.code_id = code.code_id();
  r.snr_db = config.snr_db;
  r.modulation = config.modulation;
  r.frames = frames;
  r.info_bits = frames * k;
  for (std::uint64_t f = 0; f < frames; ++f) {
    r.bit_errors += errors[f];
    r.frame_errors += errors[f] > 0;
    r.decode_iterations += iters[f];
  }
  return r;
}

void WriteBerCsv(std::ostream& os, const std::vector<BerResult>& rows) {
  os << "snr_db,code_id,modulation,info_bits,bit_errors,ber,bler\n";
  for (const auto& r : rows) {
    os << (r.snr_db ? FormatDouble(*r.snr_db) : "noiseless") << ',' << r.code_id << ','
       << ModulationName(r.modulation) << ',' << r.info_bits << ',' << r.bit_errors << ','
       << FormatDouble(r.ber()) << ',' << FormatDouble(r.bler()) << '\n';
  }
}

}  // namespace gsc::phy
