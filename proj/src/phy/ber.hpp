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


#ifndef GSC_PHY_BER_HPP
#define GSC_PHY_BER_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "phy/channel.hpp"
#include "phy/ldpc.hpp"

namespace gsc::phy {

struct BerResult {
  std::string code_id;
  std::optional<double> snr_db;
  Modulation modulation = Modulation::kBpsk;
  std::uint64_t info_bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t decode_iterations = 0;

  double ber() const { return info_bits ? static_cast<double>(bit_errors) / info_bits : 0.0; }
  double bler() const { return frames ? static_cast<double>(frame_errors) / frames : 0.0; }
};

// Monte-Carlo over ceil(num_bits / k) random messages. Frame f draws its
// message and noise from MakeRng(config.seed, f), so counts do not depend on
// `threads` (0 = hardware concurrency).
BerResult MeasureBer(const LdpcCode& code, const ChannelConfig& config,
                     std::uint64_t num_bits, unsigned threads = 0,
                     int max_iters = kDefaultMaxIterations);

// CSV with header `snr_db,code_id,modulation,info_bits,bit_errors,ber,bler`.
// A noiseless row carries "noiseless" in the snr_db column.
void WriteBerCsv(std::ostream& os, const std::vector<BerResult>& rows);

}  // namespace gsc::phy

#endif  // GSC_PHY_BER_HPP
