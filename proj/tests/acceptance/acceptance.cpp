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


// Acceptance gate: one PASS/FAIL line per criterion with the measured value
// and the tolerance it was held to.
//
//   acceptance [--known-failure N]...
//
// Exit status is 0 when every criterion passes. A criterion named with
// --known-failure still prints its real verdict; it is excluded from the exit
// status only while it keeps failing (an unexpected pass is an error too).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "codec/payload.hpp"
#include "codec/pca.hpp"
#include "codec/quantizer.hpp"
#include "common/error.hpp"
#include "common/format.hpp"
#include "common/image.hpp"
#include "harness/config.hpp"
#include "harness/experiment.hpp"
#include "harness/results.hpp"
#include "metrics/flops.hpp"
#include "metrics/metrics.hpp"
#include "metrics/piqe.hpp"
#include "oracles.hpp"
#include "phy/ber.hpp"
#include "phy/ldpc.hpp"
#include "pipeline/adapter.hpp"
#include "pipeline/pipeline.hpp"
#include "pipeline/protocol.hpp"

namespace {

using namespace gsc;
using Clock = std::chrono::steady_clock;

std::string Fixture(const std::string& rel) { return std::string(GSC_FIXTURE_DIR) + "/" + rel; }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// ---- 1-3: channel coding ---------------------------------------------------

Verdict LdpcCorrectness() {
  const auto t0 = Clock::now();
  auto code = phy::CodeById("default");
  const oracle::DenseGf2 h(code->rows(), code->n());
  std::mt19937_64 rng(1);
  int parity_ok = 0, identity_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    phy::Bits m(code->k());
    for (auto& b : m) b = rng() & 1;
    phy::Bits c = code->Encode(m);
    bool zero = true;
    for (int s : h.Syndrome(c)) zero &= s == 0;
    parity_ok += zero;
    std::vector<double> llr(code->n());
    for (int j = 0; j < code->n(); ++j) llr[j] = c[j] ? -60.0 : 60.0;
    phy::DecodeResult r = phy::LdpcDecode(*code, llr);
    identity_ok += r.converged && r.message == m;
  }
  const double secs = Seconds(t0);
  return {parity_ok == 1000 && identity_ok == 1000 && secs < 10,
          "parity " + std::to_string(parity_ok) + "/1000, decode identity " +
              std::to_string(identity_ok) + "/1000, " + Fmt(secs) + " s; need all, < 10 s"};
}

Verdict OperatingPoint() {
  const auto t0 = Clock::now();
  auto code = phy::CodeById("default");
  phy::BerResult r =
      phy::MeasureBer(*code, phy::ChannelConfig{10.0, phy::Modulation::kBpsk, 1}, 1000000);
  const double secs = Seconds(t0);
  return {r.info_bits >= 1000000 && r.ber() < 1e-5 && secs < 120,
          "BER " + Fmt(r.ber()) + " over " + std::to_string(r.info_bits) + " bits, " +
              Fmt(secs) + " s; need < 1e-05, < 120 s"};
}

Verdict BerMonotone() {
  auto code = phy::CodeById("default");
  std::vector<double> ber;
  for (double snr : {-10.0, 0.0, 10.0}) {
    ber.push_back(
        phy::MeasureBer(*code, phy::ChannelConfig{snr, phy::Modulation::kBpsk, 1}, 200000).ber());
  }
  const bool monotone = ber[0] >= ber[1] && ber[1] >= ber[2];
  const bool near_half = std::abs(ber[0] - 0.5) <= 0.05;
  return {monotone && near_half, "BER at -10/0/10 dB = " + Fmt(ber[0]) + "/" + Fmt(ber[1]) + "/" +
                                     Fmt(ber[2]) + "; need non-increasing and |BER(-10) - 0.5| <= 0.05"};
}

// ---- 4-5: source coding ----------------------------------------------------

Verdict PcaChecks() {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const int d = 32;
  std::vector<std::vector<double>> rows(300, std::vector<double>(d));
  for (auto& r : rows) {
    for (int j = 0; j < d; ++j) r[j] = g(rng) * (8.0 / (1 + j)) + 0.05 * j;
  }
  auto nmse_at = [&](const codec::PcaBasis& b) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
      auto rec = b.Reconstruct(b.Project(r));
      x.insert(x.end(), r.begin(), r.end());
      y.insert(y.end(), rec.begin(), rec.end());
    }
    return oracle::Nmse(x, y);
  };
  codec::PcaBasis full = codec::FitBasis(rows, d, "acc");
  bool monotone = true;
  double prev = INFINITY;
  for (int k = 1; k <= d; ++k) {
    const double e = nmse_at(full.Truncated(k));
    monotone &= e <= prev + 1e-15;
    prev = e;
  }
  auto eig = oracle::JacobiEigen(oracle::Covariance(rows));
  double worst = 0;
  for (int r = 0; r < 8; ++r) {
    double dot = 0;
    for (int j = 0; j < d; ++j) dot += full.components()(r, j) * eig[r].second[j];
    const double sign = dot < 0 ? -1 : 1;
    for (int j = 0; j < d; ++j) {
      worst = std::max(worst, std::abs(full.components()(r, j) - sign * eig[r].second[j]));
    }
  }
  return {monotone && prev < 1e-10 && worst <= 1e-6,
          std::string("NMSE monotone in k: ") + (monotone ? "yes" : "no") + ", full-rank NMSE " +
              Fmt(prev) + " (< 1e-10), top-8 component deviation " + Fmt(worst) + " (<= 1e-6)"};
}

Verdict QuantizerBound() {
  std::mt19937_64 rng(5);
  double worst_ratio = 0;
  bool ok = true;
  for (int bits : {1, 4, 8}) {
    const float lo = -3.5f, hi = 7.25f;
    codec::QuantSpec q = codec::MakeQuantSpec(bits, {lo}, {hi});
    const double bound = (static_cast<double>(hi) - lo) / std::ldexp(1.0, bits + 1) + 1e-12;
    std::uniform_real_distribution<double> u(lo, hi);
    for (int i = 0; i < 10000; ++i) {
      std::vector<double> v{u(rng)};
      const double err = std::abs(codec::Dequantize(q, codec::Quantize(q, v))[0] - v[0]);
      ok &= err <= bound;
      worst_ratio = std::max(worst_ratio, err / bound);
    }
  }
  return {ok, "max error / bound = " + Fmt(worst_ratio) + " over 3 x 10^4 values; need <= 1"};
}

// ---- 6-9: pipeline and sweep ----------------------------------------------

std::vector<pipeline::Item>& Meeting() {
  static std::vector<pipeline::Item> items = pipeline::LoadDataset(Fixture("meeting"));
  return items;
}

Verdict EndToEndIdentity() {
  pipeline::PipelineConfig c;
  c.extractor = pipeline::ParseAdapterSpec("identity");
  c.generator = pipeline::ParseAdapterSpec("identity");
  c.task.bits = 16;
  c.channel.snr_db.reset();
  pipeline::GscPipeline p(c, nullptr, &Meeting());
  double worst = 0;
  for (std::size_t i = 0; i < Meeting().size(); ++i) {
    worst = std::max(worst, *p.Run(Meeting()[i], i, 1, std::nullopt).report.semantic_nmse);
  }
  return {worst < 1e-9, "worst semantic-NMSE " + Fmt(worst) + "; need < 1e-09"};
}

harness::ExperimentConfig MeetingConfig() {
  harness::ExperimentConfig c = harness::LoadConfig(Fixture("configs/meeting.json"));
  c.threads = 0;
  return c;
}

struct Sweep {
  harness::ResultSet results;
  harness::ResultSet noiseless;  // the gsc method only, noiseless channel
};

const Sweep& MeetingSweep() {
  static const Sweep sweep = [] {
    Sweep s;
    harness::ExperimentConfig c = MeetingConfig();
    s.results = harness::RunExperiment(c);
    harness::ExperimentConfig quiet = c;
    quiet.methods.clear();
    for (const auto& m : c.methods) {
      if (m.label == "gsc") quiet.methods.push_back(m);
    }
    quiet.methods[0].gsc.channel.snr_db.reset();
    s.noiseless = harness::RunExperiment(quiet);
    return s;
  }();
  return sweep;
}

std::vector<double> SeriesOf(const harness::ResultSet& r, const std::string& method) {
  std::vector<double> v;
  for (const auto& row : r.rows) {
    if (row.method == method) v.push_back(row.semantic_nmse.value_or(NAN));
  }
  return v;
}

std::string Join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : "/") + Fmt(x);
  return s;
}

Verdict ChannelRobustness() {
  const auto noisy = SeriesOf(MeetingSweep().results, "gsc");
  const auto clean = SeriesOf(MeetingSweep().noiseless, "gsc");
  double worst = 0;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    worst = std::max(worst, std::abs(noisy[i] - clean[i]) / clean[i]);
  }
  return {noisy.size() == 3 && clean.size() == 3 && worst < 0.05,
          "10 dB " + Join(noisy) + " vs noiseless " + Join(clean) + ", max relative gap " +
              Fmt(worst) + "; need < 0.05"};
}

Verdict RateDistortionTrend() {
  const auto v = SeriesOf(MeetingSweep().results, "traditional");
  const bool ok = v.size() == 3 && v[0] >= v[1] && v[1] >= v[2];
  return {ok, "traditional mean semantic-NMSE " + Join(v) + "; need non-increasing"};
}

Verdict Flatness() {
  const auto v = SeriesOf(MeetingSweep().results, "gsc");
  if (v.size() != 3) return {false, "expected three gsc rows"};
  const double hi = *std::max_element(v.begin(), v.end());
  const double lo = *std::min_element(v.begin(), v.end());
  const double spread = (hi - lo) / lo;
  return {spread < 0.15, "gsc semantic-NMSE " + Join(v) + ", spread (max-min)/min " + Fmt(spread) +
                             "; need < 0.15"};
}

// ---- 10-11: metrics --------------------------------------------------------

Verdict PiqeChecks() {
  std::ifstream in(Fixture("piqe/reference_scores.json"));
  auto ref = nlohmann::json::parse(in);
  double worst = 0;
  bool in_range = true;
  for (auto& [name, score] : ref.items()) {
    const double s = metrics::Piqe(ReadPnm(Fixture("piqe/" + name + ".pgm")));
    in_range &= s >= 0 && s <= 100;
    worst = std::max(worst, std::abs(s - score.get<double>()));
  }
  Image camera = ReadPnm(Fixture("piqe/camera.pgm"));
  const double clean = metrics::Piqe(camera);
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g(0.0, 25.0);
  for (double& v : camera.pixels) v = std::clamp(v + g(rng), 0.0, 255.0);
  const double noisy = metrics::Piqe(camera);
  in_range &= noisy >= 0 && noisy <= 100;
  return {in_range && noisy > clean && worst <= 2.0 && ref.size() == 5,
          "max |score - reference| " + Fmt(worst) + " on " + std::to_string(ref.size()) +
              " images (<= 2), camera clean " + Fmt(clean) + " < noisy " + Fmt(noisy)};
}

Verdict KlChecks() {
  std::vector<double> s{0.2, 1.5, 1.5, 3.0, -2.0};
  const double same = metrics::KlDivergenceHist(s, s);
  std::mt19937_64 rng(11);
  double min_kl = INFINITY;
  for (int t = 0; t < 1000; ++t) {
    std::normal_distribution<double> a(0, 1), b(std::uniform_real_distribution<double>(-1, 1)(rng), 1.5);
    std::vector<double> p(200), q(200);
    for (double& v : p) v = a(rng);
    for (double& v : q) v = b(rng);
    min_kl = std::min(min_kl, metrics::KlDivergenceHist(p, q));
  }
  std::vector<double> p(100, 0.0), q(100, 0.0);
  std::fill(q.begin() + 50, q.end(), 1.0);
  const double eps = 1e-9;
  const double analytic = metrics::KlDivergenceHist(p, q, 2, eps);
  const double gap = std::abs(analytic - std::log(2.0));
  return {std::abs(same) < 1e-12 && min_kl >= 0 && gap < 1e-6,
          "identical " + Fmt(same) + " (< 1e-12), min over 1000 pairs " + Fmt(min_kl) +
              " (>= 0), log 2 case off by " + Fmt(gap) + " (< 1e-6 at epsilon 1e-9)"};
}

// ---- 12-13: wire formats ---------------------------------------------------

codec::SemanticPayload RandomPayload(std::mt19937_64& rng) {
  codec::SemanticPayload p;
  for (int n = static_cast<int>(rng() % 6); n > 0; --n) {
    if (rng() % 3 == 0) {
      std::string text(rng() % 40, ' ');
      for (char& c : text) c = static_cast<char>(rng() % 256);
      p.streams.push_back(codec::MakeTextStream(text));
      continue;
    }
    const int rank = 1 + static_cast<int>(rng() % 6);
    const int count = static_cast<int>(rng() % 9);
    const int bits = 1 + static_cast<int>(rng() % 16);
    std::vector<float> lo(rank), hi(rank);
    for (int i = 0; i < rank; ++i) {
      lo[i] = static_cast<float>(static_cast<int>(rng() % 200) - 100);
      hi[i] = lo[i] + 1.0f + static_cast<float>(rng() % 50);
    }
    codec::Stream s;
    s.kind = rng() % 2 ? codec::StreamKind::kTask : codec::StreamKind::kPerceptual;
    s.basis_id = "b" + std::to_string(rng() % 1000);
    s.rank = static_cast<std::uint16_t>(rank);
    s.vector_count = static_cast<std::uint32_t>(count);
    s.quant = codec::MakeQuantSpec(bits, lo, hi);
    for (int i = 0; i < rank * count; ++i) s.codes.push_back(static_cast<std::uint32_t>(rng() % (1u << bits)));
    p.streams.push_back(std::move(s));
  }
  return p;
}

template <typename Fn>
bool Throws(Fn&& fn, std::optional<ErrorCode> want = std::nullopt) {
  try {
    fn();
  } catch (const Error& e) {
    return !want || e.code() == *want;
  }
  return false;
}

Verdict PayloadChecks() {
  std::mt19937_64 rng(12);
  int round_trips = 0;
  std::size_t truncations = 0, rejected = 0;
  for (int i = 0; i < 1000; ++i) {
    codec::SemanticPayload p = RandomPayload(rng);
    Bytes bytes = codec::SerializePayload(p);
    round_trips += codec::SerializePayload(codec::DeserializePayload(bytes)) == bytes &&
                   codec::DeserializePayload(bytes) == p;
    for (std::size_t n = 0; n < bytes.size(); ++n) {
      ++truncations;
      rejected += Throws([&] { codec::DeserializePayload(std::span(bytes.data(), n)); });
    }
  }
  return {round_trips == 1000 && rejected == truncations,
          std::to_string(round_trips) + "/1000 round trips, " + std::to_string(rejected) + "/" +
              std::to_string(truncations) + " truncations rejected; need all"};
}

Verdict AdapterChecks() {
  using namespace pipeline;
  Image img(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) img.at(x, y) = 100 + 50 * std::sin(x * 0.2) * std::cos(y * 0.15);
  }
  Meta meta{{"color", "red"}, {"object", "car"}, {"action", "moving"}, {"scene", "highway"}};
  int passed = 0;
  std::string failures;
  std::vector<Tensor> depth_task;
  for (const std::string& name : BuiltinAdapterNames()) {
    try {
      auto client = ConnectAdapter(ParseAdapterSpec(name));
      const AdapterInfo& info = client->Handshake();
      bool ok = info.name == name && !info.capabilities.empty();
      std::vector<Tensor> task;
      if (client->Has(kCapExtract)) {
        Extraction e = client->Extract(img, meta, 1);
        ok &= !e.task.empty() || e.text.has_value();
        task = e.task;
        if (name == "depth-proxy") depth_task = e.task;
      }
      if (client->Has(kCapGenerate)) {
        if (task.empty()) task = depth_task;
        Generation g = client->Generate(task, {}, std::nullopt, 1);
        ok &= g.image.has_value() && g.image->width == 64 && g.image->height == 64;
      }
      client->Shutdown();
      passed += ok;
      if (!ok) failures += " " + name;
    } catch (const Error& e) {
      failures += " " + name + "(" + e.what() + ")";
    }
  }
  const std::size_t total = BuiltinAdapterNames().size();

  Message m;
  m.header = {{"op", "hello"}, {"request_id", 1}};
  m.tensors.push_back(MakeTensor(DType::kF32, {2}, {1, 2}));
  Bytes frame = EncodeMessage(m);
  Bytes bad = frame;
  bad[0] ^= 0xff;
  bool named_offset = false;
  try {
    DecodeMessage(bad);
  } catch (const Error& e) {
    named_offset = e.code() == ErrorCode::kProtocol &&
                   std::string(e.what()).find("offset 0") != std::string::npos;
  }
  std::size_t cut_rejected = 0;
  for (std::size_t n = 0; n < frame.size(); ++n) {
    cut_rejected += Throws([&] { DecodeMessage(std::span(frame.data(), n)); }, ErrorCode::kProtocol);
  }
  const bool server_errors =
      DecodeMessage(MakeBuiltinAdapter("identity")->HandleFrame(bad)).header["op"] == "error";
  return {passed == static_cast<int>(total) && named_offset && cut_rejected == frame.size() &&
              server_errors,
          std::to_string(passed) + "/" + std::to_string(total) + " builtins conform" + failures +
              ", bad magic -> protocol error at offset 0: " + (named_offset ? "yes" : "no") +
              ", truncations rejected " + std::to_string(cut_rejected) + "/" +
              std::to_string(frame.size())};
}

// ---- 14-15: harness --------------------------------------------------------

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict HarnessDeterminism() {
  const std::string first = harness::ResultsCsv(MeetingSweep().results.rows);
  const std::string second = harness::ResultsCsv(harness::RunExperiment(MeetingConfig()).rows);

  using harness::AggregateRow;
  std::vector<AggregateRow> golden_rows{
      {"online_meeting", "traditional", 78600, 0.0521, 41.25, std::nullopt, 0.125, std::nullopt,
       1536000.0, 1},
      {"online_meeting", "gsc", 78600, 0.0133, 30.5, std::nullopt, 0.03125, std::nullopt, 2048.0, 1},
      {"odd,scenario", "say \"hi\"", std::nullopt, 1e-7, std::nullopt, std::nullopt, std::nullopt,
       0.0, std::nullopt, 2}};
  const bool golden = harness::ResultsCsv(golden_rows) == Slurp(Fixture("golden/results.csv"));
  return {first == second && golden,
          std::string("repeat sweep results.csv identical: ") + (first == second ? "yes" : "no") +
              ", golden CSV byte-exact: " + (golden ? "yes" : "no")};
}

Verdict FlopsChecks() {
  std::vector<metrics::Stage> toy{metrics::PcaProjectStage(64, 16, 100),
                                  metrics::QuantizeStage(16 * 100)};
  const std::uint64_t total = metrics::FlopsEstimate(toy);
  const std::uint64_t expected = 204800 + 2 * 1600;
  return {total == expected && metrics::StageFlops(toy[0]) == 204800,
          "toy pipeline " + std::to_string(total) + "; hand count " + std::to_string(expected)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-failure" && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--known-failure N]...\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"LDPC correctness", LdpcCorrectness},
      {"operating point at 10 dB", OperatingPoint},
      {"BER monotonicity", BerMonotone},
      {"PCA", PcaChecks},
      {"quantizer bound", QuantizerBound},
      {"end-to-end identity", EndToEndIdentity},
      {"channel robustness", ChannelRobustness},
      {"rate-distortion trend", RateDistortionTrend},
      {"GSC flatness", Flatness},
      {"PIQE", PiqeChecks},
      {"KL", KlChecks},
      {"payload serialization", PayloadChecks},
      {"adapter protocol", AdapterChecks},
      {"harness determinism", HarnessDeterminism},
      {"FLOPs estimator", FlopsChecks},
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const bool expected_fail = known.count(id) > 0;
    std::printf("%s criterion %d: %s (%s)%s\n", v.pass ? "PASS" : "FAIL", id,
                criteria[i].first.c_str(), v.detail.c_str(),
                expected_fail ? (v.pass ? " [listed as known failure but passed]"
                                        : " [known failure]")
                              : "");
    std::fflush(stdout);
    if (v.pass == expected_fail) ++unexpected;
  }
  return unexpected ? 1 : 0;
}
