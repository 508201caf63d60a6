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


#include "gsc/gsc.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <sstream>
#include <string>

#include <json.hpp>

#include "common/error.hpp"
#include "harness/experiment.hpp"
#include "metrics/metrics.hpp"
#include "metrics/piqe.hpp"
#include "phy/ber.hpp"
#include "phy/ldpc.hpp"
#include "pipeline/adapter.hpp"

struct gsc_code {
  std::shared_ptr<const gsc::phy::LdpcCode> code;
};

struct gsc_experiment {
  gsc::harness::ExperimentConfig config;
  std::string output;
};

struct gsc_results {
  gsc::harness::ResultSet results;
};

namespace {

thread_local std::string g_last_error;

gsc_status Fail(gsc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, mapping exceptions to status codes.
template <typename Fn>
gsc_status Guard(Fn&& fn) {
  try {
    fn();
    return GSC_OK;
  } catch (const gsc::Error& e) {
    return Fail(static_cast<gsc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GSC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(GSC_E_INTERNAL, e.what());
  }
}

void Require(bool cond, const char* what) {
  if (!cond) gsc::Fail(gsc::ErrorCode::kInvalidArgument, what);
}

char* Dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

gsc::phy::ChannelConfig Channel(double snr_db, const char* modulation, std::uint64_t seed) {
  gsc::phy::ChannelConfig c;
  if (std::isnan(snr_db)) {
    c.snr_db.reset();
  } else {
    c.snr_db = snr_db;
  }
  c.modulation = gsc::phy::ParseModulation(modulation ? modulation : "bpsk");
  c.seed = seed;
  gsc::phy::ValidateChannel(c);
  return c;
}

gsc::Image Gradient(int w, int h) {
  gsc::Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.at(x, y) = 255.0 * (x + y) / (w + h - 2);
  }
  return img;
}

}  // namespace

extern "C" {

const char* gsc_version(void) { return gsc::harness::kToolVersion; }

const char* gsc_status_name(gsc_status status) {
  if (status == GSC_OK) return "ok";
  if (status == GSC_E_INTERNAL) return "internal";
  return gsc::ErrorCodeName(static_cast<gsc::ErrorCode>(status));
}

const char* gsc_last_error(void) { return g_last_error.c_str(); }

void gsc_free(void* ptr) { std::free(ptr); }

gsc_status gsc_code_load(const char* code_id, gsc_code** out) {
  return Guard([&] {
    Require(code_id && out, "null argument");
    *out = nullptr;
    *out = new gsc_code{gsc::phy::CodeById(code_id)};
  });
}

gsc_status gsc_code_from_alist(const char* alist_text, gsc_code** out) {
  return Guard([&] {
    Require(alist_text && out, "null argument");
    *out = nullptr;
    *out = new gsc_code{
        std::make_shared<const gsc::phy::LdpcCode>(gsc::phy::LoadAlist(alist_text))};
  });
}

void gsc_code_free(gsc_code* code) { delete code; }

size_t gsc_code_n(const gsc_code* code) { return code ? code->code->n() : 0; }
size_t gsc_code_k(const gsc_code* code) { return code ? code->code->k() : 0; }
const char* gsc_code_id(const gsc_code* code) {
  return code ? code->code->code_id().c_str() : "";
}

gsc_status gsc_code_to_alist(const gsc_code* code, char** out) {
  return Guard([&] {
    Require(code && out, "null argument");
    *out = Dup(gsc::phy::ToAlist(*code->code));
  });
}

gsc_status gsc_code_encode(const gsc_code* code, const uint8_t* message, uint8_t* codeword) {
  return Guard([&] {
    Require(code && message && codeword, "null argument");
    const auto& c = *code->code;
    auto cw = c.Encode(std::span(message, static_cast<std::size_t>(c.k())));
    std::memcpy(codeword, cw.data(), cw.size());
  });
}

gsc_status gsc_code_check(const gsc_code* code, const uint8_t* codeword, int* ok) {
  return Guard([&] {
    Require(code && codeword && ok, "null argument");
    const auto& c = *code->code;
    *ok = c.IsCodeword(std::span(codeword, static_cast<std::size_t>(c.n()))) ? 1 : 0;
  });
}

gsc_status gsc_code_decode(const gsc_code* code, const double* llrs, int max_iters,
                           uint8_t* message, int* converged, int* iterations) {
  return Guard([&] {
    Require(code && llrs && message, "null argument");
    Require(max_iters >= 0, "max_iters must be non-negative");
    const auto& c = *code->code;
    auto r = gsc::phy::LdpcDecode(c, std::span(llrs, static_cast<std::size_t>(c.n())), max_iters);
    std::memcpy(message, r.message.data(), r.message.size());
    if (converged) *converged = r.converged ? 1 : 0;
    if (iterations) *iterations = r.iterations;
  });
}

gsc_status gsc_ber_measure(const gsc_code* code, double snr_db, const char* modulation,
                           uint64_t info_bits, uint64_t seed, unsigned threads,
                           gsc_ber_point* out) {
  return Guard([&] {
    Require(code && out, "null argument");
    auto r = gsc::phy::MeasureBer(*code->code, Channel(snr_db, modulation, seed), info_bits,
                                  threads);
    out->snr_db = r.snr_db ? *r.snr_db : std::nan("");
    out->info_bits = r.info_bits;
    out->bit_errors = r.bit_errors;
    out->frames = r.frames;
    out->frame_errors = r.frame_errors;
    out->ber = r.ber();
    out->bler = r.bler();
  });
}

gsc_status gsc_ber_sweep_csv(const gsc_code* code, const double* snr_db, size_t count,
                             const char* modulation, uint64_t info_bits, uint64_t seed,
                             unsigned threads, char** csv) {
  return Guard([&] {
    Require(code && csv && (snr_db || count == 0), "null argument");
    std::vector<gsc::phy::BerResult> rows;
    for (size_t i = 0; i < count; ++i) {
      rows.push_back(gsc::phy::MeasureBer(*code->code, Channel(snr_db[i], modulation, seed),
                                          info_bits, threads));
    }
    std::ostringstream os;
    gsc::phy::WriteBerCsv(os, rows);
    *csv = Dup(os.str());
  });
}

gsc_status gsc_nmse(const double* x, const double* x_hat, size_t count, double* out) {
  return Guard([&] {
    Require(x && x_hat && out, "null argument");
    *out = gsc::metrics::Nmse(std::span(x, count), std::span(x_hat, count));
  });
}

gsc_status gsc_kl_divergence(const double* p_samples, size_t p_count, const double* q_samples,
                             size_t q_count, int bins, double* out) {
  return Guard([&] {
    Require(p_samples && q_samples && out, "null argument");
    Require(bins > 0, "bins must be positive");
    *out = gsc::metrics::KlDivergenceHist(std::span(p_samples, p_count),
                                          std::span(q_samples, q_count), bins);
  });
}

gsc_status gsc_piqe(const double* pixels, int width, int height, double* out) {
  return Guard([&] {
    Require(pixels && out, "null argument");
    Require(width > 0 && height > 0, "image dimensions must be positive");
    gsc::Image img(width, height);
    std::memcpy(img.pixels.data(), pixels, img.pixels.size() * sizeof(double));
    *out = gsc::metrics::Piqe(img);
  });
}

gsc_status gsc_cer(const char* reference, const char* hypothesis, double* out) {
  return Guard([&] {
    Require(reference && hypothesis && out, "null argument");
    *out = gsc::metrics::CharacterErrorRate(reference, hypothesis);
  });
}

gsc_status gsc_adapters_list(char** out) {
  return Guard([&] {
    Require(out, "null argument");
    std::string s;
    for (const auto& n : gsc::pipeline::BuiltinAdapterNames()) s += n + "\n";
    *out = Dup(s);
  });
}

gsc_status gsc_adapter_check(const char* spec_text, char** report) {
  using nlohmann::ordered_json;
  namespace gp = gsc::pipeline;
  bool all_ok = true;
  gsc_status st = Guard([&] {
    Require(spec_text && report, "null argument");
    gp::AdapterSpec spec = gp::ParseAdapterSpec(spec_text);
    auto client = gp::ConnectAdapter(spec);
    const gp::AdapterInfo& info = client->Handshake();
    ordered_json j;
    j["adapter"] = spec.ToString();
    j["name"] = info.name;
    j["capabilities"] = info.capabilities;
    j["stochastic"] = info.stochastic;
    ordered_json checks = ordered_json::array();
    auto check = [&](const char* name, auto&& body) {
      ordered_json c;
      c["check"] = name;
      try {
        c["detail"] = body();
        c["ok"] = true;
      } catch (const std::exception& e) {
        c["detail"] = e.what();
        c["ok"] = false;
        all_ok = false;
      }
      checks.push_back(c);
    };
    const gsc::Image frame = Gradient(64, 64);
    const gp::Meta meta{{"color", "gray"}, {"object", "gradient"}};
    auto dims = [](const gsc::Tensor& t) {
      std::string s = "[";
      for (std::size_t i = 0; i < t.dims.size(); ++i) s += (i ? "," : "") + std::to_string(t.dims[i]);
      return s + "]";
    };
    std::optional<gp::Extraction> ex;
    if (client->Has(gp::kCapExtract)) {
      check("extract", [&] {
        ex = client->Extract(frame, meta, 1);
        std::string d = std::to_string(ex->task.size()) + " task, " +
                        std::to_string(ex->perceptual.size()) + " perceptual tensors";
        for (const auto& t : ex->task) d += " " + dims(t);
        if (ex->task.empty() && ex->perceptual.empty() && !ex->text) {
          gsc::Fail(gsc::ErrorCode::kAdapter, "extract returned nothing");
        }
        if (ex->text) d += ", text \"" + *ex->text + "\"";
        return d;
      });
    }
    if (client->Has(gp::kCapGenerate)) {
      check("generate", [&] {
        std::vector<gsc::Tensor> task, perceptual;
        std::optional<std::string> text;
        if (ex && !ex->task.empty()) {
          task = ex->task;
          perceptual = ex->perceptual;
          text = ex->text;
        } else {
          // A 16x16 map: the smallest input every builtin generator accepts.
          task.push_back(gp::ImageToTensor(Gradient(16, 16)));
        }
        auto g = client->Generate(task, perceptual, text, 1);
        if (!g.image && !g.text) gsc::Fail(gsc::ErrorCode::kAdapter, "generate returned nothing");
        return g.image ? "image " + std::to_string(g.image->width) + "x" +
                             std::to_string(g.image->height)
                       : "text \"" + *g.text + "\"";
      });
    }
    if (client->Has(gp::kCapEmbed)) {
      check("embed", [&] {
        auto e = client->Embed(frame, meta, 1);
        if (e.vector.empty()) gsc::Fail(gsc::ErrorCode::kAdapter, "embed returned an empty vector");
        return "vector of " + std::to_string(e.vector.size());
      });
    }
    j["checks"] = checks;
    j["ok"] = all_ok;
    *report = Dup(j.dump(2));
  });
  if (st == GSC_OK && !all_ok) return Fail(GSC_E_ADAPTER, "adapter failed conformance checks");
  return st;
}

gsc_status gsc_adapter_serve(const char* name, int in_fd, int out_fd, int* exit_code) {
  return Guard([&] {
    Require(name && exit_code, "null argument");
    auto server = gsc::pipeline::MakeBuiltinAdapter(name);
    *exit_code = gsc::pipeline::ServeStream(*server, in_fd, out_fd);
  });
}

gsc_status gsc_experiment_load(const char* path, gsc_experiment** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = nullptr;
    auto* e = new gsc_experiment{gsc::harness::LoadConfig(path), {}};
    e->output = e->config.output.string();
    *out = e;
  });
}

gsc_status gsc_experiment_parse(const char* json, const char* base_dir, gsc_experiment** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = nullptr;
    auto* e = new gsc_experiment{
        gsc::harness::ParseConfig(json, base_dir ? base_dir : ""), {}};
    e->output = e->config.output.string();
    *out = e;
  });
}

void gsc_experiment_free(gsc_experiment* exp) { delete exp; }

gsc_status gsc_experiment_echo(const gsc_experiment* exp, char** json) {
  return Guard([&] {
    Require(exp && json, "null argument");
    *json = Dup(gsc::harness::EchoConfig(exp->config).dump(2) + "\n");
  });
}

gsc_status gsc_experiment_set_output(gsc_experiment* exp, const char* dir) {
  return Guard([&] {
    Require(exp && dir && *dir, "null or empty argument");
    exp->config.output = dir;
    exp->output = dir;
  });
}

const char* gsc_experiment_output(const gsc_experiment* exp) {
  return exp ? exp->output.c_str() : "";
}

gsc_status gsc_experiment_run(const gsc_experiment* exp, int first_cell_only,
                              gsc_progress_fn progress, void* user, gsc_results** out) {
  return Guard([&] {
    Require(exp && out, "null argument");
    *out = nullptr;
    gsc::harness::RunOptions opts;
    opts.first_cell_only = first_cell_only != 0;
    if (progress) {
      opts.progress = [progress, user](const std::string& msg) { progress(msg.c_str(), user); };
    }
    *out = new gsc_results{gsc::harness::RunExperiment(exp->config, opts)};
  });
}

void gsc_results_free(gsc_results* results) { delete results; }

size_t gsc_results_raw_rows(const gsc_results* r) { return r ? r->results.raw.size() : 0; }
size_t gsc_results_rows(const gsc_results* r) { return r ? r->results.rows.size() : 0; }
size_t gsc_results_failed_cells(const gsc_results* r) {
  return r ? r->results.failed_cells() : 0;
}

gsc_status gsc_results_csv(const gsc_results* results, char** csv) {
  return Guard([&] {
    Require(results && csv, "null argument");
    *csv = Dup(gsc::harness::ResultsCsv(results->results.rows));
  });
}

gsc_status gsc_results_raw_csv(const gsc_results* results, char** csv) {
  return Guard([&] {
    Require(results && csv, "null argument");
    *csv = Dup(gsc::harness::RawCsv(results->results.raw));
  });
}

gsc_status gsc_results_write(const gsc_experiment* exp, const gsc_results* results) {
  return Guard([&] {
    Require(exp && results, "null argument");
    gsc::harness::WriteExperiment(exp->config, results->results);
  });
}

gsc_status gsc_report(const char* results_dir, gsc_report_format format, char** out) {
  return Guard([&] {
    Require(results_dir && out, "null argument");
    Require(format == GSC_REPORT_TEXT || format == GSC_REPORT_CSV, "unknown report format");
    auto rows = gsc::harness::ReadResultsCsv(std::filesystem::path(results_dir) / "results.csv");
    *out = Dup(gsc::harness::ReportTable(rows, format == GSC_REPORT_CSV));
  });
}

gsc_status gsc_report_plots(const char* results_dir) {
  return Guard([&] {
    Require(results_dir, "null argument");
    const std::filesystem::path dir(results_dir);
    auto rows = gsc::harness::ReadResultsCsv(dir / "results.csv");
    std::error_code ec;
    std::filesystem::create_directories(dir / "plots", ec);
    if (ec) gsc::Fail(gsc::ErrorCode::kIo, "cannot create " + (dir / "plots").string());
    for (const char* metric : {"semantic_nmse", "piqe"}) {
      std::string svg = gsc::harness::PlotSvg(rows, metric);
      gsc::WriteFileBytes(dir / "plots" / (std::string(metric) + ".svg"),
                          std::span(reinterpret_cast<const std::uint8_t*>(svg.data()), svg.size()));
    }
  });
}

}  // extern "C"
