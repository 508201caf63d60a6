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


// gsc: command-line front end. Talks to the library only through gsc.h.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsc/gsc.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailedCells = 3;

// Owns a string returned through a gsc_* out-parameter.
struct Owned {
  char* p = nullptr;
  ~Owned() { gsc_free(p); }
  std::string str() const { return p ? p : ""; }
};

int Report(gsc_status st) {
  std::cerr << "gsc: " << gsc_status_name(st) << ": " << gsc_last_error() << "\n";
  return kExitError;
}

void PrintProgress(const char* msg, void*) { std::fprintf(stderr, "  done %s\n", msg); }

int RunExperiment(const std::string& config, const std::string& output, bool first_cell_only,
                  bool quiet) {
  gsc_experiment* exp = nullptr;
  if (auto st = gsc_experiment_load(config.c_str(), &exp)) return Report(st);
  struct Free {
    gsc_experiment* e;
    gsc_results* r = nullptr;
    ~Free() {
      gsc_results_free(r);
      gsc_experiment_free(e);
    }
  } guard{exp};
  if (!output.empty()) {
    if (auto st = gsc_experiment_set_output(exp, output.c_str())) return Report(st);
  }
  if (auto st = gsc_experiment_run(exp, first_cell_only ? 1 : 0, quiet ? nullptr : PrintProgress,
                                   nullptr, &guard.r)) {
    return Report(st);
  }
  if (auto st = gsc_results_write(exp, guard.r)) return Report(st);
  const std::string dir = gsc_experiment_output(exp);
  Owned table;
  if (auto st = gsc_report(dir.c_str(), GSC_REPORT_TEXT, &table.p)) return Report(st);
  std::cout << table.str();
  const size_t failed = gsc_results_failed_cells(guard.r);
  std::cout << gsc_results_rows(guard.r) << " aggregate rows, " << gsc_results_raw_rows(guard.r)
            << " item rows, " << failed << " failed; results in " << dir << "\n";
  return failed ? kExitFailedCells : 0;
}

// "-10,0,10,noiseless" -> {-10, 0, 10, NaN}.
bool ParseSnrList(const std::string& text, std::vector<double>& out) {
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "noiseless" || tok == "inf") {
      out.push_back(std::nan(""));
      continue;
    }
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generative semantic communication simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gsc_version());

  std::string config, output;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run the first budget and seed of every method");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  run->add_option("--output", output, "Results directory (overrides the config)");
  run->add_flag("--quiet", quiet, "No per-cell progress");
  auto* sweep = app.add_subcommand("sweep", "Run methods x budgets x seeds x items");
  sweep->add_option("config", config, "Experiment config (JSON)")->required();
  sweep->add_option("--output", output, "Results directory (overrides the config)");
  sweep->add_flag("--quiet", quiet, "No per-cell progress");

  std::string code = "default", snr = "-10,0,10", modulation = "bpsk", ber_out;
  std::uint64_t bits = 1000000, seed = 1;
  unsigned threads = 0;
  auto* ber = app.add_subcommand("ber", "Monte-Carlo bit error rate of an LDPC code");
  ber->add_option("--code", code, "Code id or alist path")->capture_default_str();
  ber->add_option("--snr", snr, "Comma-separated Es/N0 list in dB; 'noiseless' allowed")
      ->capture_default_str();
  ber->add_option("--bits", bits, "Information bits per point")->capture_default_str();
  ber->add_option("--seed", seed, "Seed")->capture_default_str();
  ber->add_option("--modulation", modulation, "bpsk or qpsk")->capture_default_str();
  ber->add_option("--threads", threads, "Worker threads, 0 = all")->capture_default_str();
  ber->add_option("--output", ber_out, "Write CSV here instead of stdout");

  std::string results_dir;
  bool as_csv = false, as_svg = false;
  auto* report = app.add_subcommand("report", "Summarise a results directory");
  report->add_option("dir", results_dir, "Results directory")->required();
  auto* csv_flag = report->add_flag("--csv", as_csv, "Table as CSV");
  report->add_flag("--svg", as_svg, "Regenerate plots/*.svg")->excludes(csv_flag);

  auto* adapters = app.add_subcommand("adapters", "Inspect adapters");
  adapters->require_subcommand(1);
  auto* list = adapters->add_subcommand("list", "List builtin adapters");
  std::string spec;
  auto* check = adapters->add_subcommand("check", "Handshake and conformance round");
  check->add_option("spec", spec, "Builtin name or exec:<command>")->required();
  std::string serve_name;
  auto* serve = adapters->add_subcommand("serve", "Serve a builtin adapter on stdin/stdout");
  serve->add_option("name", serve_name, "Builtin adapter")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*run) return RunExperiment(config, output, true, quiet);
  if (*sweep) return RunExperiment(config, output, false, quiet);

  if (*ber) {
    std::vector<double> snrs;
    if (!ParseSnrList(snr, snrs)) {
      std::cerr << "gsc: --snr: expected a comma-separated list of numbers or 'noiseless'\n";
      return kExitError;
    }
    gsc_code* c = nullptr;
    if (auto st = gsc_code_load(code.c_str(), &c)) return Report(st);
    Owned csv;
    gsc_status st = gsc_ber_sweep_csv(c, snrs.data(), snrs.size(), modulation.c_str(), bits, seed,
                                      threads, &csv.p);
    gsc_code_free(c);
    if (st) return Report(st);
    if (ber_out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream f(ber_out, std::ios::binary);
      f << csv.str();
      if (!f) {
        std::cerr << "gsc: cannot write " << ber_out << "\n";
        return kExitError;
      }
    }
    return 0;
  }

  if (*report) {
    if (as_svg) {
      if (auto st = gsc_report_plots(results_dir.c_str())) return Report(st);
      std::cout << results_dir << "/plots/semantic_nmse.svg\n" << results_dir << "/plots/piqe.svg\n";
      return 0;
    }
    Owned table;
    if (auto st = gsc_report(results_dir.c_str(), as_csv ? GSC_REPORT_CSV : GSC_REPORT_TEXT,
                             &table.p)) {
      return Report(st);
    }
    std::cout << table.str();
    return 0;
  }

  if (*list) {
    Owned names;
    if (auto st = gsc_adapters_list(&names.p)) return Report(st);
    std::cout << names.str();
    return 0;
  }
  if (*check) {
    Owned out;
    gsc_status st = gsc_adapter_check(spec.c_str(), &out.p);
    if (out.p) std::cout << out.str() << "\n";
    return st ? Report(st) : 0;
  }
  if (*serve) {
    int code_out = 0;
    if (auto st = gsc_adapter_serve(serve_name.c_str(), STDIN_FILENO, STDOUT_FILENO, &code_out)) {
      return Report(st);
    }
    return code_out;
  }
  return kExitError;
}
