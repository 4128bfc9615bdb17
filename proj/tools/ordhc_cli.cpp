// Copyright 2026 The ordhc Authors.
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


// ordhc command line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordhc/ordhc.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;

json LoadConfig(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

int Report(ordhc_status status, const char* what) {
  if (status == ORDHC_OK) return kExitOk;
  std::cerr << "ordhc " << what << ": " << ordhc_status_string(status) << ": "
            << ordhc_last_error() << "\n";
  return kExitFailure;
}

void PrintSummary(const ordhc_run_summary& s, const std::string& out) {
  std::cout << "rows: " << s.rows << "  failed: " << s.failed
            << "  wall: " << s.wall_seconds << " s  -> " << out << "\n";
}

struct SweepFlags {
  std::string config;
  std::string out;
  std::vector<double> delta_grid;
  std::vector<double> p_grid;
  std::vector<std::string> methods;
  int trials = 0;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int n0 = 0;
  int levels = -1;
  double mu = -1;
  double sigma = -1;
  double active_q = 0;
  bool no_plots = false;
};

int RunSweep(const SweepFlags& f, bool seed_given) {
  json cfg = LoadConfig(f.config);
  if (!cfg.contains("planted")) cfg["planted"] = {{"n0", 30}, {"levels", 3}, {"mu", 0.8}, {"sigma", 0.1}};
  if (f.n0 > 0) cfg["planted"]["n0"] = f.n0;
  if (f.levels >= 0) cfg["planted"]["levels"] = f.levels;
  if (f.mu >= 0) cfg["planted"]["mu"] = f.mu;
  if (f.sigma >= 0) cfg["planted"]["sigma"] = f.sigma;
  if (!f.delta_grid.empty()) cfg["delta_grid"] = f.delta_grid;
  if (!f.p_grid.empty()) cfg["p_grid"] = f.p_grid;
  if (!f.methods.empty()) cfg["methods"] = f.methods;
  if (!cfg.contains("methods")) {
    cfg["methods"] = {"SL", "CL", "4K-AL", "4K-AL-act", "4-AL", "4-AL-I5"};
  }
  if (!cfg.contains("delta_grid")) cfg["delta_grid"] = {0.1};
  if (!cfg.contains("p_grid")) cfg["p_grid"] = {0.1};
  if (f.trials > 0) cfg["trials"] = f.trials;
  if (f.threads > 0) cfg["threads"] = f.threads;
  if (seed_given) cfg["master_seed"] = f.seed;
  if (f.active_q > 0) cfg["active_q"] = f.active_q;
  if (f.no_plots) cfg["plots"] = false;
  ordhc_run_summary summary{};
  const ordhc_status st =
      ordhc_planted_sweep(cfg.dump().c_str(), f.out.c_str(), &summary);
  if (st == ORDHC_OK || st == ORDHC_ERR_INCOMPLETE) PrintSummary(summary, f.out);
  return Report(st, "planted-sweep");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-based hierarchical clustering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ordhc_version()));

  // planted-sweep
  SweepFlags sweep;
  CLI::App* ps = app.add_subcommand(
      "planted-sweep", "Monte Carlo sweep over the planted hierarchical model");
  ps->add_option("--config", sweep.config, "JSON sweep config")->check(CLI::ExistingFile);
  ps->add_option("--out", sweep.out, "Output directory")->required();
  ps->add_option("--delta-grid", sweep.delta_grid, "Level gaps delta")->delimiter(',');
  ps->add_option("--p-grid", sweep.p_grid, "Sampling probabilities")->delimiter(',');
  ps->add_option("--methods", sweep.methods,
                 "SL, CL, 4K-AL, 4K-AL-act, 4-AL, 4-AL-I<m>")
      ->delimiter(',');
  ps->add_option("--trials", sweep.trials, "Repetitions per cell")->check(CLI::PositiveNumber);
  ps->add_option("--threads", sweep.threads, "Worker threads")->check(CLI::PositiveNumber);
  CLI::Option* sweep_seed = ps->add_option("--seed", sweep.seed, "Master seed");
  ps->add_option("--n0", sweep.n0, "Items per pure cluster")->check(CLI::PositiveNumber);
  ps->add_option("--levels", sweep.levels, "Hierarchy depth L")->check(CLI::NonNegativeNumber);
  ps->add_option("--mu", sweep.mu, "Top-level mean similarity");
  ps->add_option("--sigma", sweep.sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber);
  ps->add_option("--active-q", sweep.active_q, "Landmark probability for 4K-AL-act");
  ps->add_flag("--no-plots", sweep.no_plots, "Skip SVG output");

  // dataset-run
  std::string ds_config, ds_out, ds_features, ds_quads, ds_triplets;
  std::vector<double> ds_p;
  std::vector<std::string> ds_methods;
  int ds_trials = 0, ds_threads = 0;
  std::uint64_t ds_seed = 0;
  bool ds_no_plots = false;
  CLI::App* dr = app.add_subcommand(
      "dataset-run", "Cluster a feature or comparison file and score the trees");
  dr->add_option("--config", ds_config, "JSON dataset config")->check(CLI::ExistingFile);
  dr->add_option("--out", ds_out, "Output directory")->required();
  CLI::Option* f_opt =
      dr->add_option("--features", ds_features, "CSV of feature rows")->check(CLI::ExistingFile);
  CLI::Option* q_opt =
      dr->add_option("--quadruplets", ds_quads, "CSV i,j,k,l")->check(CLI::ExistingFile);
  CLI::Option* t_opt =
      dr->add_option("--triplets", ds_triplets, "CSV i,j,k")->check(CLI::ExistingFile);
  f_opt->excludes(q_opt)->excludes(t_opt);
  q_opt->excludes(t_opt);
  dr->add_option("--p-grid", ds_p, "Sampling probabilities")->delimiter(',');
  dr->add_option("--methods", ds_methods, "Methods to run")->delimiter(',');
  dr->add_option("--trials", ds_trials, "Repetitions per p")->check(CLI::PositiveNumber);
  dr->add_option("--threads", ds_threads, "Worker threads")->check(CLI::PositiveNumber);
  CLI::Option* ds_seed_opt = dr->add_option("--seed", ds_seed, "Master seed");
  dr->add_flag("--no-plots", ds_no_plots, "Skip SVG output");

  // kernel-dump
  std::string kd_config, kd_out = "-", kd_mode = "passive", kd_features, kd_quads,
                         kd_triplets;
  int kd_n0 = 0, kd_levels = -1, kd_refs = 0, kd_threads = 0;
  double kd_mu = 0.8, kd_delta = 0.1, kd_sigma = 0.1, kd_p = -1, kd_q = -1;
  std::uint64_t kd_seed = 0;
  CLI::App* kd = app.add_subcommand("kernel-dump", "Compute and write a quadruplet kernel");
  kd->add_option("--config", kd_config, "JSON kernel config")->check(CLI::ExistingFile);
  kd->add_option("--mode", kd_mode, "active or passive")
      ->check(CLI::IsMember({"active", "passive"}));
  kd->add_option("--out", kd_out, "Output CSV ('-' for stdout)");
  kd->add_option("--features", kd_features, "CSV of feature rows")->check(CLI::ExistingFile);
  kd->add_option("--quadruplets", kd_quads, "CSV i,j,k,l")->check(CLI::ExistingFile);
  kd->add_option("--triplets", kd_triplets, "CSV i,j,k")->check(CLI::ExistingFile);
  kd->add_option("--n0", kd_n0, "Planted source: items per pure cluster");
  kd->add_option("--levels", kd_levels, "Planted source: depth L");
  kd->add_option("--mu", kd_mu, "Planted source: mu");
  kd->add_option("--delta", kd_delta, "Planted source: delta");
  kd->add_option("--sigma", kd_sigma, "Planted source: sigma");
  kd->add_option("--p", kd_p, "Passive sampling probability");
  kd->add_option("--q", kd_q, "Active landmark probability");
  kd->add_option("--references", kd_refs, "Active reference pairs");
  kd->add_option("--threads", kd_threads, "Threads for the passive kernel");
  CLI::Option* kd_seed_opt = kd->add_option("--seed", kd_seed, "Seed");

  // replay
  std::string rp_manifest;
  std::uint64_t rp_row = 0;
  bool rp_all = false;
  CLI::App* rp = app.add_subcommand("replay", "Recompute manifest rows and compare bit for bit");
  rp->add_option("--manifest", rp_manifest, "manifest.json")->required()->check(CLI::ExistingFile);
  rp->add_option("--row", rp_row, "Row index");
  rp->add_flag("--all", rp_all, "Replay every row");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ps) return RunSweep(sweep, sweep_seed->count() > 0);

    if (*dr) {
      json cfg = LoadConfig(ds_config);
      if (!ds_features.empty()) cfg["input"] = {{"features", ds_features}};
      if (!ds_quads.empty()) cfg["input"] = {{"quadruplets", ds_quads}};
      if (!ds_triplets.empty()) cfg["input"] = {{"triplets", ds_triplets}};
      if (!cfg.contains("input")) {
        std::cerr << "dataset-run needs --features, --quadruplets or --triplets\n";
        return kExitFailure;
      }
      if (!ds_p.empty()) cfg["p_grid"] = ds_p;
      if (!ds_methods.empty()) cfg["methods"] = ds_methods;
      if (ds_trials > 0) cfg["trials"] = ds_trials;
      if (ds_threads > 0) cfg["threads"] = ds_threads;
      if (ds_seed_opt->count() > 0) cfg["master_seed"] = ds_seed;
      if (ds_no_plots) cfg["plots"] = false;
      ordhc_run_summary summary{};
      const ordhc_status st =
          ordhc_dataset_run(cfg.dump().c_str(), ds_out.c_str(), &summary);
      if (st == ORDHC_OK || st == ORDHC_ERR_INCOMPLETE) PrintSummary(summary, ds_out);
      return Report(st, "dataset-run");
    }

    if (*kd) {
      json cfg = LoadConfig(kd_config);
      if (kd->count("--mode") > 0 || !cfg.contains("mode")) cfg["mode"] = kd_mode;
      if (!kd_features.empty()) cfg["source"] = {{"features", kd_features}};
      if (!kd_quads.empty()) cfg["source"] = {{"quadruplets", kd_quads}};
      if (!kd_triplets.empty()) cfg["source"] = {{"triplets", kd_triplets}};
      if (kd_n0 > 0 || kd_levels >= 0) {
        cfg["source"] = {{"planted",
                          {{"n0", kd_n0 > 0 ? kd_n0 : 4},
                           {"levels", kd_levels >= 0 ? kd_levels : 2},
                           {"mu", kd_mu},
                           {"delta", kd_delta},
                           {"sigma", kd_sigma}}}};
      }
      if (!cfg.contains("source")) {
        std::cerr << "kernel-dump needs a source: --features, --quadruplets, "
                     "--triplets or --n0/--levels\n";
        return kExitFailure;
      }
      if (kd_p >= 0) cfg["p"] = kd_p;
      if (kd_q >= 0) cfg["q"] = kd_q;
      if (kd_refs > 0) cfg["references"] = kd_refs;
      if (kd_threads > 0) cfg["threads"] = kd_threads;
      if (kd_seed_opt->count() > 0) cfg["seed"] = kd_seed;
      char* csv = nullptr;
      const ordhc_status st = ordhc_kernel_dump(cfg.dump().c_str(), &csv);
      if (st != ORDHC_OK) return Report(st, "kernel-dump");
      const std::string text(csv);
      ordhc_string_free(csv);
      if (kd_out == "-") {
        std::cout << text;
      } else {
        std::ofstream out(kd_out, std::ios::binary);
        out << text;
        if (!out) {
          std::cerr << "cannot write " << kd_out << "\n";
          return kExitFailure;
        }
      }
      return kExitOk;
    }

    if (*rp) {
      std::uint64_t first = rp_row;
      std::uint64_t last = rp_row + 1;
      if (rp_all) {
        const json manifest = LoadConfig(rp_manifest);
        first = 0;
        last = manifest.at("rows").size();
      }
      int mismatches = 0;
      for (std::uint64_t row = first; row < last; ++row) {
        int identical = 0;
        char* report = nullptr;
        const ordhc_status st =
            ordhc_replay(rp_manifest.c_str(), row, &identical, &report);
        if (st != ORDHC_OK) return Report(st, "replay");
        const json r = json::parse(report);
        ordhc_string_free(report);
        const json& rec = r.at("recorded");
        std::cout << "row " << row << " " << rec.at("method").get<std::string>()
                  << " delta_index=" << rec.at("delta_index")
                  << " p_index=" << rec.at("p_index") << " trial=" << rec.at("trial")
                  << " recorded=" << rec.at("value").dump()
                  << " replayed=" << r.at("replayed").at("value").dump() << " "
                  << (identical ? "IDENTICAL" : "MISMATCH") << "\n";
        if (!identical) ++mismatches;
      }
      return mismatches == 0 ? kExitOk : kExitFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "ordhc: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
