// Copyright 2026 The privfl-lab Authors
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

// Command-line front end. Everything substantive goes through the C API in
// privfl.h; this file only parses arguments, assembles option documents,
// and maps statuses to exit codes (0 ok, 1 runtime failure, 2 validation
// error, 3 verification failure).

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "privfl.h"

namespace {

using Json = nlohmann::json;

int exit_code_for(pfl_status status) {
  switch (status) {
    case PFL_OK:
      return 0;
    case PFL_VERIFICATION_FAILED:
      return 3;
    case PFL_ERR_NOT_FOUND:
    case PFL_ERR_IO:
    case PFL_ERR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

int report_failure(pfl_status status) {
  std::cerr << "error: " << pfl_status_name(status) << ": " << pfl_last_error() << "\n";
  return exit_code_for(status);
}

struct GraphHandle {
  pfl_graph* graph = nullptr;
  ~GraphHandle() { pfl_graph_free(graph); }
};

struct CString {
  char* text = nullptr;
  ~CString() { pfl_string_free(text); }
};

// "--graph" accepts a fixture name (petersen, heawood, mcgee,
// tutte_coxeter, cycle(k)) or a path to an edge-list file.
pfl_status open_graph(const std::string& spec, GraphHandle& handle) {
  if (std::filesystem::exists(spec)) {
    return pfl_graph_read(spec.c_str(), &handle.graph);
  }
  return pfl_graph_fixture(spec.c_str(), &handle.graph);
}

bool write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

int emit_report(const std::string& json_text, const std::string& json_path) {
  if (!json_path.empty() && !write_text_file(json_path, json_text + "\n")) {
    std::cerr << "error: cannot write '" << json_path << "'\n";
    return 1;
  }
  std::cout << json_text << "\n";
  return 0;
}

int run_gen_graph(int n, int d, int g, std::uint64_t seed, std::uint64_t budget,
                  const std::string& out_path) {
  GraphHandle handle;
  pfl_status status = pfl_graph_construct(n, d, g, seed, budget, &handle.graph);
  if (status != PFL_OK) return report_failure(status);
  if (!out_path.empty()) {
    status = pfl_graph_write(handle.graph, out_path.c_str());
    if (status != PFL_OK) return report_failure(status);
  }
  Json summary{{"n", pfl_graph_vertex_count(handle.graph)},
               {"d", pfl_graph_degree(handle.graph)},
               {"girth", pfl_graph_girth(handle.graph)},
               {"seed", seed}};
  if (!out_path.empty()) summary["file"] = out_path;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("privfl-lab ") + pfl_version() +
               " - hard instances, exact lemma checks, and DP audits for "
               "super-set-output facility location"};
  app.require_subcommand(1);

  // gen-graph
  auto* gen = app.add_subcommand("gen-graph", "construct a d-regular graph with girth >= g");
  int gen_n = 10, gen_d = 3, gen_g = 5;
  std::uint64_t gen_seed = 0, gen_budget = 200000;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count (even)")->required();
  gen->add_option("--d", gen_d, "degree")->required();
  gen->add_option("--g", gen_g, "girth target")->required();
  gen->add_option("--seed", gen_seed, "construction seed");
  gen->add_option("--budget", gen_budget, "effort budget (search moves)");
  gen->add_option("--out", gen_out, "edge-list output file");

  // params
  auto* params = app.add_subcommand("params", "parameter schedule and proof-chain inequalities");
  double params_log_n = 0, params_epsilon = 1, params_c = 1, params_gamma_const = 1e-4;
  std::uint64_t params_n = 0;
  bool params_strict = false;
  std::string params_json_path;
  auto* opt_log_n = params->add_option("--log-n", params_log_n, "natural log of the metric size");
  auto* opt_n = params->add_option("--n", params_n, "metric size (even)");
  opt_log_n->excludes(opt_n);
  params->add_option("--epsilon", params_epsilon, "privacy budget")->required();
  params->add_option("--C", params_c, "constant in eps_star");
  params->add_option("--gamma-constant", params_gamma_const, "leading constant of the bound");
  params->add_flag("--check", params_strict,
                   "exit 3 unless the asymptotic-regime inequalities (first three rows) hold");
  params->add_option("--json", params_json_path, "also write the report here");

  // verify-lemmas
  auto* verify = app.add_subcommand("verify-lemmas", "exact lemma verification over mappings");
  std::string verify_graph, verify_mode = "exhaustive", verify_mapping_path, verify_json_path;
  std::string verify_packing_f;
  int verify_radius = -1;
  std::vector<int> verify_ms;
  std::uint64_t verify_seed = 0, verify_cap = std::uint64_t{4} << 20, verify_samples = 100000;
  verify->add_option("--graph", verify_graph, "fixture name or edge-list file")->required();
  verify->add_option("--radius", verify_radius, "mapping radius (-1 = largest admissible)");
  verify->add_option("--m", verify_ms, "dataset sizes for the collision lemma");
  verify->add_option("--mode", verify_mode, "exhaustive | random | single");
  verify->add_option("--seed", verify_seed, "seed for random mode");
  verify->add_option("--samples", verify_samples, "sample count for random mode");
  verify->add_option("--cap", verify_cap, "mapping-count cap for exhaustive mode");
  verify->add_option("--mapping", verify_mapping_path, "mapping file for single mode");
  verify->add_option("--packing-f", verify_packing_f,
                     "uniform facility cost: also check the low-cost => collision step");
  verify->add_option("--json", verify_json_path, "also write the report here");

  // audit-dp
  auto* audit = app.add_subcommand("audit-dp", "exhaustive privacy audit of a baseline mechanism");
  std::string audit_graph, audit_mechanism = "identity", audit_f = "1", audit_json_path;
  double audit_epsilon = 1.0;
  int audit_m = 1, audit_radius = 1;
  std::uint64_t audit_cap = std::uint64_t{1} << 20, audit_candidate_cap = 4096;
  double audit_bound_epsilon = 0;
  audit->add_option("--graph", audit_graph, "fixture name or edge-list file")->required();
  audit->add_option("--mechanism", audit_mechanism, "identity | expmech");
  audit->add_option("--epsilon", audit_epsilon, "mechanism privacy budget");
  auto* opt_audit_bound = audit->add_option(
      "--audit-epsilon", audit_bound_epsilon,
      "audit against this budget instead (stricter values demonstrate failures)");
  audit->add_option("--m", audit_m, "dataset size");
  audit->add_option("--f", audit_f, "uniform facility cost (integer or p/q)");
  audit->add_option("--candidate-radius", audit_radius, "expmech candidate mapping radius");
  audit->add_option("--candidate-cap", audit_candidate_cap, "expmech candidate count cap");
  audit->add_option("--cap", audit_cap, "dataset enumeration cap");
  audit->add_option("--json", audit_json_path, "also write the report here");

  // run-experiment
  auto* run = app.add_subcommand("run-experiment", "seeded end-to-end experiment with reports");
  std::string run_config_path, run_graph, run_mechanism = "identity", run_f = "1";
  std::string run_csv_path, run_json_path;
  int run_m = 1, run_trials = 1, run_threads = 1, run_candidate_radius = 1;
  double run_epsilon = 1.0;
  std::uint64_t run_seed = 0, run_opt_cap = std::uint64_t{1} << 20;
  bool run_no_lemmas = false;
  auto* opt_config = run->add_option("--config", run_config_path, "JSON config document");
  run->add_option("--graph", run_graph, "fixture name or edge-list file");
  run->add_option("--mechanism", run_mechanism, "identity | expmech");
  run->add_option("--epsilon", run_epsilon, "expmech privacy budget");
  run->add_option("--candidate-radius", run_candidate_radius, "expmech candidate radius");
  run->add_option("--trials", run_trials, "trial count");
  run->add_option("--seed", run_seed, "master seed");
  run->add_option("--f", run_f, "uniform facility cost (integer or p/q)");
  run->add_option("--m", run_m, "dataset size");
  run->add_option("--opt-cap", run_opt_cap, "brute-force optimum subset cap");
  run->add_option("--threads", run_threads, "worker threads for trials");
  run->add_flag("--no-lemma-checks", run_no_lemmas, "skip lemma checks on mechanism outputs");
  run->add_option("--csv", run_csv_path, "per-trial CSV output path");
  run->add_option("--json", run_json_path, "full run report output path");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    return run_gen_graph(gen_n, gen_d, gen_g, gen_seed, gen_budget, gen_out);
  }

  if (params->parsed()) {
    double log_n = params_log_n;
    if (opt_n->count() > 0) {
      if (params_n < 2 || params_n % 2 != 0) {
        std::cerr << "error: --n must be even and at least 2\n";
        return 2;
      }
      log_n = std::log(static_cast<double>(params_n));
    } else if (opt_log_n->count() == 0) {
      std::cerr << "error: one of --log-n or --n is required\n";
      return 2;
    }
    CString report;
    pfl_status status =
        pfl_params_report_json(log_n, params_epsilon, params_c, params_gamma_const, &report.text);
    if (status != PFL_OK) return report_failure(status);
    int code = emit_report(report.text, params_json_path);
    if (code != 0) return code;
    if (params_strict) {
      const Json parsed = Json::parse(report.text);
      for (std::size_t i = 0; i < 3; ++i) {
        if (!parsed.at("inequalities").at(i).at("holds").get<bool>()) {
          std::cerr << "inequality '" << parsed.at("inequalities").at(i).at("name").get<std::string>()
                    << "' fails in this regime\n";
          return 3;
        }
      }
    }
    return 0;
  }

  if (verify->parsed()) {
    GraphHandle handle;
    pfl_status status = open_graph(verify_graph, handle);
    if (status != PFL_OK) return report_failure(status);
    Json options{{"mode", verify_mode},
                 {"radius", verify_radius},
                 {"cap", verify_cap},
                 {"samples", verify_samples},
                 {"seed", verify_seed}};
    if (!verify_ms.empty()) options["m"] = verify_ms;
    if (!verify_packing_f.empty()) options["packing_f"] = verify_packing_f;
    if (!verify_mapping_path.empty()) {
      std::ifstream in(verify_mapping_path);
      if (!in) {
        std::cerr << "error: cannot open mapping file '" << verify_mapping_path << "'\n";
        return 1;
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      options["mapping_text"] = buffer.str();
    }
    CString report;
    status = pfl_verify_lemmas_json(handle.graph, options.dump().c_str(), &report.text);
    if (status != PFL_OK && status != PFL_VERIFICATION_FAILED) return report_failure(status);
    int code = emit_report(report.text, verify_json_path);
    if (code != 0) return code;
    return status == PFL_OK ? 0 : 3;
  }

  if (audit->parsed()) {
    GraphHandle handle;
    pfl_status status = open_graph(audit_graph, handle);
    if (status != PFL_OK) return report_failure(status);
    Json options{{"mechanism", audit_mechanism}, {"epsilon", audit_epsilon},
                 {"m", audit_m},                 {"f", audit_f},
                 {"candidate_radius", audit_radius}, {"candidate_cap", audit_candidate_cap},
                 {"dataset_cap", audit_cap}};
    if (opt_audit_bound->count() > 0) options["audit_epsilon"] = audit_bound_epsilon;
    CString report;
    status = pfl_audit_json(handle.graph, options.dump().c_str(), &report.text);
    if (status != PFL_OK && status != PFL_VERIFICATION_FAILED) return report_failure(status);
    int code = emit_report(report.text, audit_json_path);
    if (code != 0) return code;
    return status == PFL_OK ? 0 : 3;
  }

  if (run->parsed()) {
    std::string config_text;
    if (opt_config->count() > 0) {
      std::ifstream in(run_config_path);
      if (!in) {
        std::cerr << "error: cannot open config '" << run_config_path << "'\n";
        return 1;
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      config_text = buffer.str();
    } else {
      if (run_graph.empty()) {
        std::cerr << "error: either --config or --graph is required\n";
        return 2;
      }
      Json graph_spec;
      if (std::filesystem::exists(run_graph)) {
        graph_spec = Json{{"file", run_graph}};
      } else {
        graph_spec = Json{{"fixture", run_graph}};
      }
      Json config{{"graph", graph_spec},
                  {"mechanism", Json{{"kind", run_mechanism},
                                     {"epsilon", run_epsilon},
                                     {"candidate_radius", run_candidate_radius}}},
                  {"f", run_f},
                  {"m", run_m},
                  {"trials", run_trials},
                  {"master_seed", run_seed},
                  {"opt_cap", run_opt_cap},
                  {"threads", run_threads},
                  {"check_lemmas", !run_no_lemmas}};
      if (!run_csv_path.empty()) config["csv_path"] = run_csv_path;
      if (!run_json_path.empty()) config["json_path"] = run_json_path;
      config_text = config.dump();
    }
    CString report;
    pfl_status status = pfl_run_experiment_json(config_text.c_str(), &report.text);
    if (status != PFL_OK && status != PFL_VERIFICATION_FAILED) return report_failure(status);
    // The full report can be large; print a summary and rely on json_path
    // for the whole document.
    const Json parsed = Json::parse(report.text);
    Json summary{{"version", parsed.at("version")},
                 {"trials", parsed.at("trials").size()},
                 {"mean_ratio", parsed.at("mean_ratio")},
                 {"verification_passed", parsed.at("verification_passed")}};
    if (!parsed.at("lemma_summary").is_null()) summary["lemma_summary"] = parsed.at("lemma_summary");
    std::cout << summary.dump(2) << "\n";
    return status == PFL_OK ? 0 : 3;
  }

  return 0;
}
