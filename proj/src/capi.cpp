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

#include "privfl.h"

#include <cstring>
#include <new>
#include <string>

#include "privfl/error.hpp"
#include "privfl/harness.hpp"
#include "privfl/version.hpp"

using privfl::CertifiedGraph;
using privfl::Error;
using privfl::ErrorCode;
using privfl::Json;

struct pfl_graph {
  CertifiedGraph certified;
};

namespace {

thread_local std::string g_last_error;

pfl_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPreconditionViolated:
      return PFL_ERR_PRECONDITION;
    case ErrorCode::kInvalidArity:
      return PFL_ERR_INVALID_ARITY;
    case ErrorCode::kNotFound:
      return PFL_ERR_NOT_FOUND;
    case ErrorCode::kUnknownFixture:
      return PFL_ERR_UNKNOWN_FIXTURE;
    case ErrorCode::kEmptyFacilitySet:
      return PFL_ERR_EMPTY_FACILITY_SET;
    case ErrorCode::kTooLarge:
      return PFL_ERR_TOO_LARGE;
    case ErrorCode::kLengthMismatch:
      return PFL_ERR_LENGTH_MISMATCH;
    case ErrorCode::kDegenerateParams:
      return PFL_ERR_DEGENERATE_PARAMS;
    case ErrorCode::kRadiusTooLarge:
      return PFL_ERR_RADIUS_TOO_LARGE;
    case ErrorCode::kInvalidPartition:
      return PFL_ERR_INVALID_PARTITION;
    case ErrorCode::kEmptyCandidates:
      return PFL_ERR_EMPTY_CANDIDATES;
    case ErrorCode::kConfigInvalid:
      return PFL_ERR_CONFIG_INVALID;
    case ErrorCode::kInvalidArgument:
      return PFL_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIoError:
      return PFL_ERR_IO;
    case ErrorCode::kParseError:
      return PFL_ERR_PARSE;
    case ErrorCode::kInternal:
      return PFL_ERR_INTERNAL;
  }
  return PFL_ERR_INTERNAL;
}

template <typename Fn>
pfl_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& err) {
    g_last_error = err.what();
    return status_of(err.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PFL_ERR_INTERNAL;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return PFL_ERR_INTERNAL;
  }
}

char* copy_to_c_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

Json parse_options(const char* options_json) {
  if (options_json == nullptr || options_json[0] == '\0') return Json::object();
  Json parsed = Json::parse(options_json, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    throw Error(ErrorCode::kConfigInvalid, "options are not valid JSON");
  }
  return parsed;
}

const CertifiedGraph& deref(const pfl_graph* graph) {
  if (graph == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "null graph handle");
  }
  return graph->certified;
}

}  // namespace

extern "C" {

const char* pfl_version(void) { return privfl::kVersion; }

const char* pfl_status_name(pfl_status status) {
  switch (status) {
    case PFL_OK:
      return "PFL_OK";
    case PFL_VERIFICATION_FAILED:
      return "PFL_VERIFICATION_FAILED";
    case PFL_ERR_PRECONDITION:
      return "PFL_ERR_PRECONDITION";
    case PFL_ERR_INVALID_ARITY:
      return "PFL_ERR_INVALID_ARITY";
    case PFL_ERR_NOT_FOUND:
      return "PFL_ERR_NOT_FOUND";
    case PFL_ERR_UNKNOWN_FIXTURE:
      return "PFL_ERR_UNKNOWN_FIXTURE";
    case PFL_ERR_EMPTY_FACILITY_SET:
      return "PFL_ERR_EMPTY_FACILITY_SET";
    case PFL_ERR_TOO_LARGE:
      return "PFL_ERR_TOO_LARGE";
    case PFL_ERR_LENGTH_MISMATCH:
      return "PFL_ERR_LENGTH_MISMATCH";
    case PFL_ERR_DEGENERATE_PARAMS:
      return "PFL_ERR_DEGENERATE_PARAMS";
    case PFL_ERR_RADIUS_TOO_LARGE:
      return "PFL_ERR_RADIUS_TOO_LARGE";
    case PFL_ERR_INVALID_PARTITION:
      return "PFL_ERR_INVALID_PARTITION";
    case PFL_ERR_EMPTY_CANDIDATES:
      return "PFL_ERR_EMPTY_CANDIDATES";
    case PFL_ERR_CONFIG_INVALID:
      return "PFL_ERR_CONFIG_INVALID";
    case PFL_ERR_INVALID_ARGUMENT:
      return "PFL_ERR_INVALID_ARGUMENT";
    case PFL_ERR_IO:
      return "PFL_ERR_IO";
    case PFL_ERR_PARSE:
      return "PFL_ERR_PARSE";
    case PFL_ERR_INTERNAL:
      return "PFL_ERR_INTERNAL";
  }
  return "PFL_ERR_INTERNAL";
}

const char* pfl_last_error(void) { return g_last_error.c_str(); }

pfl_status pfl_graph_fixture(const char* name, pfl_graph** out_graph) {
  return guarded([&]() -> pfl_status {
    if (name == nullptr || out_graph == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null argument");
    }
    *out_graph = new pfl_graph{privfl::known_fixture(name)};
    return PFL_OK;
  });
}

pfl_status pfl_graph_construct(int n, int d, int g, uint64_t seed, uint64_t effort_budget,
                               pfl_graph** out_graph) {
  return guarded([&]() -> pfl_status {
    if (out_graph == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null output argument");
    }
    *out_graph = new pfl_graph{privfl::construct_regular_girth_graph(n, d, g, seed, effort_budget)};
    return PFL_OK;
  });
}

pfl_status pfl_graph_read(const char* path, pfl_graph** out_graph) {
  return guarded([&]() -> pfl_status {
    if (path == nullptr || out_graph == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null argument");
    }
    *out_graph = new pfl_graph{privfl::read_graph_file(path)};
    return PFL_OK;
  });
}

pfl_status pfl_graph_write(const pfl_graph* graph, const char* path) {
  return guarded([&]() -> pfl_status {
    if (path == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null path");
    }
    privfl::write_graph_file(path, deref(graph));
    return PFL_OK;
  });
}

void pfl_graph_free(pfl_graph* graph) { delete graph; }

int pfl_graph_vertex_count(const pfl_graph* graph) {
  return graph == nullptr ? -1 : graph->certified.graph.vertex_count();
}

int pfl_graph_degree(const pfl_graph* graph) {
  return graph == nullptr ? -1 : graph->certified.graph.regular_degree().value_or(-1);
}

int pfl_graph_girth(const pfl_graph* graph) {
  if (graph == nullptr) return -1;
  return graph->certified.certificate.girth.value_or(0);
}

pfl_status pfl_graph_distance(const pfl_graph* graph, int u, int v, int* out_distance) {
  return guarded([&]() -> pfl_status {
    if (out_distance == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null output argument");
    }
    *out_distance = deref(graph).graph.distance(u, v);
    return PFL_OK;
  });
}

pfl_status pfl_params_report_json(double log_n, double epsilon, double c, double gamma_constant,
                                  char** out_json) {
  return guarded([&]() -> pfl_status {
    if (out_json == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null output argument");
    }
    privfl::HardInstanceParams params = privfl::select_params_log(
        log_n, epsilon, c > 0 ? c : 1.0, gamma_constant > 0 ? gamma_constant : 1e-4);
    *out_json = copy_to_c_string(privfl::params_report(params).dump(2));
    return PFL_OK;
  });
}

pfl_status pfl_verify_lemmas_json(const pfl_graph* graph, const char* options_json,
                                  char** out_json) {
  return guarded([&]() -> pfl_status {
    if (out_json == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null output argument");
    }
    const CertifiedGraph& certified = deref(graph);
    const Json options = parse_options(options_json);

    privfl::LemmaScanOptions scan;
    const std::string mode = options.value("mode", std::string("exhaustive"));
    if (mode == "exhaustive") {
      scan.mode = privfl::LemmaScanMode::kExhaustive;
    } else if (mode == "random") {
      scan.mode = privfl::LemmaScanMode::kRandom;
    } else if (mode == "single") {
      scan.mode = privfl::LemmaScanMode::kSingle;
    } else {
      throw Error(ErrorCode::kConfigInvalid, "mode must be exhaustive, random, or single");
    }
    scan.radius = options.value("radius", -1);
    if (options.contains("m")) {
      if (options.at("m").is_array()) {
        scan.ms = options.at("m").get<std::vector<int>>();
      } else {
        scan.ms = {options.at("m").get<int>()};
      }
    }
    scan.cap = options.value("cap", std::uint64_t{4} << 20);
    scan.samples = options.value("samples", std::uint64_t{100000});
    scan.seed = options.value("seed", std::uint64_t{0});
    if (options.contains("mapping_text")) {
      scan.mapping = privfl::parse_mapping(options.at("mapping_text").get<std::string>());
    }
    if (options.contains("packing_f")) {
      scan.packing_f = privfl::rational_from_json(options.at("packing_f"));
    }

    privfl::LemmaScanResult result = privfl::lemma_scan(certified, scan);
    *out_json = copy_to_c_string(privfl::lemma_scan_report(certified, scan, result).dump(2));
    return result.all_hold() ? PFL_OK : PFL_VERIFICATION_FAILED;
  });
}

pfl_status pfl_audit_json(const pfl_graph* graph, const char* options_json, char** out_json) {
  return guarded([&]() -> pfl_status {
    if (out_json == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null output argument");
    }
    const CertifiedGraph& certified = deref(graph);
    const Json options = parse_options(options_json);

    privfl::AuditRunOptions run;
    run.mechanism = options.value("mechanism", std::string("identity"));
    run.epsilon = options.value("epsilon", 1.0);
    if (options.contains("audit_epsilon")) {
      run.audit_epsilon = options.at("audit_epsilon").get<double>();
    }
    run.m = options.value("m", 1);
    if (options.contains("f")) run.uniform_f = privfl::rational_from_json(options.at("f"));
    run.candidate_radius = options.value("candidate_radius", 1);
    run.candidate_cap = options.value("candidate_cap", std::uint64_t{4096});
    run.dataset_cap = options.value("dataset_cap", std::uint64_t{1} << 20);

    privfl::AuditRunOutcome outcome = privfl::audit_run(certified, run);
    *out_json = copy_to_c_string(outcome.json.dump(2));
    return outcome.report.pass ? PFL_OK : PFL_VERIFICATION_FAILED;
  });
}

pfl_status pfl_run_experiment_json(const char* config_json, char** out_json) {
  return guarded([&]() -> pfl_status {
    if (config_json == nullptr || out_json == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "null argument");
    }
    Json parsed = Json::parse(config_json, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::kConfigInvalid, "config is not valid JSON");
    }
    privfl::ExperimentConfig config = privfl::ExperimentConfig::from_json(parsed);
    privfl::RunReport report = privfl::run_experiment(config);
    *out_json = copy_to_c_string(report.to_json().dump(2));
    return report.verification_passed ? PFL_OK : PFL_VERIFICATION_FAILED;
  });
}

void pfl_string_free(char* text) { delete[] text; }

}  // extern "C"
