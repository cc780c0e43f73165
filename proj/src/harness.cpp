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

#include "privfl/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "privfl/error.hpp"
#include "privfl/version.hpp"

namespace privfl {

// ---------------------------------------------------------------------------
// Small JSON helpers
// ---------------------------------------------------------------------------

Json rational_to_json(const Rational& value) {
  return Json{{"exact", value.to_string()}, {"approx", value.to_double()}};
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) {
    return Rational(value.get<long long>());
  }
  std::string text;
  if (value.is_string()) {
    text = value.get<std::string>();
  } else if (value.is_object() && value.contains("exact")) {
    text = value.at("exact").get<std::string>();
  } else {
    throw Error(ErrorCode::kConfigInvalid,
                "rational values must be integers or 'p/q' strings");
  }
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text));
    }
    return Rational::from_int64(std::stoll(text.substr(0, slash)),
                                std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfigInvalid, "cannot parse rational '" + text + "'");
  }
}

std::string format_long_double(long double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12Lg", value);
  return std::string(buffer);
}

namespace {

Json graph_summary(const CertifiedGraph& certified) {
  Json j;
  j["n"] = certified.graph.vertex_count();
  j["d"] = certified.graph.regular_degree().value_or(-1);
  if (certified.certificate.girth.has_value()) {
    j["girth"] = *certified.certificate.girth;
  } else {
    j["girth"] = "inf";
  }
  return j;
}

Json inequality_report_to_json(const InequalityReport& report) {
  Json rows = Json::array();
  for (const InequalityRecord& r : report.records) {
    rows.push_back(Json{{"name", r.name},
                        {"lhs", static_cast<double>(r.lhs)},
                        {"rhs", static_cast<double>(r.rhs)},
                        {"relation", r.relation},
                        {"holds", r.holds}});
  }
  return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lemma scans
// ---------------------------------------------------------------------------

bool LemmaScanResult::all_hold() const {
  if (counting_identity_violations > 0 || lemma31_violations > 0) return false;
  for (const auto& agg : lemma32) {
    if (agg.violations > 0) return false;
  }
  for (const auto& agg : packing) {
    if (agg.probability_violations > 0 || agg.implication_violations > 0) return false;
  }
  return true;
}

LemmaScanResult lemma_scan(const CertifiedGraph& certified, const LemmaScanOptions& options) {
  const Graph& graph = certified.graph;
  if (!graph.regular_degree().has_value()) {
    throw Error(ErrorCode::kPreconditionViolated, "lemma scans need a regular graph");
  }
  const int admissible = max_admissible_radius(certified);
  const int radius = options.radius < 0 ? admissible : options.radius;
  if (radius > admissible) {
    throw Error(ErrorCode::kRadiusTooLarge,
                "radius " + std::to_string(radius) + " is not admissible for girth " +
                    std::to_string(certified.girth_or_max()));
  }
  for (int m : options.ms) {
    if (m < 1) throw Error(ErrorCode::kInvalidArgument, "lemma m values must be positive");
  }

  const long long n = graph.vertex_count();
  const long long d = *graph.regular_degree();

  LemmaScanResult result;
  result.radius = radius;
  result.lemma32.reserve(options.ms.size());
  for (int m : options.ms) {
    Lemma32Aggregate agg;
    agg.m = m;
    agg.bound = static_cast<long double>(m) * m / std::sqrt(static_cast<long double>(d));
    result.lemma32.push_back(agg);
  }
  const std::vector<int> packing_ms =
      options.packing_ms.empty() ? options.ms : options.packing_ms;
  if (options.packing_f.has_value()) {
    for (int m : packing_ms) {
      if (m < 1) throw Error(ErrorCode::kInvalidArgument, "packing m values must be positive");
      PackingAggregate agg;
      agg.m = m;
      result.packing.push_back(agg);
    }
  }

  auto inspect = [&](const Mapping& psi) {
    ++result.mappings_checked;

    Lemma31Result l31 = lemma31_check(certified, psi);
    result.max_deficiency_sum = std::max(result.max_deficiency_sum, l31.deficiency_sum);
    if (l31.deficiency_sum > n) ++result.counting_identity_violations;
    if (!l31.holds) ++result.lemma31_violations;
    result.max_violating_fraction =
        std::max(result.max_violating_fraction, l31.violating_fraction);

    for (std::size_t i = 0; i < options.ms.size(); ++i) {
      Lemma32Result l32 = lemma32_check(certified, psi, options.ms[i]);
      if (!l32.holds) ++result.lemma32[i].violations;
      result.lemma32[i].max_probability =
          std::max(result.lemma32[i].max_probability, l32.exact_probability);
    }

    if (options.packing_f.has_value()) {
      for (std::size_t i = 0; i < packing_ms.size(); ++i) {
        PackingEventProbabilities events =
            packing_event_probabilities(certified, psi, packing_ms[i], *options.packing_f);
        if (events.low_cost > events.collision) ++result.packing[i].probability_violations;
        if (!events.implication_holds) ++result.packing[i].implication_violations;
        result.packing[i].max_low_cost_probability =
            std::max(result.packing[i].max_low_cost_probability, events.low_cost);
        result.packing[i].max_collision_probability =
            std::max(result.packing[i].max_collision_probability, events.collision);
      }
    }
  };

  switch (options.mode) {
    case LemmaScanMode::kExhaustive:
      for_each_bounded_radius_mapping(graph, radius, options.cap, inspect);
      break;
    case LemmaScanMode::kRandom: {
      std::mt19937_64 rng(options.seed);
      for (std::uint64_t i = 0; i < options.samples; ++i) {
        inspect(sample_bounded_radius_mapping(graph, radius, rng));
      }
      break;
    }
    case LemmaScanMode::kSingle: {
      if (!options.mapping.has_value()) {
        throw Error(ErrorCode::kInvalidArgument, "single mode needs a mapping");
      }
      inspect(*options.mapping);
      break;
    }
  }
  return result;
}

Json lemma_scan_report(const CertifiedGraph& certified, const LemmaScanOptions& options,
                       const LemmaScanResult& result) {
  Json j;
  j["version"] = kVersion;
  j["graph"] = graph_summary(certified);
  switch (options.mode) {
    case LemmaScanMode::kExhaustive:
      j["mode"] = "exhaustive";
      break;
    case LemmaScanMode::kRandom:
      j["mode"] = "random";
      j["seed"] = options.seed;
      j["samples"] = options.samples;
      break;
    case LemmaScanMode::kSingle:
      j["mode"] = "single";
      break;
  }
  j["radius"] = result.radius;
  j["mappings_checked"] = result.mappings_checked;
  j["counting_identity"] = Json{{"violations", result.counting_identity_violations},
                                {"max_deficiency_sum", result.max_deficiency_sum},
                                {"bound", certified.graph.vertex_count()}};
  const long double d = static_cast<long double>(*certified.graph.regular_degree());
  j["lemma31"] = Json{{"violations", result.lemma31_violations},
                      {"max_violating_fraction", rational_to_json(result.max_violating_fraction)},
                      {"bound_approx", static_cast<double>(1.0L / std::sqrt(d))}};
  Json l32 = Json::array();
  for (const auto& agg : result.lemma32) {
    l32.push_back(Json{{"m", agg.m},
                       {"violations", agg.violations},
                       {"max_probability", rational_to_json(agg.max_probability)},
                       {"bound_approx", static_cast<double>(agg.bound)}});
  }
  j["lemma32"] = l32;
  if (!result.packing.empty()) {
    Json packing = Json::array();
    for (const auto& agg : result.packing) {
      packing.push_back(
          Json{{"m", agg.m},
               {"probability_violations", agg.probability_violations},
               {"implication_violations", agg.implication_violations},
               {"max_low_cost_probability", rational_to_json(agg.max_low_cost_probability)},
               {"max_collision_probability", rational_to_json(agg.max_collision_probability)}});
    }
    j["packing"] = packing;
    j["packing_f"] = rational_to_json(*options.packing_f);
  }
  j["all_hold"] = result.all_hold();
  return j;
}

// ---------------------------------------------------------------------------
// Params report
// ---------------------------------------------------------------------------

Json params_report(const HardInstanceParams& params) {
  Json j;
  j["version"] = kVersion;
  Json inputs;
  inputs["log_n"] = static_cast<double>(params.log_n);
  if (params.n.has_value()) inputs["n"] = *params.n;
  inputs["epsilon"] = params.epsilon;
  inputs["C"] = params.C;
  inputs["gamma_constant"] = params.gamma_constant;
  j["inputs"] = inputs;

  Json schedule;
  schedule["gamma"] = static_cast<double>(params.gamma);
  schedule["g"] = params.g;
  schedule["d"] = static_cast<double>(params.d);
  if (params.d < 9.0e18L) {
    schedule["d_exact"] = std::to_string(static_cast<unsigned long long>(params.d));
  }
  schedule["f"] = rational_to_json(params.f);
  schedule["m"] = params.m;
  schedule["eps_star"] = static_cast<double>(params.eps_star);
  schedule["used_eps_star"] = params.used_eps_star;
  schedule["effective_epsilon"] = static_cast<double>(params.effective_epsilon);
  schedule["lower_bound_value"] = static_cast<double>(params.gamma);
  j["schedule"] = schedule;

  const InequalityReport report = check_proof_inequalities(params);
  j["inequalities"] = inequality_report_to_json(report);
  j["all_inequalities_hold"] = report.all_hold();
  return j;
}

// ---------------------------------------------------------------------------
// Audit runs
// ---------------------------------------------------------------------------

namespace {

std::vector<Mapping> collect_candidates(const Graph& graph, int radius, std::uint64_t cap) {
  std::vector<Mapping> candidates;
  candidates.reserve(count_bounded_radius_mappings(graph, radius, cap));
  for_each_bounded_radius_mapping(graph, radius, cap,
                                  [&](const Mapping& psi) { candidates.push_back(psi); });
  return candidates;
}

FiniteMechanism build_mechanism(const CertifiedGraph& certified, const std::string& kind,
                                double epsilon, const Rational& uniform_f, int candidate_radius,
                                std::uint64_t candidate_cap) {
  if (kind == "identity") {
    return identity_mechanism(certified.graph.vertex_count());
  }
  if (kind == "expmech") {
    FLInstance instance(certified.graph, uniform_f);
    return exponential_mechanism_sofl(
        instance, collect_candidates(certified.graph, candidate_radius, candidate_cap), epsilon);
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown mechanism kind '" + kind + "'");
}

}  // namespace

AuditRunOutcome audit_run(const CertifiedGraph& certified, const AuditRunOptions& options) {
  FiniteMechanism mechanism =
      build_mechanism(certified, options.mechanism, options.epsilon, options.uniform_f,
                      options.candidate_radius, options.candidate_cap);
  const double audit_epsilon = options.audit_epsilon.value_or(options.epsilon);
  AuditReport report = dp_audit(mechanism, certified.graph.vertex_count(), options.m,
                                audit_epsilon, options.dataset_cap);

  Json j;
  j["version"] = kVersion;
  j["graph"] = graph_summary(certified);
  j["mechanism"] = options.mechanism;
  j["epsilon"] = options.epsilon;
  j["audit_epsilon"] = audit_epsilon;
  j["m"] = options.m;
  j["candidates"] = mechanism.candidates().size();
  j["pairs_checked"] = report.pairs_checked;
  j["max_ratio"] = static_cast<double>(report.max_ratio);
  j["threshold"] = static_cast<double>(report.threshold);
  j["pass"] = report.pass;
  if (report.witness.has_value()) {
    const AuditWitness& w = *report.witness;
    j["witness"] = Json{{"dataset", w.dataset.points},
                        {"adjacent_dataset", w.adjacent_dataset.points},
                        {"output_index", w.output_index},
                        {"probability", static_cast<double>(w.probability)},
                        {"adjacent_probability", static_cast<double>(w.adjacent_probability)}};
  } else {
    j["witness"] = nullptr;
  }
  return AuditRunOutcome{std::move(report), std::move(j)};
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

CertifiedGraph build_graph_from_spec(const Json& spec) {
  try {
    if (!spec.is_object()) {
      throw Error(ErrorCode::kConfigInvalid, "graph spec must be an object");
    }
    if (spec.contains("fixture")) {
      return known_fixture(spec.at("fixture").get<std::string>());
    }
    if (spec.contains("file")) {
      return read_graph_file(spec.at("file").get<std::string>());
    }
    if (spec.contains("construct")) {
      const Json& c = spec.at("construct");
      return construct_regular_girth_graph(
          c.at("n").get<int>(), c.at("d").get<int>(), c.at("g").get<int>(),
          c.value("seed", std::uint64_t{0}), c.value("budget", std::uint64_t{200000}));
    }
    throw Error(ErrorCode::kConfigInvalid, "graph spec needs 'fixture', 'file', or 'construct'");
  } catch (const Error& err) {
    throw Error(ErrorCode::kConfigInvalid, std::string("stage graph: ") + err.what());
  } catch (const Json::exception& err) {
    throw Error(ErrorCode::kConfigInvalid, std::string("stage graph: ") + err.what());
  }
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["graph"] = graph_spec;
  j["mechanism"] = mechanism_spec;
  j["f"] = uniform_f.to_string();
  j["m"] = m;
  j["trials"] = trials;
  j["master_seed"] = master_seed;
  j["opt_cap"] = opt_cap;
  j["threads"] = threads;
  j["check_lemmas"] = check_lemmas;
  if (params_check.has_value()) j["params_check"] = *params_check;
  if (!csv_path.empty()) j["csv_path"] = csv_path;
  if (!json_path.empty()) j["json_path"] = json_path;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const Json& json) {
  try {
    if (!json.is_object()) {
      throw Error(ErrorCode::kConfigInvalid, "config must be a JSON object");
    }
    ExperimentConfig config;
    if (!json.contains("graph")) {
      throw Error(ErrorCode::kConfigInvalid, "stage graph: missing 'graph' spec");
    }
    config.graph_spec = json.at("graph");
    config.mechanism_spec = json.value("mechanism", Json{{"kind", "identity"}});
    if (json.contains("f")) config.uniform_f = rational_from_json(json.at("f"));
    config.m = json.value("m", 1);
    config.trials = json.value("trials", 1);
    config.master_seed = json.value("master_seed", std::uint64_t{0});
    config.opt_cap = json.value("opt_cap", std::uint64_t{1} << 20);
    config.threads = json.value("threads", 1);
    config.check_lemmas = json.value("check_lemmas", true);
    if (json.contains("params_check")) config.params_check = json.at("params_check");
    config.csv_path = json.value("csv_path", std::string{});
    config.json_path = json.value("json_path", std::string{});

    if (config.m < 1) throw Error(ErrorCode::kConfigInvalid, "m must be at least 1");
    if (config.trials < 1) throw Error(ErrorCode::kConfigInvalid, "trials must be at least 1");
    if (config.threads < 1) throw Error(ErrorCode::kConfigInvalid, "threads must be at least 1");
    if (config.uniform_f.is_negative()) {
      throw Error(ErrorCode::kConfigInvalid, "f must be nonnegative");
    }
    if (!config.mechanism_spec.is_object() || !config.mechanism_spec.contains("kind")) {
      throw Error(ErrorCode::kConfigInvalid, "stage mechanism: spec needs a 'kind'");
    }
    return config;
  } catch (const Json::exception& err) {
    throw Error(ErrorCode::kConfigInvalid, std::string("config: ") + err.what());
  }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open config file '" + path + "'");
  }
  Json json;
  try {
    in >> json;
  } catch (const Json::exception& err) {
    throw Error(ErrorCode::kConfigInvalid, "config file '" + path + "': " + err.what());
  }
  return from_json(json);
}

namespace {

std::string csv_escape_dataset(const Dataset& dataset) {
  std::string out = "\"";
  for (std::size_t i = 0; i < dataset.points.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(dataset.points[i]);
  }
  out += '"';
  return out;
}

std::string build_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "# " << kProjectName << " v" << kVersion << "\n";
  out << "trial,center_v,dataset,cost,opt,ratio\n";
  for (const TrialRecord& r : records) {
    out << r.trial << ',' << r.center << ',' << csv_escape_dataset(r.dataset) << ',';
    if (r.exact) {
      out << r.expected_cost_exact.to_string() << ',' << r.opt_cost.to_string() << ','
          << r.ratio_exact.to_string();
    } else {
      out << format_long_double(r.expected_cost) << ',' << r.opt_cost.to_string() << ','
          << format_long_double(r.ratio);
    }
    out << '\n';
  }
  return out.str();
}

Json trial_to_json(const TrialRecord& r) {
  Json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["center_v"] = r.center;
  j["dataset"] = r.dataset.points;
  if (r.exact) {
    j["cost"] = rational_to_json(r.expected_cost_exact);
    j["ratio"] = rational_to_json(r.ratio_exact);
  } else {
    j["cost"] = static_cast<double>(r.expected_cost);
    j["ratio"] = static_cast<double>(r.ratio);
  }
  j["opt"] = rational_to_json(r.opt_cost);
  return j;
}

}  // namespace

Json RunReport::to_json() const {
  Json j;
  j["version"] = version;
  j["config"] = config_echo;
  j["mean_ratio"] = static_cast<double>(mean_ratio);
  Json trial_rows = Json::array();
  for (const TrialRecord& r : trials) trial_rows.push_back(trial_to_json(r));
  j["trials"] = trial_rows;
  j["lemma_summary"] = lemma_summary;
  j["inequality_report"] = inequality_report;
  j["verification_passed"] = verification_passed;
  j["wall_seconds"] = wall_seconds;
  return j;
}

RunReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();

  RunReport report;
  report.version = kVersion;
  report.config_echo = config.to_json();
  report.lemma_summary = nullptr;
  report.inequality_report = nullptr;

  CertifiedGraph certified = build_graph_from_spec(config.graph_spec);

  if (config.params_check.has_value()) {
    try {
      const Json& p = *config.params_check;
      HardInstanceParams params =
          select_params_log(p.at("log_n").get<double>(), p.at("epsilon").get<double>(),
                            p.value("C", 1.0), p.value("gamma_constant", 1e-4));
      report.inequality_report = inequality_report_to_json(check_proof_inequalities(params));
    } catch (const Error& err) {
      throw Error(err.code(), std::string("stage params: ") + err.what());
    } catch (const Json::exception& err) {
      throw Error(ErrorCode::kConfigInvalid, std::string("stage params: ") + err.what());
    }
  }

  FiniteMechanism mechanism = [&] {
    try {
      const Json& spec = config.mechanism_spec;
      const std::string kind = spec.at("kind").get<std::string>();
      return build_mechanism(certified, kind, spec.value("epsilon", 1.0), config.uniform_f,
                             spec.value("candidate_radius", 1),
                             spec.value("candidate_cap", std::uint64_t{1} << 20));
    } catch (const Error& err) {
      throw Error(ErrorCode::kConfigInvalid, std::string("stage mechanism: ") + err.what());
    } catch (const Json::exception& err) {
      throw Error(ErrorCode::kConfigInvalid, std::string("stage mechanism: ") + err.what());
    }
  }();

  // Trials, optionally across threads; records land in their trial slot, so
  // the merged result does not depend on scheduling.
  FLInstance instance(certified.graph, config.uniform_f);
  const Graph& graph = certified.graph;
  const int m = config.m;
  auto dataset_source = [&graph, m](std::uint64_t seed) {
    return sample_hard_dataset(graph, m, seed);
  };

  report.trials.resize(config.trials);
  {
    const int worker_count = std::min(config.threads, config.trials);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&](int worker) {
      for (int t = worker; t < config.trials; t += worker_count) {
        try {
          report.trials[t] =
              run_single_trial(mechanism, instance, dataset_source, t,
                               derive_trial_seed(config.master_seed, t), config.opt_cap);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    if (worker_count <= 1) {
      work(0);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(worker_count);
      for (int w = 0; w < worker_count; ++w) workers.emplace_back(work, w);
      for (auto& thread : workers) thread.join();
    }
    if (first_error) {
      try {
        std::rethrow_exception(first_error);
      } catch (const Error& err) {
        throw Error(err.code(), std::string("stage trials: ") + err.what());
      }
    }
  }

  long double ratio_sum = 0;
  for (const TrialRecord& r : report.trials) ratio_sum += r.ratio;
  report.mean_ratio = ratio_sum / config.trials;

  if (config.check_lemmas) {
    const int admissible = max_admissible_radius(certified);
    long long checked = 0, skipped = 0;
    long long counting_violations = 0, l31_violations = 0, l32_violations = 0;
    long long max_def_sum = 0;
    for (const Mapping& psi : mechanism.candidates()) {
      if (mapping_radius(certified.graph, psi) > admissible) {
        ++skipped;
        continue;
      }
      ++checked;
      Lemma31Result l31 = lemma31_check(certified, psi);
      max_def_sum = std::max(max_def_sum, l31.deficiency_sum);
      if (l31.deficiency_sum > certified.graph.vertex_count()) ++counting_violations;
      if (!l31.holds) ++l31_violations;
      Lemma32Result l32 = lemma32_check(certified, psi, config.m);
      if (!l32.holds) ++l32_violations;
    }
    report.lemma_summary =
        Json{{"candidates", mechanism.candidates().size()},
             {"checked", checked},
             {"skipped_inadmissible", skipped},
             {"counting_identity_violations", counting_violations},
             {"lemma31_violations", l31_violations},
             {"lemma32_violations", l32_violations},
             {"max_deficiency_sum", max_def_sum},
             {"m", config.m}};
    report.verification_passed =
        counting_violations == 0 && l31_violations == 0 && l32_violations == 0;
  }

  report.csv_text = build_csv(report.trials);
  if (!config.csv_path.empty()) {
    std::ofstream out(config.csv_path);
    if (!out) {
      throw Error(ErrorCode::kIoError, "stage io: cannot open '" + config.csv_path + "'");
    }
    out << report.csv_text;
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!config.json_path.empty()) {
    std::ofstream out(config.json_path);
    if (!out) {
      throw Error(ErrorCode::kIoError, "stage io: cannot open '" + config.json_path + "'");
    }
    out << report.to_json().dump(2) << '\n';
  }
  return report;
}

}  // namespace privfl
