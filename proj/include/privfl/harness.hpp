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

#ifndef PRIVFL_HARNESS_HPP
#define PRIVFL_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "privfl/fl_core.hpp"
#include "privfl/graph.hpp"
#include "privfl/hard_instance.hpp"
#include "privfl/mechanisms.hpp"
#include "privfl/rng.hpp"

namespace privfl {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Lemma verification runs (the verify-lemmas workflow)
// ---------------------------------------------------------------------------

enum class LemmaScanMode { kExhaustive, kRandom, kSingle };

struct LemmaScanOptions {
  LemmaScanMode mode = LemmaScanMode::kExhaustive;
  int radius = -1;  // -1: the largest radius admissible for the girth
  std::vector<int> ms = {2, 3, 4};
  std::uint64_t cap = 4u << 20;     // exhaustive enumeration cap
  std::uint64_t samples = 100000;   // random mode
  std::uint64_t seed = 0;           // random mode
  std::optional<Mapping> mapping;   // single mode

  // When set, additionally verify the packing step with this uniform
  // facility cost: Pr[cost < m f] <= Pr[collision] with a pointwise
  // implication check, for each m in packing_ms (default: same as ms).
  std::optional<Rational> packing_f;
  std::vector<int> packing_ms;
};

struct Lemma32Aggregate {
  int m = 0;
  long long violations = 0;
  Rational max_probability;
  long double bound = 0;
};

struct PackingAggregate {
  int m = 0;
  long long probability_violations = 0;  // low-cost prob > collision prob
  long long implication_violations = 0;  // a tuple with low cost but no collision
  Rational max_low_cost_probability;
  Rational max_collision_probability;
};

struct LemmaScanResult {
  std::uint64_t mappings_checked = 0;
  int radius = 0;

  long long counting_identity_violations = 0;  // sum(def) > n
  long long max_deficiency_sum = 0;

  long long lemma31_violations = 0;
  Rational max_violating_fraction;

  std::vector<Lemma32Aggregate> lemma32;
  std::vector<PackingAggregate> packing;

  bool all_hold() const;
};

LemmaScanResult lemma_scan(const CertifiedGraph& certified, const LemmaScanOptions& options);
Json lemma_scan_report(const CertifiedGraph& certified, const LemmaScanOptions& options,
                       const LemmaScanResult& result);

// ---------------------------------------------------------------------------
// Parameter schedule report (the params workflow)
// ---------------------------------------------------------------------------

Json params_report(const HardInstanceParams& params);

// ---------------------------------------------------------------------------
// Privacy audit runs (the audit-dp workflow)
// ---------------------------------------------------------------------------

struct AuditRunOptions {
  std::string mechanism = "identity";  // identity | expmech
  double epsilon = 1.0;                // expmech privacy budget
  std::optional<double> audit_epsilon; // audit bound; defaults to epsilon
  int m = 1;
  Rational uniform_f = Rational(1);
  int candidate_radius = 1;
  std::uint64_t candidate_cap = 1u << 20;
  std::uint64_t dataset_cap = 1u << 20;
};

struct AuditRunOutcome {
  AuditReport report;
  Json json;
};

AuditRunOutcome audit_run(const CertifiedGraph& certified, const AuditRunOptions& options);

// ---------------------------------------------------------------------------
// Experiments (the run-experiment workflow)
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  Json graph_spec;      // {"fixture": name} | {"file": path} | {"construct": {...}}
  Json mechanism_spec;  // {"kind": "identity"} | {"kind": "expmech", ...}
  Rational uniform_f = Rational(1);
  int m = 1;
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t opt_cap = 1u << 20;
  int threads = 1;
  bool check_lemmas = true;
  std::optional<Json> params_check;  // {"log_n":..., "epsilon":..., "C":...}
  std::string csv_path;              // empty: do not write
  std::string json_path;             // empty: do not write

  Json to_json() const;
  static ExperimentConfig from_json(const Json& json);
  static ExperimentConfig from_file(const std::string& path);
};

struct RunReport {
  Json config_echo;
  std::string version;
  std::vector<TrialRecord> trials;
  long double mean_ratio = 0;
  Json lemma_summary;       // null when lemma checks were disabled
  Json inequality_report;   // null when no schedule check was requested
  double wall_seconds = 0;  // excluded from the determinism contract
  std::string csv_text;
  bool verification_passed = true;

  Json to_json() const;
};

RunReport run_experiment(const ExperimentConfig& config);

// Builds the graph named by a spec; error messages carry the stage name.
CertifiedGraph build_graph_from_spec(const Json& graph_spec);

// Rational <-> JSON-friendly forms: exact "p/q" string plus decimal.
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& value);

std::string format_long_double(long double value);

}  // namespace privfl

#endif  // PRIVFL_HARNESS_HPP
