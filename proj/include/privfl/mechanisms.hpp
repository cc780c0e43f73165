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

#ifndef PRIVFL_MECHANISMS_HPP
#define PRIVFL_MECHANISMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "privfl/fl_core.hpp"
#include "privfl/graph.hpp"
#include "privfl/hard_instance.hpp"
#include "privfl/rational.hpp"

namespace privfl {

// A mechanism over a finite candidate list of mappings. Probabilities are
// long doubles; exponential weights are transcendental, so the auditor works
// with a documented 1e-9 relative tolerance. Mechanisms whose distribution
// is exactly rational (the identity baseline) also expose exact
// probabilities so downstream reports stay exact.
class FiniteMechanism {
 public:
  using ProbabilityFn = std::function<std::vector<long double>(const Dataset&)>;
  using ExactProbabilityFn = std::function<std::vector<Rational>(const Dataset&)>;

  FiniteMechanism(std::string name, std::vector<Mapping> candidates,
                  ProbabilityFn probabilities, double declared_epsilon);

  const std::string& name() const { return name_; }
  const std::vector<Mapping>& candidates() const { return candidates_; }
  double declared_epsilon() const { return declared_epsilon_; }

  // Distribution over candidates for this dataset; validated to sum to 1
  // within 1e-9.
  std::vector<long double> probabilities(const Dataset& dataset) const;

  bool has_exact_probabilities() const { return static_cast<bool>(exact_probabilities_); }
  std::vector<Rational> exact_probabilities(const Dataset& dataset) const;
  void set_exact_probabilities(ExactProbabilityFn fn) { exact_probabilities_ = std::move(fn); }

 private:
  std::string name_;
  std::vector<Mapping> candidates_;
  ProbabilityFn probabilities_;
  ExactProbabilityFn exact_probabilities_;
  double declared_epsilon_;
};

// Always outputs the identity mapping; 0-DP.
FiniteMechanism identity_mechanism(int vertex_count);

// Exponential mechanism over the given candidates with utility -sofl_cost.
// Sensitivity bound: changing one client moves the connection term by at
// most diam(M) and the open-facility term by at most max_v f_v.
FiniteMechanism exponential_mechanism_sofl(const FLInstance& instance,
                                           std::vector<Mapping> candidates, double epsilon);

struct AuditWitness {
  Dataset dataset;
  Dataset adjacent_dataset;
  std::size_t output_index = 0;
  long double probability = 0;
  long double adjacent_probability = 0;
};

struct AuditReport {
  long double max_ratio = 0;
  long double threshold = 0;  // e^epsilon * (1 + 1e-9)
  bool pass = false;
  std::uint64_t pairs_checked = 0;
  std::optional<AuditWitness> witness;  // attains max_ratio
};

// Exhaustive privacy audit: every dataset in V^m, every single-coordinate
// change, every output. |V|^m must not exceed `cap`.
AuditReport dp_audit(const FiniteMechanism& mechanism, int vertex_count, int m, double epsilon,
                     std::uint64_t cap);

// Group-privacy transfer: success probability p on some dataset lower-bounds
// the probability on any dataset at Hamming distance k by p * e^{-eps*k}.
double group_privacy_factor(double p, double epsilon, int k);

struct GroupPrivacyReport {
  bool holds = false;
  long double worst_slack = 0;  // min over events of Pr[X*] - e^{-eps k} Pr[X]
  std::uint64_t events_checked = 0;
};

// Exhaustive event-level check of the group-privacy bound over all dataset
// pairs in V^m and all output subsets. The number of candidate outputs must
// stay small enough that 2^candidates <= event_cap.
GroupPrivacyReport group_privacy_check(const FiniteMechanism& mechanism, int vertex_count, int m,
                                       double epsilon, std::uint64_t dataset_cap,
                                       std::uint64_t event_cap);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  int center = -1;
  Dataset dataset;
  bool exact = false;             // expected cost (and ratio) exactly rational
  Rational expected_cost_exact;   // meaningful when exact
  long double expected_cost = 0;
  Rational opt_cost;
  long double ratio = 0;
  Rational ratio_exact;           // meaningful when exact
};

// Expected sofl cost of the mechanism on one sampled dataset, against the
// brute-force optimum.
TrialRecord run_single_trial(const FiniteMechanism& mechanism, const FLInstance& instance,
                             const std::function<HardDataset(std::uint64_t)>& dataset_source,
                             int trial_index, std::uint64_t trial_seed, std::uint64_t opt_cap);

struct ApproxRatioResult {
  long double mean_ratio = 0;
  std::vector<TrialRecord> trials;
};

// Mean of per-trial E[cost]/opt over seeded trials; exact per-dataset
// expectation for finite mechanisms.
ApproxRatioResult empirical_approx_ratio(const FiniteMechanism& mechanism,
                                         const FLInstance& instance,
                                         const std::function<HardDataset(std::uint64_t)>& dataset_source,
                                         int trials, std::uint64_t master_seed,
                                         std::uint64_t opt_cap);

}  // namespace privfl

#endif  // PRIVFL_MECHANISMS_HPP
