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

#include "privfl/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "privfl/error.hpp"
#include "privfl/rng.hpp"

namespace privfl {

namespace {

constexpr long double kProbabilityTolerance = 1e-9L;

}  // namespace

FiniteMechanism::FiniteMechanism(std::string name, std::vector<Mapping> candidates,
                                 ProbabilityFn probabilities, double declared_epsilon)
    : name_(std::move(name)),
      candidates_(std::move(candidates)),
      probabilities_(std::move(probabilities)),
      declared_epsilon_(declared_epsilon) {
  if (candidates_.empty()) {
    throw Error(ErrorCode::kEmptyCandidates, "mechanism needs at least one candidate mapping");
  }
  if (declared_epsilon_ < 0) {
    throw Error(ErrorCode::kInvalidArgument, "declared epsilon must be nonnegative");
  }
}

std::vector<long double> FiniteMechanism::probabilities(const Dataset& dataset) const {
  std::vector<long double> probs = probabilities_(dataset);
  if (probs.size() != candidates_.size()) {
    throw Error(ErrorCode::kInternal, "probability vector length mismatch");
  }
  long double sum = 0;
  for (long double p : probs) {
    if (p < 0) throw Error(ErrorCode::kInternal, "negative probability");
    sum += p;
  }
  if (std::fabs(sum - 1.0L) > kProbabilityTolerance) {
    throw Error(ErrorCode::kInternal, "probabilities do not sum to 1");
  }
  return probs;
}

std::vector<Rational> FiniteMechanism::exact_probabilities(const Dataset& dataset) const {
  if (!exact_probabilities_) {
    throw Error(ErrorCode::kPreconditionViolated, "mechanism has no exact distribution");
  }
  std::vector<Rational> probs = exact_probabilities_(dataset);
  Rational sum;
  for (const Rational& p : probs) sum += p;
  if (sum != Rational(1)) {
    throw Error(ErrorCode::kInternal, "exact probabilities do not sum to 1");
  }
  return probs;
}

FiniteMechanism identity_mechanism(int vertex_count) {
  std::vector<Mapping> candidates;
  candidates.push_back(Mapping::identity(vertex_count));
  FiniteMechanism mech(
      "identity", std::move(candidates),
      [](const Dataset&) { return std::vector<long double>{1.0L}; },
      /*declared_epsilon=*/0.0);
  mech.set_exact_probabilities([](const Dataset&) { return std::vector<Rational>{Rational(1)}; });
  return mech;
}

FiniteMechanism exponential_mechanism_sofl(const FLInstance& instance,
                                           std::vector<Mapping> candidates, double epsilon) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyCandidates, "exponential mechanism needs candidates");
  }
  if (!(epsilon > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  for (const Mapping& psi : candidates) validate_mapping(psi, instance.vertex_count());

  // Sensitivity of the sofl cost under one client change: the connection
  // term moves by at most diam(M), the open-set facility term by at most one
  // facility cost.
  const long double sensitivity = static_cast<long double>(instance.graph().diameter()) +
                                  instance.max_facility_cost().to_long_double();
  const long double scale = static_cast<long double>(epsilon) / (2.0L * sensitivity);

  // Keep a copy of the candidates inside the closure; the mechanism object
  // owns its own list independently.
  auto shared_candidates = std::make_shared<std::vector<Mapping>>(candidates);
  FLInstance shared_instance = instance;
  auto probability_fn = [shared_candidates, shared_instance,
                         scale](const Dataset& dataset) -> std::vector<long double> {
    std::vector<long double> weights;
    weights.reserve(shared_candidates->size());
    long double best_cost = 0;
    std::vector<long double> costs;
    costs.reserve(shared_candidates->size());
    for (const Mapping& psi : *shared_candidates) {
      costs.push_back(sofl_cost(shared_instance, dataset, psi).to_long_double());
    }
    best_cost = *std::min_element(costs.begin(), costs.end());
    long double total = 0;
    for (long double cost : costs) {
      long double w = std::exp(-scale * (cost - best_cost));  // shift for stability
      weights.push_back(w);
      total += w;
    }
    for (long double& w : weights) w /= total;
    return weights;
  };
  return FiniteMechanism("expmech", std::move(candidates), std::move(probability_fn), epsilon);
}

namespace {

// Mixed-radix enumeration of V^m in lexicographic order.
Dataset dataset_from_index(std::uint64_t index, int vertex_count, int m) {
  Dataset dataset;
  dataset.points.resize(m);
  for (int i = m - 1; i >= 0; --i) {
    dataset.points[i] = static_cast<int>(index % vertex_count);
    index /= vertex_count;
  }
  return dataset;
}

std::uint64_t index_of_dataset(const Dataset& dataset, int vertex_count) {
  std::uint64_t index = 0;
  for (int x : dataset.points) index = index * vertex_count + static_cast<std::uint64_t>(x);
  return index;
}

std::uint64_t checked_dataset_count(int vertex_count, int m, std::uint64_t cap) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be at least 1");
  unsigned __int128 count = 1;
  for (int i = 0; i < m; ++i) {
    count *= static_cast<unsigned>(vertex_count);
    if (count > cap) {
      throw Error(ErrorCode::kTooLarge, "|V|^m = " + uint128_to_string(count) +
                                            "... exceeds cap " + std::to_string(cap));
    }
  }
  return static_cast<std::uint64_t>(count);
}

}  // namespace

AuditReport dp_audit(const FiniteMechanism& mechanism, int vertex_count, int m, double epsilon,
                     std::uint64_t cap) {
  const std::uint64_t dataset_count = checked_dataset_count(vertex_count, m, cap);

  std::vector<std::vector<long double>> table(dataset_count);
  for (std::uint64_t i = 0; i < dataset_count; ++i) {
    table[i] = mechanism.probabilities(dataset_from_index(i, vertex_count, m));
  }

  AuditReport report;
  report.threshold = std::exp(static_cast<long double>(epsilon)) * (1.0L + kProbabilityTolerance);
  report.max_ratio = 0;

  Dataset x, x_adj;
  for (std::uint64_t i = 0; i < dataset_count; ++i) {
    x = dataset_from_index(i, vertex_count, m);
    for (int coord = 0; coord < m; ++coord) {
      x_adj = x;
      for (int w = 0; w < vertex_count; ++w) {
        if (w == x.points[coord]) continue;
        x_adj.points[coord] = w;
        const std::uint64_t j = index_of_dataset(x_adj, vertex_count);
        ++report.pairs_checked;
        const auto& p = table[i];
        const auto& q = table[j];
        for (std::size_t o = 0; o < p.size(); ++o) {
          if (p[o] <= 0) continue;
          long double ratio;
          if (q[o] <= 0) {
            ratio = std::numeric_limits<long double>::infinity();
          } else {
            ratio = p[o] / q[o];
          }
          if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            AuditWitness witness;
            witness.dataset = x;
            witness.adjacent_dataset = x_adj;
            witness.output_index = o;
            witness.probability = p[o];
            witness.adjacent_probability = q[o];
            report.witness = std::move(witness);
          }
        }
      }
    }
  }
  report.pass = report.max_ratio <= report.threshold;
  return report;
}

double group_privacy_factor(double p, double epsilon, int k) {
  if (p < 0 || p > 1) {
    throw Error(ErrorCode::kInvalidArgument, "probability must lie in [0, 1]");
  }
  if (k < 0) {
    throw Error(ErrorCode::kInvalidArgument, "group size must be nonnegative");
  }
  return p * std::exp(-epsilon * k);
}

GroupPrivacyReport group_privacy_check(const FiniteMechanism& mechanism, int vertex_count, int m,
                                       double epsilon, std::uint64_t dataset_cap,
                                       std::uint64_t event_cap) {
  const std::uint64_t dataset_count = checked_dataset_count(vertex_count, m, dataset_cap);
  const std::size_t outputs = mechanism.candidates().size();
  if (outputs >= 63 || (std::uint64_t{1} << outputs) > event_cap) {
    throw Error(ErrorCode::kTooLarge, "2^" + std::to_string(outputs) +
                                          " events exceed cap " + std::to_string(event_cap));
  }
  const std::uint64_t event_count = std::uint64_t{1} << outputs;

  std::vector<std::vector<long double>> table(dataset_count);
  for (std::uint64_t i = 0; i < dataset_count; ++i) {
    table[i] = mechanism.probabilities(dataset_from_index(i, vertex_count, m));
  }

  GroupPrivacyReport report;
  report.holds = true;
  report.worst_slack = std::numeric_limits<long double>::infinity();

  for (std::uint64_t i = 0; i < dataset_count; ++i) {
    Dataset x = dataset_from_index(i, vertex_count, m);
    for (std::uint64_t j = 0; j < dataset_count; ++j) {
      Dataset x_star = dataset_from_index(j, vertex_count, m);
      int hamming = 0;
      for (int c = 0; c < m; ++c) hamming += x.points[c] != x_star.points[c] ? 1 : 0;
      const long double factor = std::exp(-static_cast<long double>(epsilon) * hamming);
      for (std::uint64_t event = 0; event < event_count; ++event) {
        long double pr_x = 0, pr_star = 0;
        for (std::size_t o = 0; o < outputs; ++o) {
          if (event & (std::uint64_t{1} << o)) {
            pr_x += table[i][o];
            pr_star += table[j][o];
          }
        }
        ++report.events_checked;
        const long double slack = pr_star - factor * pr_x;
        report.worst_slack = std::min(report.worst_slack, slack);
        if (slack < -kProbabilityTolerance) report.holds = false;
      }
    }
  }
  return report;
}

TrialRecord run_single_trial(const FiniteMechanism& mechanism, const FLInstance& instance,
                             const std::function<HardDataset(std::uint64_t)>& dataset_source,
                             int trial_index, std::uint64_t trial_seed, std::uint64_t opt_cap) {
  TrialRecord record;
  record.trial = trial_index;
  record.seed = trial_seed;

  HardDataset hard = dataset_source(trial_seed);
  record.center = hard.center;
  record.dataset = hard.dataset;

  OptResult opt = brute_force_opt(instance, hard.dataset, opt_cap);
  record.opt_cost = opt.cost;
  if (opt.cost <= Rational(0)) {
    throw Error(ErrorCode::kInternal, "optimum is not positive; ratios undefined");
  }

  if (mechanism.has_exact_probabilities()) {
    std::vector<Rational> probs = mechanism.exact_probabilities(hard.dataset);
    Rational expectation;
    for (std::size_t o = 0; o < probs.size(); ++o) {
      if (probs[o].is_zero()) continue;
      expectation += probs[o] * sofl_cost(instance, hard.dataset, mechanism.candidates()[o]);
    }
    record.exact = true;
    record.expected_cost_exact = expectation;
    record.expected_cost = expectation.to_long_double();
    record.ratio_exact = expectation / opt.cost;
    record.ratio = record.ratio_exact.to_long_double();
  } else {
    std::vector<long double> probs = mechanism.probabilities(hard.dataset);
    long double expectation = 0;
    for (std::size_t o = 0; o < probs.size(); ++o) {
      if (probs[o] <= 0) continue;
      expectation += probs[o] * sofl_cost(instance, hard.dataset, mechanism.candidates()[o]).to_long_double();
    }
    record.exact = false;
    record.expected_cost = expectation;
    record.ratio = expectation / opt.cost.to_long_double();
  }
  return record;
}

ApproxRatioResult empirical_approx_ratio(const FiniteMechanism& mechanism,
                                         const FLInstance& instance,
                                         const std::function<HardDataset(std::uint64_t)>& dataset_source,
                                         int trials, std::uint64_t master_seed,
                                         std::uint64_t opt_cap) {
  if (trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one trial");
  }
  ApproxRatioResult result;
  result.trials.reserve(trials);
  long double total = 0;
  for (int t = 0; t < trials; ++t) {
    TrialRecord record = run_single_trial(mechanism, instance, dataset_source, t,
                                          derive_trial_seed(master_seed, t), opt_cap);
    total += record.ratio;
    result.trials.push_back(std::move(record));
  }
  result.mean_ratio = total / trials;
  return result;
}

}  // namespace privfl
