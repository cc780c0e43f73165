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

#ifndef PRIVFL_HARD_INSTANCE_HPP
#define PRIVFL_HARD_INSTANCE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "privfl/fl_core.hpp"
#include "privfl/graph.hpp"
#include "privfl/rational.hpp"

namespace privfl {

// Parameter schedule for the packing construction. Metric sizes of interest
// are far beyond 2^64, so the canonical representation is log_n = ln(n);
// the exact n is kept only when it fits a machine word.
struct HardInstanceParams {
  long double log_n = 0;
  std::optional<std::uint64_t> n;

  double epsilon = 0;         // requested privacy budget
  double C = 1;               // the "sufficiently large" constant in eps_star
  double gamma_constant = 1e-4;

  long double eps_star = 0;   // C * (ln ln n)^2 / ln n
  bool used_eps_star = false; // true when epsilon <= eps_star
  long double effective_epsilon = 0;  // max(epsilon, eps_star)

  long double gamma = 0;      // target approximation-ratio lower bound
  int g = 0;                  // girth target
  long double d = 0;          // floor(n^{1/g} / 4); integer-valued
  Rational f;                 // facility cost g/2 - 1
  long long m = 0;            // dataset size
};

// All schedule formulas use the natural logarithm. The gamma constant
// defaults to 1e-4 but is exposed as a knob.
HardInstanceParams select_params_log(long double log_n, double epsilon, double C = 1,
                                     double gamma_constant = 1e-4);
HardInstanceParams select_params(std::uint64_t n, double epsilon, double C = 1,
                                 double gamma_constant = 1e-4);

// The concrete approximation-ratio lower bound
// gamma_constant * sqrt(log n / max(epsilon, eps_star)).
long double lower_bound_value_log(long double log_n, double epsilon, double C = 1,
                                  double gamma_constant = 1e-4);
long double lower_bound_value(std::uint64_t n, double epsilon, double C = 1,
                              double gamma_constant = 1e-4);

struct InequalityRecord {
  std::string name;
  long double lhs = 0;
  long double rhs = 0;
  std::string relation;  // "<", "<=", ">", ">="
  bool holds = false;
};

struct InequalityReport {
  std::vector<InequalityRecord> records;

  bool all_hold() const;
  const InequalityRecord& at(const std::string& name) const;
};

// Evaluates the five inequalities the contradiction chain rests on, at full
// long-double precision; failing rows are reported, never thrown.
InequalityReport check_proof_inequalities(const HardInstanceParams& params);

// A random center and m of its neighbors drawn i.i.d. with replacement.
struct HardDataset {
  int center = -1;
  Dataset dataset;
  std::uint64_t seed = 0;
};

HardDataset sample_hard_dataset(const Graph& graph, int m, std::uint64_t seed);

// Largest integer radius strictly below g/2 - 1.
int max_admissible_radius(int girth);
int max_admissible_radius(const CertifiedGraph& certified);

// Throws RadiusTooLarge unless rad(psi) < g/2 - 1.
void require_admissible_radius(const CertifiedGraph& certified, const Mapping& mapping);

// Per-vertex d - |psi(N(v))|. The sum over all vertices never exceeds n for
// admissible mappings; callers rely on that counting identity.
std::vector<int> neighborhood_image_deficiency(const CertifiedGraph& certified,
                                               const Mapping& mapping);

struct Lemma31Result {
  long long violating_count = 0;    // vertices with |psi(N(v))| < d - sqrt(d)
  Rational violating_fraction;
  long long deficiency_sum = 0;
  bool holds = false;               // fraction < 1/sqrt(d), checked exactly
};

Lemma31Result lemma31_check(const CertifiedGraph& certified, const Mapping& mapping);

// Probability that m i.i.d. uniform draws from d items, partitioned into
// classes of the given sizes, land in non-distinct classes:
// 1 - m! * e_m(c_1, ..., c_k) / d^m, exactly.
Rational collision_probability_exact(const std::vector<int>& class_sizes, int m);

struct Lemma32Result {
  Rational exact_probability;
  long double bound = 0;  // m^2 / sqrt(d)
  bool holds = false;     // probability < bound, checked exactly
};

Lemma32Result lemma32_check(const CertifiedGraph& certified, const Mapping& mapping, int m);

// Both sides of the packing step at desk scale, by exact enumeration over
// the dataset distribution (uniform center, m i.i.d. neighbors):
//   low_cost:  Pr[sofl cost with uniform facility cost f is below m*f]
//   collision: Pr[|psi({u_1, ..., u_m})| < m]
// For every single outcome, low cost forces a collision; implication_holds
// records that the pointwise check found no counterexample.
struct PackingEventProbabilities {
  Rational low_cost;
  Rational collision;
  bool implication_holds = false;
};

PackingEventProbabilities packing_event_probabilities(const CertifiedGraph& certified,
                                                      const Mapping& mapping, int m,
                                                      const Rational& uniform_f);

// Balls of radius r (sorted vertex lists), the exact count of radius-<=r
// mappings, and an odometer enumeration of all of them.
std::vector<std::vector<int>> radius_balls(const Graph& graph, int r);
std::uint64_t count_bounded_radius_mappings(const Graph& graph, int r, std::uint64_t cap);
void for_each_bounded_radius_mapping(const Graph& graph, int r, std::uint64_t cap,
                                     const std::function<void(const Mapping&)>& fn);

// Uniform sample from the radius-<=r mappings (independent per vertex).
Mapping sample_bounded_radius_mapping(const Graph& graph, int r, std::mt19937_64& rng);

}  // namespace privfl

#endif  // PRIVFL_HARD_INSTANCE_HPP
