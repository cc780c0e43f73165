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

#include "privfl/hard_instance.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <queue>

#include "privfl/error.hpp"
#include "privfl/rng.hpp"

namespace privfl {

namespace {

constexpr long double kLogNLimit = 1e6L;

long double eps_star_of(long double log_n, double C) {
  return static_cast<long double>(C) * std::pow(std::log(log_n), 2.0L) / log_n;
}

}  // namespace

HardInstanceParams select_params_log(long double log_n, double epsilon, double C,
                                     double gamma_constant) {
  if (!(log_n > 1.0L) || log_n > kLogNLimit) {
    throw Error(ErrorCode::kInvalidArgument, "log n must be in (1, 1e6]");
  }
  if (!(epsilon > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  if (!(C > 0) || !(gamma_constant > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "C and the gamma constant must be positive");
  }

  HardInstanceParams p;
  p.log_n = log_n;
  p.epsilon = epsilon;
  p.C = C;
  p.gamma_constant = gamma_constant;
  p.eps_star = eps_star_of(log_n, C);
  p.used_eps_star = !(static_cast<long double>(epsilon) > p.eps_star);
  p.effective_epsilon = p.used_eps_star ? p.eps_star : static_cast<long double>(epsilon);

  p.gamma = gamma_constant * std::sqrt(log_n / p.effective_epsilon);
  p.g = std::max(3, static_cast<int>(std::ceil(std::sqrt(log_n / p.effective_epsilon))));
  const long double raw_d = std::exp(log_n / p.g) / 4.0L;
  if (!std::isfinite(raw_d)) {
    throw Error(ErrorCode::kTooLarge, "graph degree overflows at this log n");
  }
  p.d = std::floor(raw_d);
  p.f = Rational(p.g - 2, 2);
  if (p.d >= 2.0L) {
    p.m = static_cast<long long>(std::ceil(0.1L * std::log(p.d) / p.effective_epsilon));
    if (p.m < 1) p.m = 1;
  }

  if (p.d < 2.0L || Rational(p.m) * p.f <= Rational(0)) {
    throw Error(ErrorCode::kDegenerateParams,
                "schedule degenerates: d = " + std::to_string(static_cast<double>(p.d)) +
                    ", m*f would be nonpositive");
  }
  return p;
}

HardInstanceParams select_params(std::uint64_t n, double epsilon, double C,
                                 double gamma_constant) {
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorCode::kPreconditionViolated, "n must be even and at least 2");
  }
  HardInstanceParams p =
      select_params_log(std::log(static_cast<long double>(n)), epsilon, C, gamma_constant);
  p.n = n;
  return p;
}

long double lower_bound_value_log(long double log_n, double epsilon, double C,
                                  double gamma_constant) {
  if (!(log_n >= std::log(4.0L))) {
    throw Error(ErrorCode::kPreconditionViolated, "n must be at least 4");
  }
  if (!(epsilon > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  const long double eff = std::max(static_cast<long double>(epsilon), eps_star_of(log_n, C));
  return gamma_constant * std::sqrt(log_n / eff);
}

long double lower_bound_value(std::uint64_t n, double epsilon, double C, double gamma_constant) {
  if (n < 4) {
    throw Error(ErrorCode::kPreconditionViolated, "n must be at least 4");
  }
  return lower_bound_value_log(std::log(static_cast<long double>(n)), epsilon, C, gamma_constant);
}

bool InequalityReport::all_hold() const {
  return std::all_of(records.begin(), records.end(),
                     [](const InequalityRecord& r) { return r.holds; });
}

const InequalityRecord& InequalityReport::at(const std::string& name) const {
  for (const InequalityRecord& r : records) {
    if (r.name == name) return r;
  }
  throw Error(ErrorCode::kInvalidArgument, "no inequality named '" + name + "'");
}

InequalityReport check_proof_inequalities(const HardInstanceParams& p) {
  InequalityReport report;
  const long double f = p.f.to_long_double();
  const long double mf = static_cast<long double>(p.m) * f;
  const long double d_pow = 0.1L / std::pow(p.d, 0.1L);

  InequalityRecord gamma_slack;
  gamma_slack.name = "2*gamma*(f+m) < m*f";
  gamma_slack.lhs = 2.0L * p.gamma * (f + static_cast<long double>(p.m));
  gamma_slack.rhs = mf;
  gamma_slack.relation = "<";
  gamma_slack.holds = gamma_slack.lhs < gamma_slack.rhs;
  report.records.push_back(gamma_slack);

  InequalityRecord packing_side;
  packing_side.name = "m^2/sqrt(d) <= 0.1/d^0.1";
  packing_side.lhs = static_cast<long double>(p.m) * static_cast<long double>(p.m) / std::sqrt(p.d);
  packing_side.rhs = d_pow;
  packing_side.relation = "<=";
  packing_side.holds = packing_side.lhs <= packing_side.rhs;
  report.records.push_back(packing_side);

  // The final contradiction, evaluated directly rather than through the
  // intermediate 0.2/d^0.1 claim, which silently assumes e^{-eps} >= 0.4.
  InequalityRecord contradiction;
  contradiction.name = "0.5*exp(-eps*m) > 0.1/d^0.1";
  contradiction.lhs = 0.5L * std::exp(-p.effective_epsilon * static_cast<long double>(p.m));
  contradiction.rhs = d_pow;
  contradiction.relation = ">";
  contradiction.holds = contradiction.lhs > contradiction.rhs;
  report.records.push_back(contradiction);

  InequalityRecord regime;
  regime.name = "eps > eps_star";
  regime.lhs = static_cast<long double>(p.epsilon);
  regime.rhs = p.eps_star;
  regime.relation = ">";
  regime.holds = regime.lhs > regime.rhs;
  report.records.push_back(regime);

  // Existence regime of the girth construction, in log space: n >= 4 d^g.
  InequalityRecord existence;
  existence.name = "log(n) >= log(4) + g*log(d)";
  existence.lhs = p.log_n;
  existence.rhs = std::log(4.0L) + static_cast<long double>(p.g) * std::log(p.d);
  existence.relation = ">=";
  existence.holds = existence.lhs >= existence.rhs;
  report.records.push_back(existence);

  return report;
}

HardDataset sample_hard_dataset(const Graph& graph, int m, std::uint64_t seed) {
  if (!graph.regular_degree().has_value()) {
    throw Error(ErrorCode::kPreconditionViolated, "hard datasets require a regular graph");
  }
  if (m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "dataset size must be at least 1");
  }
  std::mt19937_64 rng(seed);
  HardDataset out;
  out.seed = seed;
  out.center = static_cast<int>(uniform_below(rng, graph.vertex_count()));
  const auto& neighbors = graph.neighbors(out.center);
  out.dataset.points.reserve(m);
  for (int i = 0; i < m; ++i) {
    out.dataset.points.push_back(neighbors[uniform_below(rng, neighbors.size())]);
  }
  return out;
}

int max_admissible_radius(int girth) {
  // Largest integer strictly below g/2 - 1: ceil((g-2)/2) - 1.
  return (girth - 1) / 2 - 1;
}

int max_admissible_radius(const CertifiedGraph& certified) {
  if (!certified.certificate.girth.has_value()) return INT_MAX / 4;
  return max_admissible_radius(*certified.certificate.girth);
}

void require_admissible_radius(const CertifiedGraph& certified, const Mapping& mapping) {
  const int radius = mapping_radius(certified.graph, mapping);
  const int limit = max_admissible_radius(certified);
  if (radius > limit) {
    throw Error(ErrorCode::kRadiusTooLarge,
                "mapping radius " + std::to_string(radius) + " is not below g/2 - 1 (girth " +
                    std::to_string(certified.girth_or_max()) + " allows radius at most " +
                    std::to_string(limit) + ")");
  }
}

std::vector<int> neighborhood_image_deficiency(const CertifiedGraph& certified,
                                               const Mapping& mapping) {
  require_admissible_radius(certified, mapping);
  const Graph& graph = certified.graph;
  const int d = graph.regular_degree().value_or(-1);
  if (d < 0) {
    throw Error(ErrorCode::kPreconditionViolated, "deficiency is defined for regular graphs");
  }
  std::vector<int> deficiencies(graph.vertex_count());
  std::vector<int> images;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    images.clear();
    for (int u : graph.neighbors(v)) images.push_back(mapping.image[u]);
    std::sort(images.begin(), images.end());
    const int distinct =
        static_cast<int>(std::unique(images.begin(), images.end()) - images.begin());
    deficiencies[v] = d - distinct;
  }
  return deficiencies;
}

Lemma31Result lemma31_check(const CertifiedGraph& certified, const Mapping& mapping) {
  const std::vector<int> deficiencies = neighborhood_image_deficiency(certified, mapping);
  const Graph& graph = certified.graph;
  const long long d = *graph.regular_degree();
  const long long n = graph.vertex_count();

  Lemma31Result result;
  for (int def : deficiencies) {
    result.deficiency_sum += def;
    // |psi(N(v))| < d - sqrt(d)  <=>  def > sqrt(d)  <=>  def^2 > d.
    if (static_cast<long long>(def) * def > d) ++result.violating_count;
  }
  result.violating_fraction = Rational(result.violating_count, n);
  // fraction < 1/sqrt(d)  <=>  count^2 * d < n^2, exactly.
  const __int128 count = result.violating_count;
  const __int128 sum = result.deficiency_sum;
  result.holds = count * count * d < static_cast<__int128>(n) * n;

  // Markov cross-check: each violating deficiency strictly exceeds sqrt(d),
  // so count * sqrt(d) < sum(def) <= n must hold whenever the arithmetic
  // above is right. A failure here is a bug, not a data point.
  if (count > 0 && count * count * d >= sum * sum) {
    throw Error(ErrorCode::kInternal, "Markov cross-check failed in lemma31_check");
  }
  return result;
}

Rational collision_probability_exact(const std::vector<int>& class_sizes, int m) {
  if (m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "draw count m must be at least 1");
  }
  if (m > 64) {
    throw Error(ErrorCode::kTooLarge, "draw count m too large for exact arithmetic");
  }
  if (class_sizes.empty()) {
    throw Error(ErrorCode::kInvalidPartition, "partition must have at least one class");
  }
  using Int = __int128;
  Int d = 0;
  for (int c : class_sizes) {
    if (c < 1) {
      throw Error(ErrorCode::kInvalidPartition, "class sizes must be positive");
    }
    d += c;
  }

  // d^m, guarding against overflow of the exact arithmetic.
  constexpr Int kLimit = static_cast<Int>(1) << 120;
  Int d_pow = 1;
  for (int i = 0; i < m; ++i) {
    if (d_pow > kLimit / d) {
      throw Error(ErrorCode::kTooLarge, "d^m exceeds exact arithmetic range");
    }
    d_pow *= d;
  }

  // Elementary symmetric polynomial e_m over the class sizes.
  std::vector<Int> elementary(static_cast<std::size_t>(m) + 1, 0);
  elementary[0] = 1;
  for (int c : class_sizes) {
    for (int j = m; j >= 1; --j) {
      elementary[j] += elementary[j - 1] * c;
    }
  }
  Int ordered_distinct = elementary[static_cast<std::size_t>(m)];
  for (int i = 2; i <= m; ++i) ordered_distinct *= i;  // times m!

  return Rational(1) - Rational(ordered_distinct, d_pow);
}

namespace {

// Class sizes of N_G(v) grouped by psi-image, as consumed by the collision
// probability computation.
std::vector<int> neighborhood_partition(const Graph& graph, const Mapping& mapping, int v,
                                        std::vector<int>& scratch) {
  scratch.clear();
  for (int u : graph.neighbors(v)) scratch.push_back(mapping.image[u]);
  std::sort(scratch.begin(), scratch.end());
  std::vector<int> sizes;
  for (std::size_t i = 0; i < scratch.size();) {
    std::size_t j = i;
    while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
    sizes.push_back(static_cast<int>(j - i));
    i = j;
  }
  return sizes;
}

}  // namespace

Lemma32Result lemma32_check(const CertifiedGraph& certified, const Mapping& mapping, int m) {
  require_admissible_radius(certified, mapping);
  const Graph& graph = certified.graph;
  if (!graph.regular_degree().has_value()) {
    throw Error(ErrorCode::kPreconditionViolated, "lemma32_check requires a regular graph");
  }
  const long long d = *graph.regular_degree();
  const int n = graph.vertex_count();

  Rational total;
  std::vector<int> scratch;
  for (int v = 0; v < n; ++v) {
    total += collision_probability_exact(neighborhood_partition(graph, mapping, v, scratch), m);
  }
  Lemma32Result result;
  result.exact_probability = total / Rational(n);
  result.bound = static_cast<long double>(m) * m / std::sqrt(static_cast<long double>(d));

  // probability < m^2/sqrt(d)  <=>  a^2 * d < m^4 * b^2 for probability a/b.
  const __int128 a = result.exact_probability.numerator();
  const __int128 b = result.exact_probability.denominator();
  const __int128 m4 = static_cast<__int128>(m) * m * m * m;
  result.holds = a * a * d < m4 * b * b;
  return result;
}

PackingEventProbabilities packing_event_probabilities(const CertifiedGraph& certified,
                                                      const Mapping& mapping, int m,
                                                      const Rational& uniform_f) {
  require_admissible_radius(certified, mapping);
  const Graph& graph = certified.graph;
  if (!graph.regular_degree().has_value()) {
    throw Error(ErrorCode::kPreconditionViolated, "packing events require a regular graph");
  }
  if (m < 1 || m > 16) {
    throw Error(ErrorCode::kInvalidArgument, "m must be in 1..16 for exact enumeration");
  }
  if (uniform_f.is_negative()) {
    throw Error(ErrorCode::kInvalidArgument, "facility cost must be nonnegative");
  }
  const int n = graph.vertex_count();
  const int d = *graph.regular_degree();

  long long tuples_per_center = 1;
  for (int i = 0; i < m; ++i) {
    if (tuples_per_center > (1LL << 40) / d) {
      throw Error(ErrorCode::kTooLarge, "d^m too large for exact enumeration");
    }
    tuples_per_center *= d;
  }

  // cost < m*f  <=>  conn < f*(m - k) for k distinct images and integer
  // connection cost conn; compare p*(m - k) - q*conn > 0 for f = p/q.
  const long long f_num = static_cast<long long>(uniform_f.numerator());
  const long long f_den = static_cast<long long>(uniform_f.denominator());

  long long low_cost_count = 0;
  long long collision_count = 0;
  bool implication_ok = true;

  std::vector<int> index(m, 0);
  std::vector<int> images(m);
  for (int v = 0; v < n; ++v) {
    const auto& neighbors = graph.neighbors(v);
    std::fill(index.begin(), index.end(), 0);
    for (long long t = 0; t < tuples_per_center; ++t) {
      long long connection = 0;
      for (int i = 0; i < m; ++i) {
        const int u = neighbors[index[i]];
        images[i] = mapping.image[u];
        connection += graph.distance(u, images[i]);
      }
      std::sort(images.begin(), images.end());
      int distinct = 1;
      for (int i = 1; i < m; ++i) distinct += images[i] != images[i - 1] ? 1 : 0;

      const bool collision = distinct < m;
      const bool low_cost = f_num * (m - distinct) - f_den * connection > 0;
      if (collision) ++collision_count;
      if (low_cost) {
        ++low_cost_count;
        if (!collision) implication_ok = false;
      }
      // odometer
      for (int i = 0; i < m; ++i) {
        if (++index[i] < d) break;
        index[i] = 0;
      }
    }
  }

  PackingEventProbabilities out;
  const long long denom = static_cast<long long>(n) * tuples_per_center;
  out.low_cost = Rational(low_cost_count, denom);
  out.collision = Rational(collision_count, denom);
  out.implication_holds = implication_ok;
  return out;
}

std::vector<std::vector<int>> radius_balls(const Graph& graph, int r) {
  if (r < 0) {
    throw Error(ErrorCode::kInvalidArgument, "radius must be nonnegative");
  }
  std::vector<std::vector<int>> balls(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v) {
    std::vector<int> dist = graph.distances_from(v);
    for (int u = 0; u < graph.vertex_count(); ++u) {
      if (dist[u] <= r) balls[v].push_back(u);
    }
  }
  return balls;
}

std::uint64_t count_bounded_radius_mappings(const Graph& graph, int r, std::uint64_t cap) {
  const auto balls = radius_balls(graph, r);
  const unsigned __int128 limit = ~static_cast<unsigned __int128>(0);
  unsigned __int128 count = 1;
  bool overflowed = false;
  for (const auto& ball : balls) {
    if (count > limit / ball.size()) {
      overflowed = true;
      break;
    }
    count *= ball.size();
  }
  if (overflowed || count > cap) {
    const std::string exact = overflowed ? std::string("more than 2^128") : uint128_to_string(count);
    throw Error(ErrorCode::kTooLarge, "radius-" + std::to_string(r) + " mapping count " + exact +
                                          " exceeds cap " + std::to_string(cap));
  }
  return static_cast<std::uint64_t>(count);
}

void for_each_bounded_radius_mapping(const Graph& graph, int r, std::uint64_t cap,
                                     const std::function<void(const Mapping&)>& fn) {
  count_bounded_radius_mappings(graph, r, cap);  // throws TooLarge if over
  const auto balls = radius_balls(graph, r);
  const int n = graph.vertex_count();
  Mapping mapping;
  mapping.image.resize(n);
  std::vector<std::size_t> index(n, 0);
  for (int v = 0; v < n; ++v) mapping.image[v] = balls[v][0];
  for (;;) {
    fn(mapping);
    int v = 0;
    while (v < n) {
      if (++index[v] < balls[v].size()) {
        mapping.image[v] = balls[v][index[v]];
        break;
      }
      index[v] = 0;
      mapping.image[v] = balls[v][0];
      ++v;
    }
    if (v == n) break;
  }
}

Mapping sample_bounded_radius_mapping(const Graph& graph, int r, std::mt19937_64& rng) {
  const auto balls = radius_balls(graph, r);
  Mapping mapping;
  mapping.image.resize(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v) {
    mapping.image[v] = balls[v][uniform_below(rng, balls[v].size())];
  }
  return mapping;
}

}  // namespace privfl
