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

#include "doctest.h"
#include "privfl/error.hpp"
#include "privfl/graph.hpp"

using privfl::Dataset;
using privfl::Error;
using privfl::FiniteMechanism;
using privfl::FLInstance;
using privfl::Graph;
using privfl::Mapping;
using privfl::Rational;

namespace {

std::vector<Mapping> all_radius_one_mappings(const Graph& graph) {
  std::vector<Mapping> out;
  privfl::for_each_bounded_radius_mapping(graph, 1, 1u << 20,
                                          [&](const Mapping& psi) { out.push_back(psi); });
  return out;
}

// Non-private by construction: the output flips on the first client.
FiniteMechanism broken_mechanism(int vertex_count) {
  std::vector<Mapping> candidates;
  candidates.push_back(Mapping::identity(vertex_count));
  candidates.push_back(Mapping::constant(vertex_count, 0));
  return FiniteMechanism(
      "broken", std::move(candidates),
      [](const Dataset& dataset) {
        if (dataset.points[0] == 0) return std::vector<long double>{1.0L, 0.0L};
        return std::vector<long double>{0.0L, 1.0L};
      },
      /*declared_epsilon=*/1.0);
}

}  // namespace

TEST_CASE("the identity mechanism is input-independent") {
  FiniteMechanism mech = privfl::identity_mechanism(3);
  CHECK(mech.probabilities(Dataset{{0, 1}}) == std::vector<long double>{1.0L});
  CHECK(mech.exact_probabilities(Dataset{{2}}) == std::vector<Rational>{Rational(1)});

  privfl::AuditReport audit = privfl::dp_audit(mech, 3, 2, 0.0, 1u << 10);
  CHECK(audit.max_ratio == 1.0L);
  CHECK(audit.pass);

  // sofl cost under identity: f times the number of distinct clients.
  FLInstance inst(Graph::path(3), Rational(2));
  CHECK(privfl::sofl_cost(inst, Dataset{{0, 2, 0}}, mech.candidates()[0]) == Rational(4));
}

TEST_CASE("exponential mechanism distributions") {
  Graph path3 = Graph::path(3);
  FLInstance inst(path3, Rational(1));

  SUBCASE("a single candidate takes all the mass") {
    std::vector<Mapping> one{Mapping::identity(3)};
    FiniteMechanism mech = privfl::exponential_mechanism_sofl(inst, one, 1.0);
    auto probs = mech.probabilities(Dataset{{0, 1}});
    REQUIRE(probs.size() == 1);
    CHECK(probs[0] == doctest::Approx(1.0));
  }

  SUBCASE("equal-cost candidates split the mass evenly") {
    Graph c4 = Graph::cycle(4);
    FLInstance inst4(c4, Rational(1));
    Mapping clockwise, counterclockwise;
    clockwise.image = {1, 2, 3, 0};
    counterclockwise.image = {3, 0, 1, 2};
    FiniteMechanism mech =
        privfl::exponential_mechanism_sofl(inst4, {clockwise, counterclockwise}, 1.0);
    auto probs = mech.probabilities(Dataset{{0}});
    CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("cheaper candidates get more mass") {
    std::vector<Mapping> candidates{Mapping::identity(3), Mapping::constant(3, 0)};
    FiniteMechanism mech = privfl::exponential_mechanism_sofl(inst, candidates, 2.0);
    Dataset far{{2, 2}};
    auto probs = mech.probabilities(far);
    CHECK(probs[0] > probs[1]);  // identity serves 2 at zero connection cost
  }

  SUBCASE("empty candidate lists are rejected") {
    try {
      privfl::exponential_mechanism_sofl(inst, {}, 1.0);
      FAIL("expected EmptyCandidates");
    } catch (const Error& err) {
      CHECK(err.code() == privfl::ErrorCode::kEmptyCandidates);
    }
  }
}

TEST_CASE("the exponential mechanism passes its own audit") {
  Graph path3 = Graph::path(3);
  FLInstance inst(path3, Rational(1));
  FiniteMechanism mech =
      privfl::exponential_mechanism_sofl(inst, all_radius_one_mappings(path3), 1.0);

  privfl::AuditReport audit = privfl::dp_audit(mech, 3, 1, 1.0, 1u << 10);
  CHECK(audit.pass);
  CHECK(audit.max_ratio <= std::exp(1.0L) * (1.0L + 1e-9L));
  CHECK(audit.max_ratio >= 1.0L);
  REQUIRE(audit.witness.has_value());
  // The witness reproduces the reported ratio.
  auto p = mech.probabilities(audit.witness->dataset);
  auto q = mech.probabilities(audit.witness->adjacent_dataset);
  CHECK(p[audit.witness->output_index] / q[audit.witness->output_index] ==
        doctest::Approx(static_cast<double>(audit.max_ratio)));
}

TEST_CASE("a deliberately broken mechanism fails the audit with a witness") {
  FiniteMechanism mech = broken_mechanism(3);
  privfl::AuditReport audit = privfl::dp_audit(mech, 3, 2, 1.0, 1u << 10);
  CHECK_FALSE(audit.pass);
  REQUIRE(audit.witness.has_value());
  CHECK(std::isinf(static_cast<double>(audit.max_ratio)));
  // Reproduce: the witness pair really does have probability 0 on one side.
  auto p = mech.probabilities(audit.witness->dataset);
  auto q = mech.probabilities(audit.witness->adjacent_dataset);
  CHECK(p[audit.witness->output_index] > 0);
  CHECK(q[audit.witness->output_index] == 0);
}

TEST_CASE("the audit cap rejects oversized enumerations") {
  FiniteMechanism mech = privfl::identity_mechanism(10);
  try {
    privfl::dp_audit(mech, 10, 8, 1.0, 1000);
    FAIL("expected TooLarge");
  } catch (const Error& err) {
    CHECK(err.code() == privfl::ErrorCode::kTooLarge);
  }
}

TEST_CASE("a mis-normalized distribution is caught at the mechanism boundary") {
  FiniteMechanism mech(
      "lopsided", {Mapping::identity(3), Mapping::constant(3, 0)},
      [](const Dataset&) { return std::vector<long double>{0.5L, 0.4L}; }, 1.0);
  CHECK_THROWS_AS(mech.probabilities(Dataset{{0}}), Error);
}

TEST_CASE("group privacy factor arithmetic") {
  CHECK(privfl::group_privacy_factor(0.5, 1.0, 1) == doctest::Approx(0.5 * std::exp(-1.0)));
  CHECK(privfl::group_privacy_factor(0.37, 2.0, 0) == doctest::Approx(0.37));
  CHECK_THROWS_AS(privfl::group_privacy_factor(1.5, 1.0, 1), Error);
  CHECK_THROWS_AS(privfl::group_privacy_factor(0.5, 1.0, -1), Error);
}

TEST_CASE("group privacy bound holds for audited mechanisms, event-exhaustively") {
  Graph k2 = Graph::path(2);
  FLInstance inst(k2, Rational(1));
  for (double epsilon : {0.5, 1.0, 2.0}) {
    FiniteMechanism mech =
        privfl::exponential_mechanism_sofl(inst, all_radius_one_mappings(k2), epsilon);
    privfl::GroupPrivacyReport report =
        privfl::group_privacy_check(mech, 2, 2, epsilon, 1u << 10, 1u << 10);
    CHECK(report.holds);
    CHECK(report.events_checked == 16ull * 16);  // (4 datasets)^2 pairs x 2^4 events
  }
}

TEST_CASE("empirical approximation ratios are exact for the identity mechanism") {
  Graph petersen = privfl::known_fixture("petersen").graph;
  const Rational f = Rational::from_int64(3, 2);
  FLInstance inst(petersen, f);
  FiniteMechanism mech = privfl::identity_mechanism(10);

  auto source = [&petersen](std::uint64_t seed) {
    return privfl::sample_hard_dataset(petersen, 3, seed);
  };
  privfl::ApproxRatioResult result = privfl::empirical_approx_ratio(mech, inst, source, 25, 7, 1u << 20);
  REQUIRE(result.trials.size() == 25);
  for (const privfl::TrialRecord& record : result.trials) {
    REQUIRE(record.exact);
    // Identity pays f per distinct client and nothing in connections.
    std::vector<int> distinct = record.dataset.points;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    CHECK(record.expected_cost_exact == f * Rational(static_cast<long long>(distinct.size())));
    CHECK(record.ratio_exact >= Rational(1));  // opt is a minimum
    CHECK(record.ratio_exact == record.expected_cost_exact / record.opt_cost);
  }
  CHECK(result.mean_ratio >= 1.0L);

  SUBCASE("a mechanism that outputs an optimal mapping has ratio exactly 1") {
    // Single-point datasets: the optimum opens exactly that point, which is
    // what the identity mapping does.
    auto constant_source = [](std::uint64_t seed) {
      privfl::HardDataset hard;
      hard.center = static_cast<int>(seed % 10);
      hard.dataset.points = {hard.center, hard.center, hard.center};
      hard.seed = seed;
      return hard;
    };
    privfl::ApproxRatioResult ones =
        privfl::empirical_approx_ratio(mech, inst, constant_source, 10, 3, 1u << 20);
    for (const privfl::TrialRecord& record : ones.trials) {
      CHECK(record.ratio_exact == Rational(1));
    }
    CHECK(ones.mean_ratio == 1.0L);
  }
}
