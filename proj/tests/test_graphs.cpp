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

#include "privfl/graph.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <queue>
#include <random>

#include "doctest.h"
#include "privfl/error.hpp"
#include "privfl/rng.hpp"
#include "test_oracles.hpp"

using privfl::CertifiedGraph;
using privfl::Error;
using privfl::ErrorCode;
using privfl::GirthCertificate;
using privfl::Graph;
using privfl::Path;
using privfl_testing::girth_by_edge_deletion;

namespace {

void check_certified(const CertifiedGraph& certified, int expected_n, int expected_d,
                     std::optional<int> expected_girth) {
  const Graph& g = certified.graph;
  CHECK(g.vertex_count() == expected_n);
  REQUIRE(g.regular_degree().has_value());
  CHECK(*g.regular_degree() == expected_d);
  CHECK(certified.certificate.girth == expected_girth);
  CHECK(girth_by_edge_deletion(g) == expected_girth);
  CHECK(privfl::witness_cycle_valid(g, certified.certificate));
}

}  // namespace

TEST_CASE("girth of a cycle is its length and trees are acyclic") {
  CHECK(privfl::girth(Graph::cycle(7)).girth == 7);
  CHECK(privfl::girth(Graph::cycle(3)).girth == 3);
  CHECK_FALSE(privfl::girth(Graph::path(2)).girth.has_value());
  CHECK_FALSE(privfl::girth(Graph::path(6)).girth.has_value());
}

TEST_CASE("girth matches the edge-removal oracle on the fixture corpus") {
  check_certified(privfl::known_fixture("petersen"), 10, 3, 5);
  check_certified(privfl::known_fixture("heawood"), 14, 3, 6);
  check_certified(privfl::known_fixture("mcgee"), 24, 3, 7);
  check_certified(privfl::known_fixture("tutte_coxeter"), 30, 3, 8);
  check_certified(privfl::known_fixture("cycle(7)"), 7, 2, 7);
}

TEST_CASE("unknown fixtures are rejected") {
  try {
    privfl::known_fixture("fano");
    FAIL("expected UnknownFixture");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kUnknownFixture);
  }
  CHECK_THROWS_AS(privfl::known_fixture("cycle(2)"), Error);
  CHECK_THROWS_AS(privfl::known_fixture("cycle(x)"), Error);
}

TEST_CASE("distances on cycles and cages") {
  Graph c6 = Graph::cycle(6);
  CHECK(c6.distances_from(0) == std::vector<int>{0, 1, 2, 3, 2, 1});

  Graph petersen = privfl::known_fixture("petersen").graph;
  for (int u = 0; u < 10; ++u) {
    std::vector<int> row = petersen.distances_from(u);
    CHECK(*std::max_element(row.begin(), row.end()) == 2);  // diameter 2
    CHECK(row[u] == 0);
  }
  CHECK(petersen.diameter() == 2);

  Graph heawood = privfl::known_fixture("heawood").graph;
  for (const auto& [u, v] : heawood.edges()) {
    CHECK(heawood.distance(u, v) == 1);
  }
}

TEST_CASE("distances are symmetric and satisfy the triangle inequality") {
  std::mt19937_64 rng(11);
  for (const char* name : {"petersen", "heawood", "mcgee"}) {
    Graph g = privfl::known_fixture(name).graph;
    for (int trial = 0; trial < 200; ++trial) {
      int a = static_cast<int>(privfl::uniform_below(rng, g.vertex_count()));
      int b = static_cast<int>(privfl::uniform_below(rng, g.vertex_count()));
      int c = static_cast<int>(privfl::uniform_below(rng, g.vertex_count()));
      CHECK(g.distance(a, b) == g.distance(b, a));
      CHECK(g.distance(a, c) <= g.distance(a, b) + g.distance(b, c));
    }
  }
}

TEST_CASE("unique shortest paths below half the girth") {
  CertifiedGraph petersen = privfl::known_fixture("petersen");

  SUBCASE("distance-2 pairs have a unique geodesic") {
    for (int u = 0; u < 10; ++u) {
      for (int v = 0; v < 10; ++v) {
        if (petersen.graph.distance(u, v) != 2) continue;
        Path path = privfl::unique_shortest_path(petersen.graph, u, v, petersen.certificate);
        CHECK(path.length() == 2);
        CHECK(path.vertices.front() == u);
        CHECK(path.vertices.back() == v);
        CHECK(petersen.graph.has_edge(path.vertices[0], path.vertices[1]));
        CHECK(petersen.graph.has_edge(path.vertices[1], path.vertices[2]));
      }
    }
  }

  SUBCASE("identity pairs give the trivial path") {
    Path path = privfl::unique_shortest_path(petersen.graph, 3, 3, petersen.certificate);
    CHECK(path.vertices == std::vector<int>{3});
    CHECK(path.length() == 0);
  }

  SUBCASE("antipodal pairs on an even cycle are rejected") {
    CertifiedGraph c6 = privfl::known_fixture("cycle(6)");
    try {
      privfl::unique_shortest_path(c6.graph, 0, 3, c6.certificate);
      FAIL("expected PreconditionViolated");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kPreconditionViolated);
    }
  }

  SUBCASE("reversal symmetry and geodesic midpoints") {
    CertifiedGraph mcgee = privfl::known_fixture("mcgee");
    const int g = *mcgee.certificate.girth;
    for (int u = 0; u < mcgee.graph.vertex_count(); ++u) {
      for (int v = 0; v < mcgee.graph.vertex_count(); ++v) {
        const int dist = mcgee.graph.distance(u, v);
        if (2 * dist >= g) continue;
        Path forward = privfl::unique_shortest_path(mcgee.graph, u, v, mcgee.certificate);
        Path backward = privfl::unique_shortest_path(mcgee.graph, v, u, mcgee.certificate);
        std::reverse(backward.vertices.begin(), backward.vertices.end());
        CHECK(forward.vertices == backward.vertices);
        for (int w : forward.vertices) {
          CHECK(mcgee.graph.distance(u, w) + mcgee.graph.distance(w, v) == dist);
        }
      }
    }
  }

  SUBCASE("trees have unique paths at any distance") {
    Graph p5 = Graph::path(5);
    GirthCertificate cert = privfl::girth(p5);
    Path path = privfl::unique_shortest_path(p5, 0, 4, cert);
    CHECK(path.vertices == std::vector<int>{0, 1, 2, 3, 4});
  }
}

TEST_CASE("graph validation rejects malformed inputs") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), Error);                  // self-loop
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {0, 1}, {1, 2}}), Error);  // parallel
  CHECK_THROWS_AS(Graph::from_edges(4, {{0, 1}, {2, 3}}), Error);          // disconnected
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), Error);                  // out of range
}

TEST_CASE("construct_regular_girth_graph finds desk-scale graphs") {
  SUBCASE("(10,3,5) exists and certifies") {
    CertifiedGraph found = privfl::construct_regular_girth_graph(10, 3, 5, 1, 400000);
    CHECK(found.graph.vertex_count() == 10);
    CHECK(found.graph.regular_degree() == 3);
    REQUIRE(found.certificate.girth.has_value());
    CHECK(*found.certificate.girth >= 5);
    CHECK(girth_by_edge_deletion(found.graph) == found.certificate.girth);
  }

  SUBCASE("same seed reproduces the same graph") {
    CertifiedGraph a = privfl::construct_regular_girth_graph(12, 3, 4, 9, 400000);
    CertifiedGraph b = privfl::construct_regular_girth_graph(12, 3, 4, 9, 400000);
    CHECK(a.graph.adjacency() == b.graph.adjacency());
  }

  SUBCASE("odd arity is rejected") {
    try {
      privfl::construct_regular_girth_graph(9, 3, 4, 0, 1000);
      FAIL("expected InvalidArity");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kInvalidArity);
    }
  }

  SUBCASE("impossible targets exhaust the budget") {
    try {
      privfl::construct_regular_girth_graph(6, 2, 7, 0, 3000);
      FAIL("expected NotFound");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kNotFound);
    }
  }
}

TEST_CASE("graph files round-trip and reject corrupted declarations") {
  CertifiedGraph petersen = privfl::known_fixture("petersen");
  std::string text = privfl::format_graph_file(petersen);
  CertifiedGraph parsed = privfl::parse_graph_file(text, "roundtrip");
  CHECK(parsed.graph.adjacency() == petersen.graph.adjacency());
  CHECK(parsed.certificate.girth == petersen.certificate.girth);

  SUBCASE("wrong girth declaration") {
    std::string bad = text;
    bad.replace(bad.find(" 5"), 2, " 6");
    try {
      privfl::parse_graph_file(bad, "bad");
      FAIL("expected ParseError");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kParseError);
    }
  }

  SUBCASE("wrong degree declaration") {
    std::string bad = text;
    bad.replace(bad.find(" 3"), 2, " 4");
    CHECK_THROWS_AS(privfl::parse_graph_file(bad, "bad"), Error);
  }

  SUBCASE("junk edges") {
    CHECK_THROWS_AS(privfl::parse_graph_file("4 1 inf\n0 1\n2 3\nxyz\n", "bad"), Error);
  }
}

TEST_CASE("shipped fixture files match the in-code fixtures") {
  for (const char* name : {"petersen", "heawood", "mcgee", "tutte_coxeter"}) {
    CertifiedGraph from_code = privfl::known_fixture(name);
    CertifiedGraph from_file =
        privfl::read_graph_file(std::string("data/fixtures/") + name + ".graph");
    CHECK(from_file.graph.adjacency() == from_code.graph.adjacency());
    CHECK(from_file.certificate.girth == from_code.certificate.girth);
  }
}
