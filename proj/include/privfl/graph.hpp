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

#ifndef PRIVFL_GRAPH_HPP
#define PRIVFL_GRAPH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace privfl {

// Simple undirected connected graph with dense vertex ids 0..n-1 and sorted
// adjacency lists. Immutable once built; shared freely across threads.
//
// Regularity is tracked but not required: the facility-location cost model
// runs on any connected graph, while the hard-instance machinery insists on
// a regular degree and checks for it.
class Graph {
 public:
  static Graph from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges);
  static Graph from_adjacency(std::vector<std::vector<int>> adjacency);

  static Graph cycle(int length);
  static Graph path(int length);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return edge_count_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

  bool has_edge(int u, int v) const;

  // Degree of the graph when regular, nullopt otherwise.
  std::optional<int> regular_degree() const { return regular_degree_; }
  int degree_of(int v) const { return static_cast<int>(adjacency_[v].size()); }

  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted

  // Exact unweighted shortest-path distances from u to every vertex.
  std::vector<int> distances_from(int u) const;
  int distance(int u, int v) const;
  int diameter() const;

  void check_vertex(int v) const;

 private:
  Graph() = default;
  void finalize();  // sort adjacency, validate, compute degree info

  // Full distance matrix, filled lazily for small graphs; larger graphs fall
  // back to a BFS per query row.
  void ensure_distance_cache() const;

  std::vector<std::vector<int>> adjacency_;
  std::optional<int> regular_degree_;
  int edge_count_ = 0;

  struct DistanceCache;
  std::shared_ptr<DistanceCache> distance_cache_;
};

struct GirthCertificate {
  // nullopt means the graph is acyclic (infinite girth).
  std::optional<int> girth;
  // A simple cycle of length *girth when finite, empty otherwise.
  std::vector<int> witness_cycle;

  bool is_finite() const { return girth.has_value(); }
};

struct Path {
  std::vector<int> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// Exact girth via a BFS scan from every root: for each non-tree edge the
// cycle closed through the BFS-tree LCA is simple, and the minimum over all
// roots and edges is the girth.
GirthCertificate girth(const Graph& graph);

// Checks that `certificate.witness_cycle` really is a simple cycle of the
// claimed length in `graph`.
bool witness_cycle_valid(const Graph& graph, const GirthCertificate& certificate);

// The unique shortest u-v path, defined whenever d_G(u, v) < girth / 2.
// Throws PreconditionViolated when the distance bound fails, since shortest
// paths are no longer guaranteed unique there.
Path unique_shortest_path(const Graph& graph, int u, int v, const GirthCertificate& certificate);

// A graph bundled with its certified girth. All certified graphs have been
// re-checked (simple, connected, regular, girth witness) at build time.
struct CertifiedGraph {
  Graph graph;
  GirthCertificate certificate;

  int girth_or_max() const;  // infinite girth maps to a value > any distance
};

// Re-certifies regularity and girth; throws PreconditionViolated on a
// regularity failure.
CertifiedGraph certify_regular(Graph graph);

// Random d-regular graph on n vertices with girth at least g: configuration
// model start, then degree-preserving double-edge swaps that push short
// cycles out, restarting on stagnation. `effort_budget` caps the total
// number of swap/restart moves; exhausting it yields NotFound (which says
// nothing about existence).
CertifiedGraph construct_regular_girth_graph(int n, int d, int g, std::uint64_t seed,
                                             std::uint64_t effort_budget);

// Named test fixtures: cycle(k), petersen, heawood, mcgee, tutte_coxeter.
CertifiedGraph known_fixture(const std::string& name);

// Plain-text edge list: first line "n d g", then one "u v" line per edge.
CertifiedGraph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const CertifiedGraph& certified);
std::string format_graph_file(const CertifiedGraph& certified);
CertifiedGraph parse_graph_file(const std::string& text, const std::string& origin);

}  // namespace privfl

#endif  // PRIVFL_GRAPH_HPP
