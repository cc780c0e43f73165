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
#include <fstream>
#include <mutex>
#include <queue>
#include <sstream>

#include "privfl/error.hpp"
#include "privfl/rng.hpp"

namespace privfl {

namespace {

constexpr int kDistanceCacheVertexLimit = 2048;

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adjacency, int root) {
  std::vector<int> dist(adjacency.size(), -1);
  std::queue<int> frontier;
  dist[root] = 0;
  frontier.push(root);
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int w : adjacency[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

bool adjacency_connected(const std::vector<std::vector<int>>& adjacency) {
  if (adjacency.empty()) return false;
  std::vector<int> dist = bfs_distances(adjacency, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

}  // namespace

struct Graph::DistanceCache {
  std::once_flag fill_flag;
  std::vector<int> matrix;  // row-major n*n, filled at most once
};

Graph Graph::from_adjacency(std::vector<std::vector<int>> adjacency) {
  Graph g;
  g.adjacency_ = std::move(adjacency);
  g.finalize();
  return g;
}

Graph Graph::from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "vertex count must be positive");
  }
  std::vector<std::vector<int>> adjacency(vertex_count);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count) {
      throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  Graph g;
  g.adjacency_ = std::move(adjacency);
  g.finalize();
  return g;
}

Graph Graph::cycle(int length) {
  if (length < 3) {
    throw Error(ErrorCode::kInvalidArgument, "cycle needs at least 3 vertices");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(length);
  for (int i = 0; i < length; ++i) edges.emplace_back(i, (i + 1) % length);
  return from_edges(length, edges);
}

Graph Graph::path(int length) {
  if (length < 2) {
    throw Error(ErrorCode::kInvalidArgument, "path needs at least 2 vertices");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(length - 1);
  for (int i = 0; i + 1 < length; ++i) edges.emplace_back(i, i + 1);
  return from_edges(length, edges);
}

void Graph::finalize() {
  const int n = vertex_count();
  if (n <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "graph must have at least one vertex");
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  edge_count_ = 0;
  for (int v = 0; v < n; ++v) {
    const auto& nbrs = adjacency_[v];
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw Error(ErrorCode::kInvalidArgument, "parallel edge at vertex " + std::to_string(v));
    }
    for (int w : nbrs) {
      if (w == v) {
        throw Error(ErrorCode::kInvalidArgument, "self-loop at vertex " + std::to_string(v));
      }
      if (w < 0 || w >= n) {
        throw Error(ErrorCode::kInvalidArgument,
                    "neighbor out of range at vertex " + std::to_string(v));
      }
      const auto& back = adjacency_[w];
      if (!std::binary_search(back.begin(), back.end(), v)) {
        throw Error(ErrorCode::kInvalidArgument, "asymmetric adjacency between " +
                                                     std::to_string(v) + " and " + std::to_string(w));
      }
    }
    edge_count_ += static_cast<int>(nbrs.size());
  }
  edge_count_ /= 2;

  if (!adjacency_connected(adjacency_)) {
    throw Error(ErrorCode::kInvalidArgument, "graph is disconnected");
  }

  regular_degree_.reset();
  const int d0 = static_cast<int>(adjacency_[0].size());
  if (std::all_of(adjacency_.begin(), adjacency_.end(),
                  [d0](const auto& nbrs) { return static_cast<int>(nbrs.size()) == d0; })) {
    regular_degree_ = d0;
  }
  distance_cache_ = std::make_shared<DistanceCache>();
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> result;
  result.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) result.emplace_back(u, v);
    }
  }
  return result;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count()) {
    throw Error(ErrorCode::kInvalidArgument, "vertex " + std::to_string(v) + " out of range");
  }
}

void Graph::ensure_distance_cache() const {
  const int n = vertex_count();
  DistanceCache* cache = distance_cache_.get();
  std::call_once(cache->fill_flag, [this, cache, n] {
    cache->matrix.resize(static_cast<std::size_t>(n) * n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> row = bfs_distances(adjacency_, v);
      std::copy(row.begin(), row.end(), cache->matrix.begin() + static_cast<std::size_t>(v) * n);
    }
  });
}

std::vector<int> Graph::distances_from(int u) const {
  check_vertex(u);
  const int n = vertex_count();
  if (n <= kDistanceCacheVertexLimit) {
    ensure_distance_cache();
    const auto& m = distance_cache_->matrix;
    return std::vector<int>(m.begin() + static_cast<std::size_t>(u) * n,
                            m.begin() + static_cast<std::size_t>(u + 1) * n);
  }
  return bfs_distances(adjacency_, u);
}

int Graph::distance(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const int n = vertex_count();
  if (n <= kDistanceCacheVertexLimit) {
    ensure_distance_cache();
    return distance_cache_->matrix[static_cast<std::size_t>(u) * n + v];
  }
  return bfs_distances(adjacency_, u)[v];
}

int Graph::diameter() const {
  int best = 0;
  for (int u = 0; u < vertex_count(); ++u) {
    std::vector<int> row = distances_from(u);
    best = std::max(best, *std::max_element(row.begin(), row.end()));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Girth
// ---------------------------------------------------------------------------

namespace {

// One BFS-rooted scan. Every non-tree edge closes a cycle through the
// BFS-tree LCA of its endpoints; the two tree paths below the LCA are
// disjoint, so the closed walk is a simple cycle. The minimum over all
// roots and non-tree edges is the girth.
struct RootScan {
  int shortest_cycle = INT_MAX;
  std::vector<int> witness;
};

RootScan scan_from_root(const std::vector<std::vector<int>>& adjacency, int root,
                        bool want_witness) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<int> dist(n, -1), parent(n, -1);
  std::queue<int> frontier;
  dist[root] = 0;
  frontier.push(root);
  RootScan out;
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int w : adjacency[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        frontier.push(w);
        continue;
      }
      // Deeper endpoints revisit the edge later, so handling dist[w] <= dist[u]
      // here sees every non-tree edge at least once.
      if (w == parent[u] || dist[w] > dist[u]) continue;
      int a = u, b = w;
      while (dist[a] > dist[b]) a = parent[a];
      while (dist[b] > dist[a]) b = parent[b];
      while (a != b) {
        a = parent[a];
        b = parent[b];
      }
      const int lca = a;
      const int cycle_len = dist[u] + dist[w] - 2 * dist[lca] + 1;
      if (cycle_len < out.shortest_cycle) {
        out.shortest_cycle = cycle_len;
        if (want_witness) {
          std::vector<int> up_u, up_w;
          for (int x = u; x != lca; x = parent[x]) up_u.push_back(x);
          for (int x = w; x != lca; x = parent[x]) up_w.push_back(x);
          out.witness.clear();
          out.witness.push_back(lca);
          for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) out.witness.push_back(*it);
          for (int x : up_w) out.witness.push_back(x);
        }
      }
    }
  }
  return out;
}

}  // namespace

GirthCertificate girth(const Graph& graph) {
  GirthCertificate cert;
  int best = INT_MAX;
  for (int root = 0; root < graph.vertex_count(); ++root) {
    RootScan scan = scan_from_root(graph.adjacency(), root, /*want_witness=*/true);
    if (scan.shortest_cycle < best) {
      best = scan.shortest_cycle;
      cert.witness_cycle = std::move(scan.witness);
    }
  }
  if (best < INT_MAX) cert.girth = best;
  return cert;
}

bool witness_cycle_valid(const Graph& graph, const GirthCertificate& certificate) {
  if (!certificate.girth.has_value()) return certificate.witness_cycle.empty();
  const auto& cycle = certificate.witness_cycle;
  if (static_cast<int>(cycle.size()) != *certificate.girth || cycle.size() < 3) return false;
  std::vector<int> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    int u = cycle[i];
    int v = cycle[(i + 1) % cycle.size()];
    if (u < 0 || u >= graph.vertex_count() || !graph.has_edge(u, v)) return false;
  }
  return true;
}

Path unique_shortest_path(const Graph& graph, int u, int v, const GirthCertificate& certificate) {
  graph.check_vertex(u);
  graph.check_vertex(v);
  std::vector<int> dist_to_v = graph.distances_from(v);
  const int dist = dist_to_v[u];
  if (certificate.girth.has_value() && 2 * dist >= *certificate.girth) {
    throw Error(ErrorCode::kPreconditionViolated,
                "d(u,v) = " + std::to_string(dist) + " is not below girth/2 with girth " +
                    std::to_string(*certificate.girth) + "; shortest path may not be unique");
  }
  Path path;
  path.vertices.reserve(dist + 1);
  int current = u;
  path.vertices.push_back(current);
  while (current != v) {
    int next = -1;
    for (int w : graph.neighbors(current)) {
      if (dist_to_v[w] == dist_to_v[current] - 1) {
        if (next >= 0) {
          throw Error(ErrorCode::kInternal, "multiple shortest paths below the girth bound");
        }
        next = w;
      }
    }
    current = next;
    path.vertices.push_back(current);
  }
  return path;
}

int CertifiedGraph::girth_or_max() const { return certificate.girth.value_or(INT_MAX / 4); }

CertifiedGraph certify_regular(Graph graph) {
  if (!graph.regular_degree().has_value()) {
    throw Error(ErrorCode::kPreconditionViolated, "graph is not regular");
  }
  GirthCertificate cert = girth(graph);
  if (!witness_cycle_valid(graph, cert)) {
    throw Error(ErrorCode::kInternal, "girth witness failed validation");
  }
  return CertifiedGraph{std::move(graph), std::move(cert)};
}

// ---------------------------------------------------------------------------
// Randomized construction
// ---------------------------------------------------------------------------

namespace {

// Mutable adjacency used only inside the search; becomes a Graph at the end.
struct SearchGraph {
  std::vector<std::vector<int>> adjacency;
  std::vector<std::pair<int, int>> edge_list;

  bool has_edge(int u, int v) const {
    const auto& nbrs = adjacency[u];
    return std::find(nbrs.begin(), nbrs.end(), v) != nbrs.end();
  }
  void add_edge(int u, int v) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
    edge_list.emplace_back(u, v);
  }
  void remove_adjacent(int u, int v) {
    auto& nbrs = adjacency[u];
    nbrs.erase(std::find(nbrs.begin(), nbrs.end(), v));
  }
  void remove_edge_at(std::size_t index) {
    auto [u, v] = edge_list[index];
    remove_adjacent(u, v);
    remove_adjacent(v, u);
    edge_list[index] = edge_list.back();
    edge_list.pop_back();
  }
  void remove_edge(int u, int v) {
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
      auto [a, b] = edge_list[i];
      if ((a == u && b == v) || (a == v && b == u)) {
        remove_edge_at(i);
        return;
      }
    }
  }
};

// Sum over roots of how far the shortest cycle seen from that root falls
// below the target girth; zero iff girth >= target. INT_MAX marks
// disconnected graphs so a swap that cuts the graph is never accepted.
int girth_deficit_score(const SearchGraph& sg, int target_girth) {
  if (!adjacency_connected(sg.adjacency)) return INT_MAX;
  int score = 0;
  for (int root = 0; root < static_cast<int>(sg.adjacency.size()); ++root) {
    RootScan scan = scan_from_root(sg.adjacency, root, /*want_witness=*/false);
    if (scan.shortest_cycle < target_girth) score += target_girth - scan.shortest_cycle;
  }
  return score;
}

// Random pairing of n*d stubs, then local repair of self-loops and parallel
// edges via degree-preserving swaps against random good edges.
bool configuration_model(int n, int d, std::mt19937_64& rng, SearchGraph& out,
                         std::uint64_t& budget) {
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < d; ++k) stubs.push_back(v);
  }
  deterministic_shuffle(stubs, rng);

  out.adjacency.assign(n, {});
  out.edge_list.clear();
  std::vector<std::pair<int, int>> bad;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    int u = stubs[i], v = stubs[i + 1];
    if (u == v || out.has_edge(u, v)) {
      bad.emplace_back(u, v);
    } else {
      out.add_edge(u, v);
    }
  }
  std::size_t attempts_left = 200 * bad.size() + 64;
  while (!bad.empty()) {
    if (budget == 0 || attempts_left-- == 0) return false;
    auto [u, v] = bad.back();
    if (out.edge_list.empty()) return false;
    std::size_t k = static_cast<std::size_t>(uniform_below(rng, out.edge_list.size()));
    auto [x, y] = out.edge_list[k];
    if (u == x || u == y || v == x || v == y) continue;
    if (out.has_edge(u, x) || out.has_edge(v, y)) continue;
    --budget;
    out.remove_edge_at(k);
    out.add_edge(u, x);
    out.add_edge(v, y);
    bad.pop_back();
  }
  return true;
}

// Merge components by crossing one edge from the first component with one
// from outside it; the replacement edges span components, so they cannot
// already exist and simplicity is preserved.
bool connect_components(SearchGraph& sg, std::mt19937_64& rng, std::uint64_t& budget) {
  const int n = static_cast<int>(sg.adjacency.size());
  for (;;) {
    std::vector<int> component(n, -1);
    int components = 0;
    for (int v = 0; v < n; ++v) {
      if (component[v] >= 0) continue;
      std::queue<int> frontier;
      frontier.push(v);
      component[v] = components;
      while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop();
        for (int w : sg.adjacency[u]) {
          if (component[w] < 0) {
            component[w] = components;
            frontier.push(w);
          }
        }
      }
      ++components;
    }
    if (components == 1) return true;
    if (budget == 0) return false;
    --budget;
    std::vector<std::size_t> inside, outside;
    for (std::size_t i = 0; i < sg.edge_list.size(); ++i) {
      (component[sg.edge_list[i].first] == 0 ? inside : outside).push_back(i);
    }
    if (inside.empty() || outside.empty()) return false;
    auto [a, b] = sg.edge_list[inside[uniform_below(rng, inside.size())]];
    auto [c, e] = sg.edge_list[outside[uniform_below(rng, outside.size())]];
    sg.remove_edge(a, b);
    sg.remove_edge(c, e);
    sg.add_edge(a, c);
    sg.add_edge(b, e);
  }
}

// Shortest cycle anywhere in the graph, with witness.
RootScan best_cycle_scan(const SearchGraph& sg) {
  RootScan best;
  for (int root = 0; root < static_cast<int>(sg.adjacency.size()); ++root) {
    RootScan scan = scan_from_root(sg.adjacency, root, /*want_witness=*/true);
    if (scan.shortest_cycle < best.shortest_cycle) best = std::move(scan);
  }
  return best;
}

}  // namespace

CertifiedGraph construct_regular_girth_graph(int n, int d, int g, std::uint64_t seed,
                                             std::uint64_t effort_budget) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "degree must be at least 2");
  if (g < 3) throw Error(ErrorCode::kInvalidArgument, "girth target must be at least 3");
  if (effort_budget == 0) throw Error(ErrorCode::kInvalidArgument, "effort budget must be positive");
  if (n % 2 != 0 || (static_cast<long long>(n) * d) % 2 != 0) {
    throw Error(ErrorCode::kInvalidArity, "n and n*d must both be even (n=" + std::to_string(n) +
                                              ", d=" + std::to_string(d) + ")");
  }
  if (d >= n) {
    throw Error(ErrorCode::kInvalidArity, "no simple " + std::to_string(d) + "-regular graph on " +
                                              std::to_string(n) + " vertices");
  }

  std::mt19937_64 rng(seed);
  std::uint64_t budget = effort_budget;
  const int stagnation_limit = 40 * n;

  while (budget > 0) {
    --budget;  // one restart
    SearchGraph sg;
    if (!configuration_model(n, d, rng, sg, budget)) continue;
    if (!connect_components(sg, rng, budget)) continue;

    int score = girth_deficit_score(sg, g);
    int stagnation = 0;
    while (score != 0 && score != INT_MAX && budget > 0 && stagnation < stagnation_limit) {
      --budget;
      RootScan scan = best_cycle_scan(sg);
      if (scan.witness.empty()) break;
      const auto& cycle = scan.witness;
      std::size_t ci = static_cast<std::size_t>(uniform_below(rng, cycle.size()));
      const int a = cycle[ci];
      const int b = cycle[(ci + 1) % cycle.size()];
      auto [c, e] = sg.edge_list[uniform_below(rng, sg.edge_list.size())];
      if (a == c || a == e || b == c || b == e) {
        ++stagnation;
        continue;
      }
      // Evaluate both reconnections of {a,b} x {c,e} on copies.
      int best_candidate = INT_MAX;
      SearchGraph best_graph;
      for (int variant = 0; variant < 2; ++variant) {
        const int p = variant == 0 ? c : e;
        const int q = variant == 0 ? e : c;
        if (sg.has_edge(a, p) || sg.has_edge(b, q)) continue;
        SearchGraph trial = sg;
        trial.remove_edge(a, b);
        trial.remove_edge(c, e);
        trial.add_edge(a, p);
        trial.add_edge(b, q);
        int candidate = girth_deficit_score(trial, g);
        if (candidate < best_candidate) {
          best_candidate = candidate;
          best_graph = std::move(trial);
        }
      }
      if (best_candidate > score) {
        ++stagnation;
        continue;
      }
      if (best_candidate == score && uniform_below(rng, 2) == 0) {
        ++stagnation;
        continue;
      }
      stagnation = best_candidate < score ? 0 : stagnation + 1;
      sg = std::move(best_graph);
      score = best_candidate;
    }
    if (score == 0) {
      CertifiedGraph certified = certify_regular(Graph::from_adjacency(sg.adjacency));
      if (certified.girth_or_max() < g) {
        throw Error(ErrorCode::kInternal, "constructed graph failed girth re-certification");
      }
      return certified;
    }
  }
  throw Error(ErrorCode::kNotFound,
              "no " + std::to_string(d) + "-regular graph with girth >= " + std::to_string(g) +
                  " on " + std::to_string(n) + " vertices found within the effort budget");
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

namespace {

// Hamiltonian cycle 0..n-1 plus chords i -> i + shifts[i mod shifts.size()].
Graph lcf_graph(int n, const std::vector<int>& shifts) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) {
    int shift = shifts[i % shifts.size()];
    int j = ((i + shift) % n + n) % n;
    if (i < j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer pentagon
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph::from_edges(10, edges);
}

CertifiedGraph certify_fixture(Graph graph, int expected_degree, int expected_girth) {
  CertifiedGraph certified = certify_regular(std::move(graph));
  if (certified.graph.regular_degree() != expected_degree ||
      certified.certificate.girth != expected_girth) {
    throw Error(ErrorCode::kInternal, "fixture failed degree/girth certification");
  }
  return certified;
}

}  // namespace

CertifiedGraph known_fixture(const std::string& name) {
  if (name == "petersen") return certify_fixture(petersen_graph(), 3, 5);
  if (name == "heawood") return certify_fixture(lcf_graph(14, {5, -5}), 3, 6);
  if (name == "mcgee") return certify_fixture(lcf_graph(24, {12, 7, -7}), 3, 7);
  if (name == "tutte_coxeter") {
    return certify_fixture(lcf_graph(30, {-13, -9, 7, -7, 9, 13}), 3, 8);
  }
  if (name.rfind("cycle(", 0) == 0 && !name.empty() && name.back() == ')') {
    const std::string inner = name.substr(6, name.size() - 7);
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(inner, &used);
      if (used != inner.size()) throw std::invalid_argument(inner);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kUnknownFixture, "bad cycle length in fixture name '" + name + "'");
    }
    if (k < 3) throw Error(ErrorCode::kUnknownFixture, "cycle fixture needs length >= 3");
    return certify_fixture(Graph::cycle(k), 2, k);
  }
  throw Error(ErrorCode::kUnknownFixture, "no fixture named '" + name + "'");
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

std::string format_graph_file(const CertifiedGraph& certified) {
  std::ostringstream out;
  const Graph& g = certified.graph;
  out << g.vertex_count() << ' ' << g.regular_degree().value_or(-1) << ' ';
  if (certified.certificate.girth.has_value()) {
    out << *certified.certificate.girth;
  } else {
    out << "inf";
  }
  out << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

CertifiedGraph parse_graph_file(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) {
    throw Error(ErrorCode::kParseError, origin + ": empty graph file");
  }
  std::istringstream head(header);
  long long n = 0, d = 0;
  std::string girth_token;
  if (!(head >> n >> d >> girth_token)) {
    throw Error(ErrorCode::kParseError, origin + ": header must be 'n d g'");
  }
  if (n <= 0 || n > (1 << 24)) {
    throw Error(ErrorCode::kParseError, origin + ": unreasonable vertex count " + std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  long long u, v;
  while (in >> u >> v) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::kParseError, origin + ": edge endpoint out of range");
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (!in.eof()) {
    throw Error(ErrorCode::kParseError, origin + ": trailing junk in edge list");
  }
  std::optional<Graph> graph;
  try {
    graph = Graph::from_edges(static_cast<int>(n), edges);
  } catch (const Error& err) {
    throw Error(ErrorCode::kParseError, origin + ": " + err.what());
  }
  CertifiedGraph certified = certify_regular(std::move(*graph));
  if (certified.graph.regular_degree() != static_cast<int>(d)) {
    throw Error(ErrorCode::kParseError, origin + ": declared degree " + std::to_string(d) +
                                            " does not match the edge list");
  }
  if (girth_token == "inf") {
    if (certified.certificate.girth.has_value()) {
      throw Error(ErrorCode::kParseError, origin + ": declared infinite girth but graph has a cycle");
    }
  } else {
    int declared = 0;
    try {
      declared = std::stoi(girth_token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, origin + ": bad girth field '" + girth_token + "'");
    }
    if (certified.certificate.girth != declared) {
      throw Error(ErrorCode::kParseError,
                  origin + ": declared girth " + std::to_string(declared) +
                      " but certification found " +
                      std::to_string(certified.certificate.girth.value_or(-1)));
    }
  }
  return certified;
}

CertifiedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open graph file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_file(buffer.str(), path);
}

void write_graph_file(const std::string& path, const CertifiedGraph& certified) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  }
  out << format_graph_file(certified);
  if (!out) {
    throw Error(ErrorCode::kIoError, "failed writing graph file '" + path + "'");
  }
}

}  // namespace privfl
