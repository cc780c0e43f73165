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

#ifndef PRIVFL_FL_CORE_HPP
#define PRIVFL_FL_CORE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "privfl/graph.hpp"
#include "privfl/rational.hpp"

namespace privfl {

// Facility-location instance over a graph's shortest-path metric. All costs
// are exact rationals: distances are integers and facility costs rational,
// so every cost below is computed without rounding.
class FLInstance {
 public:
  FLInstance(Graph graph, Rational uniform_facility_cost);
  FLInstance(Graph graph, std::vector<Rational> facility_costs);

  const Graph& graph() const { return graph_; }
  int vertex_count() const { return graph_.vertex_count(); }
  const Rational& facility_cost(int v) const { return facility_costs_[v]; }
  const std::vector<Rational>& facility_costs() const { return facility_costs_; }
  Rational max_facility_cost() const;

  int distance(int u, int v) const { return graph_.distance(u, v); }

 private:
  Graph graph_;
  std::vector<Rational> facility_costs_;
};

// Ordered client tuple; repetitions allowed.
struct Dataset {
  std::vector<int> points;

  int size() const { return static_cast<int>(points.size()); }
};

// Total function V -> V stored as a dense image table.
struct Mapping {
  std::vector<int> image;

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int v) const { return image[v]; }

  static Mapping identity(int n);
  static Mapping constant(int n, int target);
};

// Nonempty, sorted, duplicate-free facility subset.
struct FacilitySet {
  std::vector<int> vertices;

  static FacilitySet from_vertices(std::vector<int> vertices);
};

void validate_dataset(const Dataset& dataset, int vertex_count);
void validate_mapping(const Mapping& mapping, int vertex_count);

// Facility cost of S plus total connection cost of X to its nearest open
// facility. Throws EmptyFacilitySet when S is empty.
Rational fl_cost(const FLInstance& instance, const Dataset& dataset, const FacilitySet& open_set);

struct OptResult {
  FacilitySet facilities;
  Rational cost;
};

// Exact optimum over all nonempty facility subsets; ties broken toward the
// lexicographically smallest sorted vertex list. The subset count 2^n must
// not exceed `cap`.
OptResult brute_force_opt(const FLInstance& instance, const Dataset& dataset, std::uint64_t cap);

// psi({x_1, ..., x_m}) as a set.
FacilitySet open_facilities(const Mapping& mapping, const Dataset& dataset);

// Facility cost of the open set plus sum of d(x_i, psi(x_i)).
Rational sofl_cost(const FLInstance& instance, const Dataset& dataset, const Mapping& mapping);

// max_v d(v, psi(v)).
int mapping_radius(const Graph& graph, const Mapping& mapping);

// Sends every vertex displaced by at least `facility_threshold` back to
// itself; other images are kept. Idempotent, and never increases sofl_cost
// in the uniform-cost case f == facility_threshold.
Mapping clamp_mapping(const Graph& graph, const Mapping& mapping, const Rational& facility_threshold);

// True iff the equal-length tuples differ in at most one coordinate.
bool dataset_adjacent(const Dataset& a, const Dataset& b);

// One line, space-separated vertex ids.
Dataset parse_dataset(const std::string& text);
std::string format_dataset(const Dataset& dataset);
Dataset read_dataset_file(const std::string& path);

// n lines "v psi(v)".
Mapping parse_mapping(const std::string& text);
std::string format_mapping(const Mapping& mapping);
Mapping read_mapping_file(const std::string& path);

}  // namespace privfl

#endif  // PRIVFL_FL_CORE_HPP
