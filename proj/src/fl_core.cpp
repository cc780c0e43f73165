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

#include "privfl/fl_core.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>

#include "privfl/error.hpp"

namespace privfl {

FLInstance::FLInstance(Graph graph, Rational uniform_facility_cost)
    : graph_(std::move(graph)),
      facility_costs_(graph_.vertex_count(), uniform_facility_cost) {
  if (uniform_facility_cost.is_negative()) {
    throw Error(ErrorCode::kInvalidArgument, "facility cost must be nonnegative");
  }
}

FLInstance::FLInstance(Graph graph, std::vector<Rational> facility_costs)
    : graph_(std::move(graph)), facility_costs_(std::move(facility_costs)) {
  if (static_cast<int>(facility_costs_.size()) != graph_.vertex_count()) {
    throw Error(ErrorCode::kInvalidArgument, "facility cost vector length mismatch");
  }
  for (const Rational& f : facility_costs_) {
    if (f.is_negative()) {
      throw Error(ErrorCode::kInvalidArgument, "facility cost must be nonnegative");
    }
  }
}

Rational FLInstance::max_facility_cost() const {
  Rational best = facility_costs_.front();
  for (const Rational& f : facility_costs_) best = std::max(best, f);
  return best;
}

Mapping Mapping::identity(int n) {
  Mapping psi;
  psi.image.resize(n);
  for (int v = 0; v < n; ++v) psi.image[v] = v;
  return psi;
}

Mapping Mapping::constant(int n, int target) {
  Mapping psi;
  psi.image.assign(n, target);
  return psi;
}

FacilitySet FacilitySet::from_vertices(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return FacilitySet{std::move(vertices)};
}

void validate_dataset(const Dataset& dataset, int vertex_count) {
  if (dataset.points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dataset must contain at least one point");
  }
  for (int x : dataset.points) {
    if (x < 0 || x >= vertex_count) {
      throw Error(ErrorCode::kInvalidArgument, "dataset point " + std::to_string(x) + " out of range");
    }
  }
}

void validate_mapping(const Mapping& mapping, int vertex_count) {
  if (static_cast<int>(mapping.image.size()) != vertex_count) {
    throw Error(ErrorCode::kInvalidArgument, "mapping must be total over the vertex set");
  }
  for (int w : mapping.image) {
    if (w < 0 || w >= vertex_count) {
      throw Error(ErrorCode::kInvalidArgument, "mapping image " + std::to_string(w) + " out of range");
    }
  }
}

Rational fl_cost(const FLInstance& instance, const Dataset& dataset, const FacilitySet& open_set) {
  if (open_set.vertices.empty()) {
    throw Error(ErrorCode::kEmptyFacilitySet, "cost of the empty facility set is undefined");
  }
  validate_dataset(dataset, instance.vertex_count());
  Rational total;
  for (int s : open_set.vertices) {
    instance.graph().check_vertex(s);
    total += instance.facility_cost(s);
  }
  for (int x : dataset.points) {
    int nearest = INT_MAX;
    for (int s : open_set.vertices) nearest = std::min(nearest, instance.distance(x, s));
    total += Rational(nearest);
  }
  return total;
}

OptResult brute_force_opt(const FLInstance& instance, const Dataset& dataset, std::uint64_t cap) {
  const int n = instance.vertex_count();
  validate_dataset(dataset, n);
  if (n >= 63 || (std::uint64_t{1} << n) > cap) {
    throw Error(ErrorCode::kTooLarge, "2^" + std::to_string(n) + " facility subsets exceed cap " +
                                          std::to_string(cap));
  }

  // Distances from each client, so subset scans are flat array reads.
  std::vector<std::vector<int>> client_rows;
  client_rows.reserve(dataset.points.size());
  for (int x : dataset.points) client_rows.push_back(instance.graph().distances_from(x));

  bool have_best = false;
  Rational best_cost;
  std::vector<int> best_set;
  std::vector<int> members;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    members.clear();
    Rational cost;
    for (int v = 0; v < n; ++v) {
      if (mask & (std::uint64_t{1} << v)) {
        members.push_back(v);
        cost += instance.facility_cost(v);
      }
    }
    for (const auto& row : client_rows) {
      int nearest = INT_MAX;
      for (int s : members) nearest = std::min(nearest, row[s]);
      cost += Rational(nearest);
    }
    if (!have_best || cost < best_cost ||
        (cost == best_cost && std::lexicographical_compare(members.begin(), members.end(),
                                                           best_set.begin(), best_set.end()))) {
      have_best = true;
      best_cost = cost;
      best_set = members;
    }
  }
  return OptResult{FacilitySet{std::move(best_set)}, best_cost};
}

FacilitySet open_facilities(const Mapping& mapping, const Dataset& dataset) {
  std::vector<int> images;
  images.reserve(dataset.points.size());
  for (int x : dataset.points) images.push_back(mapping.image[x]);
  return FacilitySet::from_vertices(std::move(images));
}

Rational sofl_cost(const FLInstance& instance, const Dataset& dataset, const Mapping& mapping) {
  validate_dataset(dataset, instance.vertex_count());
  validate_mapping(mapping, instance.vertex_count());
  Rational total;
  for (int s : open_facilities(mapping, dataset).vertices) total += instance.facility_cost(s);
  for (int x : dataset.points) total += Rational(instance.distance(x, mapping.image[x]));
  return total;
}

int mapping_radius(const Graph& graph, const Mapping& mapping) {
  validate_mapping(mapping, graph.vertex_count());
  int radius = 0;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    radius = std::max(radius, graph.distance(v, mapping.image[v]));
  }
  return radius;
}

Mapping clamp_mapping(const Graph& graph, const Mapping& mapping,
                      const Rational& facility_threshold) {
  validate_mapping(mapping, graph.vertex_count());
  Mapping clamped = mapping;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (Rational(graph.distance(v, mapping.image[v])) >= facility_threshold) {
      clamped.image[v] = v;
    }
  }
  return clamped;
}

bool dataset_adjacent(const Dataset& a, const Dataset& b) {
  if (a.points.size() != b.points.size()) {
    throw Error(ErrorCode::kLengthMismatch, "datasets of sizes " + std::to_string(a.points.size()) +
                                                " and " + std::to_string(b.points.size()));
  }
  int differing = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i] != b.points[i] && ++differing > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

Dataset parse_dataset(const std::string& text) {
  std::istringstream in(text);
  Dataset dataset;
  long long x;
  while (in >> x) dataset.points.push_back(static_cast<int>(x));
  if (!in.eof()) {
    throw Error(ErrorCode::kParseError, "dataset must be space-separated vertex ids");
  }
  if (dataset.points.empty()) {
    throw Error(ErrorCode::kParseError, "dataset is empty");
  }
  return dataset;
}

std::string format_dataset(const Dataset& dataset) {
  std::ostringstream out;
  for (std::size_t i = 0; i < dataset.points.size(); ++i) {
    if (i > 0) out << ' ';
    out << dataset.points[i];
  }
  out << '\n';
  return out.str();
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open dataset file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dataset(buffer.str());
}

Mapping parse_mapping(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::pair<long long, long long>> rows;
  long long v, image;
  while (in >> v >> image) rows.emplace_back(v, image);
  if (!in.eof()) {
    throw Error(ErrorCode::kParseError, "mapping lines must be 'v psi(v)' pairs");
  }
  Mapping mapping;
  mapping.image.assign(rows.size(), -1);
  for (const auto& [from, to] : rows) {
    if (from < 0 || from >= static_cast<long long>(rows.size()) || to < 0 ||
        to >= static_cast<long long>(rows.size())) {
      throw Error(ErrorCode::kParseError, "mapping entry out of range");
    }
    if (mapping.image[static_cast<std::size_t>(from)] != -1) {
      throw Error(ErrorCode::kParseError, "duplicate mapping entry for vertex " + std::to_string(from));
    }
    mapping.image[static_cast<std::size_t>(from)] = static_cast<int>(to);
  }
  if (std::find(mapping.image.begin(), mapping.image.end(), -1) != mapping.image.end()) {
    throw Error(ErrorCode::kParseError, "mapping is not total");
  }
  return mapping;
}

std::string format_mapping(const Mapping& mapping) {
  std::ostringstream out;
  for (int v = 0; v < mapping.size(); ++v) out << v << ' ' << mapping.image[v] << '\n';
  return out.str();
}

Mapping read_mapping_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open mapping file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mapping(buffer.str());
}

}  // namespace privfl
