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

// Exercises the shared-library surface exactly as an external consumer
// would: through privfl.h only (plus a JSON parser for the report strings).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "privfl.h"

using Json = nlohmann::json;

namespace {

struct GraphHandle {
  pfl_graph* graph = nullptr;
  ~GraphHandle() { pfl_graph_free(graph); }
};

struct CString {
  char* text = nullptr;
  ~CString() { pfl_string_free(text); }
};

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("fixtures load through the C surface") {
  GraphHandle handle;
  REQUIRE(pfl_graph_fixture("petersen", &handle.graph) == PFL_OK);
  CHECK(pfl_graph_vertex_count(handle.graph) == 10);
  CHECK(pfl_graph_degree(handle.graph) == 3);
  CHECK(pfl_graph_girth(handle.graph) == 5);

  int distance = -1;
  REQUIRE(pfl_graph_distance(handle.graph, 0, 7, &distance) == PFL_OK);
  CHECK(distance == 2);
  CHECK(pfl_graph_distance(handle.graph, 0, 99, &distance) == PFL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("unknown fixtures report a status and message") {
  GraphHandle handle;
  CHECK(pfl_graph_fixture("fano", &handle.graph) == PFL_ERR_UNKNOWN_FIXTURE);
  CHECK(std::string(pfl_last_error()).find("fano") != std::string::npos);
  CHECK(std::string(pfl_status_name(PFL_ERR_UNKNOWN_FIXTURE)) == "PFL_ERR_UNKNOWN_FIXTURE");
}

TEST_CASE("graph construction and file round-trip through the C surface") {
  GraphHandle constructed;
  REQUIRE(pfl_graph_construct(10, 3, 5, 1, 400000, &constructed.graph) == PFL_OK);
  CHECK(pfl_graph_girth(constructed.graph) >= 5);

  const std::string path = temp_path("privfl_capi_graph.txt");
  REQUIRE(pfl_graph_write(constructed.graph, path.c_str()) == PFL_OK);
  GraphHandle reread;
  REQUIRE(pfl_graph_read(path.c_str(), &reread.graph) == PFL_OK);
  CHECK(pfl_graph_vertex_count(reread.graph) == 10);
  std::remove(path.c_str());

  GraphHandle bad;
  CHECK(pfl_graph_construct(9, 3, 4, 0, 1000, &bad.graph) == PFL_ERR_INVALID_ARITY);
  CHECK(pfl_graph_construct(6, 2, 7, 0, 2000, &bad.graph) == PFL_ERR_NOT_FOUND);
}

TEST_CASE("parameter reports through the C surface") {
  CString report;
  REQUIRE(pfl_params_report_json(100.0, 1.0, 0, 0, &report.text) == PFL_OK);
  const Json parsed = Json::parse(report.text);
  CHECK(parsed.at("schedule").at("g") == 10);
  CHECK(parsed.at("schedule").at("d_exact") == "5506");
  CHECK(parsed.at("schedule").at("m") == 1);
  CHECK(parsed.at("all_inequalities_hold") == true);

  CString failed;
  CHECK(pfl_params_report_json(2.0, 1.0, 0, 0, &failed.text) == PFL_ERR_DEGENERATE_PARAMS);
}

TEST_CASE("lemma verification through the C surface") {
  GraphHandle petersen;
  REQUIRE(pfl_graph_fixture("petersen", &petersen.graph) == PFL_OK);

  SUBCASE("single identity mapping holds") {
    const char* options = R"({"mode": "single", "m": [2, 3],
                              "mapping_text": "0 0\n1 1\n2 2\n3 3\n4 4\n5 5\n6 6\n7 7\n8 8\n9 9\n"})";
    CString report;
    REQUIRE(pfl_verify_lemmas_json(petersen.graph, options, &report.text) == PFL_OK);
    const Json parsed = Json::parse(report.text);
    CHECK(parsed.at("all_hold") == true);
    CHECK(parsed.at("mappings_checked") == 1);
    CHECK(parsed.at("lemma32")[0].at("max_probability").at("exact") == "1/3");
  }

  SUBCASE("random corpus on the fixture") {
    const char* options = R"({"mode": "random", "samples": 200, "seed": 5, "m": 2})";
    CString report;
    REQUIRE(pfl_verify_lemmas_json(petersen.graph, options, &report.text) == PFL_OK);
    CHECK(Json::parse(report.text).at("mappings_checked") == 200);
  }

  SUBCASE("invalid options are rejected") {
    CString report;
    CHECK(pfl_verify_lemmas_json(petersen.graph, "{\"mode\": \"wat\"}", &report.text) ==
          PFL_ERR_CONFIG_INVALID);
    CHECK(pfl_verify_lemmas_json(petersen.graph, "not json", &report.text) ==
          PFL_ERR_CONFIG_INVALID);
  }
}

TEST_CASE("privacy audits through the C surface") {
  GraphHandle triangle;
  REQUIRE(pfl_graph_fixture("cycle(3)", &triangle.graph) == PFL_OK);

  CString report;
  const char* options = R"({"mechanism": "expmech", "epsilon": 1.0, "m": 1, "f": "1"})";
  REQUIRE(pfl_audit_json(triangle.graph, options, &report.text) == PFL_OK);
  const Json parsed = Json::parse(report.text);
  CHECK(parsed.at("pass") == true);
  CHECK(parsed.at("mechanism") == "expmech");

  // Stricter audit budget: the report still arrives, with the failure status.
  CString failing;
  const char* strict =
      R"({"mechanism": "expmech", "epsilon": 2.0, "audit_epsilon": 0.1, "m": 1, "f": "1"})";
  REQUIRE(pfl_audit_json(triangle.graph, strict, &failing.text) == PFL_VERIFICATION_FAILED);
  const Json strict_report = Json::parse(failing.text);
  CHECK(strict_report.at("pass") == false);
  CHECK_FALSE(strict_report.at("witness").is_null());
}

TEST_CASE("experiments run end to end through the C surface") {
  const std::string csv_path = temp_path("privfl_capi_run.csv");
  Json config{{"graph", Json{{"fixture", "petersen"}}},
              {"mechanism", Json{{"kind", "identity"}}},
              {"f", "3/2"},
              {"m", 3},
              {"trials", 5},
              {"master_seed", 11},
              {"csv_path", csv_path}};
  CString report;
  REQUIRE(pfl_run_experiment_json(config.dump().c_str(), &report.text) == PFL_OK);
  const Json parsed = Json::parse(report.text);
  CHECK(parsed.at("trials").size() == 5);
  CHECK(parsed.at("verification_passed") == true);
  CHECK(std::filesystem::exists(csv_path));
  std::remove(csv_path.c_str());

  CString failure;
  CHECK(pfl_run_experiment_json("{}", &failure.text) == PFL_ERR_CONFIG_INVALID);
  CHECK(pfl_run_experiment_json("not json", &failure.text) == PFL_ERR_CONFIG_INVALID);
}

TEST_CASE("version string is exposed") {
  CHECK(std::string(pfl_version()) == "0.1.0");
}
