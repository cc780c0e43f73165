/* Copyright 2026 The privfl-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the privfl-lab core: differentially private facility
 * location lower-bound instances, exact combinatorial lemma verification,
 * and mechanism audits. All functions return a pfl_status; outputs are
 * opaque handles or heap strings released with the matching free call.
 * On failure, pfl_last_error() describes what went wrong (thread-local). */

#ifndef PRIVFL_H
#define PRIVFL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pfl_status {
  PFL_OK = 0,
  /* The requested check ran to completion and found a violation; report
   * output is still produced. */
  PFL_VERIFICATION_FAILED = 1,
  PFL_ERR_PRECONDITION = 10,
  PFL_ERR_INVALID_ARITY = 11,
  PFL_ERR_NOT_FOUND = 12,
  PFL_ERR_UNKNOWN_FIXTURE = 13,
  PFL_ERR_EMPTY_FACILITY_SET = 14,
  PFL_ERR_TOO_LARGE = 15,
  PFL_ERR_LENGTH_MISMATCH = 16,
  PFL_ERR_DEGENERATE_PARAMS = 17,
  PFL_ERR_RADIUS_TOO_LARGE = 18,
  PFL_ERR_INVALID_PARTITION = 19,
  PFL_ERR_EMPTY_CANDIDATES = 20,
  PFL_ERR_CONFIG_INVALID = 21,
  PFL_ERR_INVALID_ARGUMENT = 22,
  PFL_ERR_IO = 23,
  PFL_ERR_PARSE = 24,
  PFL_ERR_INTERNAL = 25
} pfl_status;

typedef struct pfl_graph pfl_graph;

const char* pfl_version(void);
const char* pfl_status_name(pfl_status status);

/* Message for the most recent failure on this thread; empty string if none. */
const char* pfl_last_error(void);

/* ------------------------------------------------------------------ */
/* Graphs                                                              */
/* ------------------------------------------------------------------ */

/* Fixtures: "petersen", "heawood", "mcgee", "tutte_coxeter", "cycle(k)". */
pfl_status pfl_graph_fixture(const char* name, pfl_graph** out_graph);

/* Random d-regular graph with certified girth >= g; NOT_FOUND once the
 * effort budget is exhausted. */
pfl_status pfl_graph_construct(int n, int d, int g, uint64_t seed, uint64_t effort_budget,
                               pfl_graph** out_graph);

/* Plain-text edge list: header "n d g", then one "u v" line per edge. */
pfl_status pfl_graph_read(const char* path, pfl_graph** out_graph);
pfl_status pfl_graph_write(const pfl_graph* graph, const char* path);

void pfl_graph_free(pfl_graph* graph);

int pfl_graph_vertex_count(const pfl_graph* graph);
int pfl_graph_degree(const pfl_graph* graph);
/* Certified girth; 0 means acyclic. */
int pfl_graph_girth(const pfl_graph* graph);
pfl_status pfl_graph_distance(const pfl_graph* graph, int u, int v, int* out_distance);

/* ------------------------------------------------------------------ */
/* Reports (JSON strings; release with pfl_string_free)                */
/* ------------------------------------------------------------------ */

/* Parameter schedule plus the proof-chain inequality report for the given
 * natural-log metric size. Pass 0 for the default constant arguments
 * (c = 1, gamma_constant = 1e-4). */
pfl_status pfl_params_report_json(double log_n, double epsilon, double c, double gamma_constant,
                                  char** out_json);

/* Lemma verification over mapping corpora. options_json:
 *   {"mode": "exhaustive"|"random"|"single", "radius": int (-1 = max),
 *    "m": [ints], "cap": uint, "samples": uint, "seed": uint,
 *    "mapping_text": "v psi(v) lines" (single mode),
 *    "packing_f": "p/q" (optional packing check)}
 * Returns PFL_VERIFICATION_FAILED when a lemma is violated; the report is
 * still written to out_json. */
pfl_status pfl_verify_lemmas_json(const pfl_graph* graph, const char* options_json,
                                  char** out_json);

/* Exhaustive privacy audit. options_json:
 *   {"mechanism": "identity"|"expmech", "epsilon": num, "m": int,
 *    "f": "p/q", "candidate_radius": int, "candidate_cap": uint,
 *    "dataset_cap": uint}
 * Returns PFL_VERIFICATION_FAILED when the audit finds a ratio above
 * e^epsilon; the report carries the witness. */
pfl_status pfl_audit_json(const pfl_graph* graph, const char* options_json, char** out_json);

/* Full experiment driver; config_json is the run-experiment config
 * document. Writes any csv_path/json_path named by the config and returns
 * the run report. PFL_VERIFICATION_FAILED when lemma checks on mechanism
 * outputs fail. */
pfl_status pfl_run_experiment_json(const char* config_json, char** out_json);

void pfl_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* PRIVFL_H */
