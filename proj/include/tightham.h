/* C interface to the tightham library.
 *
 * Every function returns a th_status; on anything but TH_OK the message is
 * available from th_last_error() on the same thread until the next call.
 * Results that are more than a number come back as JSON text the caller
 * releases with th_free_string(). Options are passed as JSON objects (NULL or
 * "" means all defaults); rationals there may be given as "p/q", decimal
 * strings or numbers.
 */
#ifndef TIGHTHAM_H
#define TIGHTHAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TH_API __declspec(dllexport)
#else
#define TH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum th_status {
  TH_OK = 0,
  TH_INVALID_ARGUMENT = 1,
  TH_OUT_OF_RANGE = 2,
  TH_PARSE = 3,
  TH_IO = 4,
  TH_CAPACITY = 5, /* a size cap or search budget was hit */
  TH_INTERNAL = 6
} th_status;

typedef struct th_graph th_graph;

TH_API const char* th_version(void);
TH_API const char* th_last_error(void);
TH_API void th_free_string(char* s);

/* The seed split used everywhere: mixes `stream` into `root`. */
TH_API uint64_t th_derive_seed(uint64_t root, uint64_t stream);

/* Graphs. */
TH_API th_status th_graph_create(uint32_t n, th_graph** out);
/* family: "i", "ii", "iii", "random" (uses p and seed) or "complete". */
TH_API th_status th_graph_generate(const char* family, uint32_t n, double p, uint64_t seed, th_graph** out);
/* Text or binary .h3, detected from the magic bytes. */
TH_API th_status th_graph_load(const char* path, th_graph** out);
TH_API th_status th_graph_save(const th_graph* g, const char* path, int binary);
TH_API void th_graph_free(th_graph* g);
TH_API th_status th_graph_order(const th_graph* g, uint32_t* n);
TH_API th_status th_graph_edge_count(const th_graph* g, uint64_t* m);
TH_API th_status th_graph_add_edge(th_graph* g, uint32_t a, uint32_t b, uint32_t c);
TH_API th_status th_graph_has_edge(const th_graph* g, uint32_t a, uint32_t b, uint32_t c, int* out);
/* {"n","edges","min_degree","min_codegree","min_degree_ratio","min_degree_ratio_value"} */
TH_API th_status th_graph_stats(const th_graph* g, char** json);

/* Exact searches (n <= 64 for the cycle and matching searches).
 * Cycle: {"ham":"present"|"absent"|"unknown","cycle":[...]|null,"nodes"}.
 * Path from (e0,e1) to endpair (f0,f1): {"path":...,"vertices":[...]|null,"nodes"}.
 * Matching: {"matching":[[a,b,c],...],"size","certified","nodes"}. */
TH_API th_status th_solve_cycle(const th_graph* g, uint64_t node_budget, char** json);
TH_API th_status th_solve_path(const th_graph* g, uint32_t e0, uint32_t e1, uint32_t f0, uint32_t f1,
                               uint32_t min_order, uint32_t max_order, uint64_t node_budget, char** json);
TH_API th_status th_solve_matching(const th_graph* g, uint64_t node_budget, char** json);

/* {"ok","reason","hamiltonian"} for a cyclic vertex sequence. */
TH_API th_status th_check_cycle(const th_graph* g, const uint32_t* vertices, size_t len, char** json);
/* Invariant suite: {"ok","checks":[{"name","ok","detail"}]}. */
TH_API th_status th_invariants(const th_graph* g, uint64_t seed, char** json);

/* Options: mode ("greedy"|"regularity"), L, rho, lambda, seed, epsilon, t0,
 * samples, budget. */
TH_API th_status th_cover(const th_graph* g, const char* options, char** json);
/* Options: preset ("desk"|"paper"), seed, trace, timings, retries, absorbers,
 * gamma, L, rho, lambda, cover_mode. Returns the run report. */
TH_API th_status th_pipeline(const th_graph* g, const char* options, char** json);
/* Options: seed, restarts, iterations, budget. `witness` may be NULL. */
TH_API th_status th_threshold(uint32_t n, const char* options, char** json, th_graph** witness);
/* Length-12 connections between random disjoint G_{.33} pairs (pairs are
 * redrawn until both lie in G_{.33}; a trial that finds none fails).
 * Options: seed, retries (bool). {"trials","attempted","successes","rate"}. */
TH_API th_status th_connect_trials(const th_graph* g, uint32_t trials, const char* options, char** json);

#ifdef __cplusplus
}
#endif

#endif /* TIGHTHAM_H */
