#ifndef COHNPATH_H
#define COHNPATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes shared by every entry point.
typedef enum CpStatus {
  CP_STATUS_OK = 0,
  CP_STATUS_NULL_POINTER = 1,
  CP_STATUS_INVALID_UTF8 = 2,
  CP_STATUS_PARSE_ERROR = 3,
  CP_STATUS_GRAPH_MISMATCH = 4,
  CP_STATUS_PANIC = 5,
} CpStatus;

// Built-in branching-system constructions.
typedef enum CpSystemKind {
  CP_SYSTEM_KIND_STANDARD = 0,
  CP_SYSTEM_KIND_ROTATION = 1,
  CP_SYSTEM_KIND_IDENTITY = 2,
  CP_SYSTEM_KIND_COVERING = 3,
} CpSystemKind;

// An element of the relative Cohn path algebra of a graph.
typedef struct CpElement CpElement;

// A validated graph with its set `X`.
typedef struct CpGraph CpGraph;

// A branching system over a graph.
typedef struct CpSystem CpSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message for the last failing call on this thread, or null.
// The pointer stays valid until the next call into this library.
const char *cp_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void cp_string_free(char *s);

// Parses a graph file's contents.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum CpStatus cp_graph_parse(const char *text, struct CpGraph **out);

// # Safety
// `g` must come from [`cp_graph_parse`] and not have been freed.
void cp_graph_free(struct CpGraph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be a live graph handle or null.
size_t cp_graph_vertex_count(const struct CpGraph *g);

// Writes 1 to `out` when every exit-free cycle passes through `Y`.
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum CpStatus cp_graph_relative_condition_l(const struct CpGraph *g, int *out);

// Parses an element in the element DSL over `g`.
//
// # Safety
// `g` must be a live graph handle, `text` NUL-terminated, `out` writable.
enum CpStatus cp_element_parse(const struct CpGraph *g, const char *text, struct CpElement **out);

// # Safety
// `x` must come from this library and not have been freed.
void cp_element_free(struct CpElement *x);

// `a · b` in normal form.
//
// # Safety
// `a`, `b` must be live element handles; `out` writable.
enum CpStatus cp_element_mul(const struct CpElement *a,
                             const struct CpElement *b,
                             struct CpElement **out);

// `a + b`.
//
// # Safety
// `a`, `b` must be live element handles; `out` writable.
enum CpStatus cp_element_add(const struct CpElement *a,
                             const struct CpElement *b,
                             struct CpElement **out);

// The involution `x ↦ x*`.
//
// # Safety
// `x` must be a live element handle; `out` writable.
enum CpStatus cp_element_star(const struct CpElement *x, struct CpElement **out);

// Writes 1 to `out` when the element is zero.
//
// # Safety
// `x` must be a live element handle; `out` writable.
enum CpStatus cp_element_is_zero(const struct CpElement *x, int *out);

// The element in the DSL; release with [`cp_string_free`]. Null on a null
// handle.
//
// # Safety
// `x` must be a live element handle or null.
char *cp_element_to_string(const struct CpElement *x);

// Builds one of the standard branching systems over `g`.
//
// # Safety
// `g` must be a live graph handle; `out` writable.
enum CpStatus cp_system_build(const struct CpGraph *g,
                              enum CpSystemKind kind,
                              struct CpSystem **out);

// # Safety
// `s` must come from [`cp_system_build`] and not have been freed.
void cp_system_free(struct CpSystem *s);

// The system in its text format; release with [`cp_string_free`].
//
// # Safety
// `s` must be a live system handle or null.
char *cp_system_to_string(const struct CpSystem *s);

// Writes 1 to `out` when all five axioms hold.
//
// # Safety
// `s` must be a live system handle; `out` writable.
enum CpStatus cp_system_check_axioms(const struct CpSystem *s, int *out);

// Writes 0 to `out_condition` when the representation is faithful, or the
// number (1–3) of the first failing condition.
//
// # Safety
// `s` must be a live system handle; `out_condition` writable.
enum CpStatus cp_system_faithful(const struct CpSystem *s, size_t m_bound, int *out_condition);

// Exact rank of the representation on normal monomials with
// `|α|, |β| ≤ deg_bound`; writes the rank and the number of monomials.
//
// # Safety
// `s` must be a live system handle; outputs writable.
enum CpStatus cp_system_rank(const struct CpSystem *s,
                             size_t deg_bound,
                             size_t m_bound,
                             size_t *out_rank,
                             size_t *out_monomials);

// Runs the command-line front end on `argc` arguments (program name
// first); returns the exit code and stores the report in `out_text`
// (release with [`cp_string_free`]). Returns 2 on invalid arguments.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; `out_text` writable.
int cp_cli_run(int argc, const char *const *argv, char **out_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COHNPATH_H */
