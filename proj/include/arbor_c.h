#ifndef ARBOR_C_H
#define ARBOR_C_H

/* C API for the arbor library: opaque handles, error codes, string I/O.
 * All returned strings are heap-allocated; release them with
 * arbor_string_free. All returned handles are released with arbor_tob_free.
 * On failure every function returns a nonzero code and, when a message
 * out-parameter is given, stores a diagnostic string there. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define ARBOR_OK 0
#define ARBOR_EPARSE 1
#define ARBOR_EVALIDATE 2
#define ARBOR_EDOMAIN 3
#define ARBOR_EINTERNAL 4

typedef struct arbor_tob arbor_tob; /* opaque: a tree of B-sets */

void arbor_string_free(char* s);
void arbor_tob_free(arbor_tob* t);

/* Parse TOB text (no structural validation beyond syntax). */
int arbor_tob_parse(const char* text, arbor_tob** out, char** err_msg);

/* Deterministic TOB serialization. */
int arbor_tob_serialize(const arbor_tob* t, char** out);

/* Full structural validation. */
int arbor_tob_validate(const arbor_tob* t, char** err_msg);

/* Derived relation L as LSET text. */
int arbor_compile_l(const arbor_tob* t, char** out, char** err_msg);

/* The unique node witnessing L(a;b,c); out = the node's text. */
int arbor_witness(const arbor_tob* t, const char* a, const char* b, const char* c, char** out,
                  char** err_msg);

/* Amalgamate two extensions of a common strong substructure. i1/i2 name the
 * embeddings implicitly: both extensions must literally contain base (same
 * node and vertex names). Output: TOB text of the amalgam. */
int arbor_amalgamate(const arbor_tob* base, const arbor_tob* e1, const arbor_tob* e2, char** out,
                     char** err_msg);

/* One-point decomposition chain from base up to ext, largest first; TOB texts
 * joined by a line containing only "---". base may be NULL, meaning the chain
 * runs all the way down to a single vertex. Otherwise base must be a literal
 * strong substructure of ext. */
int arbor_decompose(const arbor_tob* base, const arbor_tob* ext, char** out, char** err_msg);

int arbor_joint_embed(const arbor_tob* a1, const arbor_tob* a2, char** out, char** err_msg);

/* Deterministic generic chain; out = final TOB text, log = step lines. */
int arbor_chain(const char* preset, int steps, uint64_t seed, char** out, char** log,
                char** err_msg);

/* Rebuild a tree of B-sets from LSET text; out = TOB text of the recovery. */
int arbor_reconstruct(const char* lset_text, const char* preset, char** out, char** err_msg);

/* Derived C-relation at root vertex p; out lists "C x y z" lines after a
 * header reporting whether the branch family had typical pairs. */
int arbor_derive_c(const arbor_tob* t, const char* p, char** out, char** err_msg);

/* Automorphism orbits on ordered distinct root-vertex triples. */
int arbor_orbits(const arbor_tob* t, char** out, char** err_msg);

/* Randomized self-check: generate cases instances from seed, exercise the
 * round-trip and amalgamation paths; out = summary, nonzero on any failure. */
int arbor_fuzz(const char* preset, uint64_t seed, int cases, char** out, char** err_msg);

/* Graphviz rendering. */
int arbor_export_dot(const arbor_tob* t, char** out, char** err_msg);

#ifdef __cplusplus
}
#endif

#endif /* ARBOR_C_H */
