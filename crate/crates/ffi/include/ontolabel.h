#ifndef ONTOLABEL_H
#define ONTOLABEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum OlRule {
  OL_RULE_MAXWELL_BOLTZMANN = 0,
  OL_RULE_BOSE_EINSTEIN = 1,
  OL_RULE_FERMI_DIRAC = 2,
} OlRule;

// Result code of every fallible call.
typedef enum OlStatus {
  OL_STATUS_OK = 0,
  OL_STATUS_NULL_POINTER = 1,
  OL_STATUS_INVALID_UTF8 = 2,
  OL_STATUS_PARSE = 3,
  OL_STATUS_AXIOM_VIOLATION = 4,
  OL_STATUS_HYPOTHESIS_UNMET = 5,
  OL_STATUS_INVALID_ARGUMENT = 6,
  OL_STATUS_RESOURCE_LIMIT = 7,
  OL_STATUS_PANIC = 8,
} OlStatus;

typedef enum OlSymmetry {
  OL_SYMMETRY_SYMMETRIC = 0,
  OL_SYMMETRY_ANTISYMMETRIC = 1,
  OL_SYMMETRY_NEITHER = 2,
  OL_SYMMETRY_ZERO = 3,
} OlSymmetry;

// Parsed, unvalidated system description.
typedef struct OlCandidate OlCandidate;

// Exact state vector over labeled slots.
typedef struct OlStateVector OlStateVector;

// System that satisfies every axiom.
typedef struct OlSystem OlSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null after a
// successful call. Valid until the next call into the library.
const char *ol_last_error(void);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ol_string_free(char *s);

// Parses a system description. On a parse failure the last error holds
// every diagnostic, one per line.
//
// # Safety
// `source` must be a nul-terminated string; `out` must be writable.
enum OlStatus ol_candidate_parse(const char *source, struct OlCandidate **out_candidate);

// # Safety
// `c` must be null or a handle from this library, freed at most once.
void ol_candidate_free(struct OlCandidate *c);

// Number of particle declarations.
//
// # Safety
// `c` must be a live candidate handle.
enum OlStatus ol_candidate_particle_count(const struct OlCandidate *c, uintptr_t *out_count);

// Returns a new candidate with scales inferred from shared states.
//
// # Safety
// `c` must be a live candidate handle; `out_candidate` must be writable.
enum OlStatus ol_candidate_infer_scales(const struct OlCandidate *c,
                                        struct OlCandidate **out_candidate);

// Renders the candidate back to source text.
//
// # Safety
// `c` must be a live candidate handle; `out_text` must be writable.
enum OlStatus ol_candidate_render(const struct OlCandidate *c, char **out_text);

// Checks axiom `axiom` (1 to 7). Writes whether it holds and how many
// witnesses refute it.
//
// # Safety
// `c` must be a live candidate handle; both out pointers must be writable.
enum OlStatus ol_candidate_check_axiom(const struct OlCandidate *c,
                                       uint32_t axiom,
                                       bool *out_holds,
                                       uintptr_t *out_witnesses);

// Validates the candidate. Returns `OL_STATUS_AXIOM_VIOLATION` with the
// failing axioms in the last error when it does not validate.
//
// # Safety
// `c` must be a live candidate handle; `out_system` must be writable.
enum OlStatus ol_candidate_validate(const struct OlCandidate *c, struct OlSystem **out_system);

// # Safety
// `s` must be null or a handle from this library, freed at most once.
void ol_system_free(struct OlSystem *s);

// # Safety
// `s` must be a live system handle; `out_count` must be writable.
enum OlStatus ol_system_particle_count(const struct OlSystem *s, uintptr_t *out_count);

// Ontological and physical identity of particles at positions `i`, `j`
// (0-based, ordered by hidden label index).
//
// # Safety
// `s` must be a live system handle; both out pointers must be writable.
enum OlStatus ol_system_identity(const struct OlSystem *s,
                                 uintptr_t i,
                                 uintptr_t j,
                                 bool *out_onto,
                                 bool *out_phys);

// Whether no two macroscopic particles are physically identical.
//
// # Safety
// `s` must be a live system handle; `out_holds` must be writable.
enum OlStatus ol_system_macro_distinct(const struct OlSystem *s, bool *out_holds);

// Whether a single-state system with at least two particles is all
// microscopic. Returns `OL_STATUS_HYPOTHESIS_UNMET` otherwise.
//
// # Safety
// `s` must be a live system handle; `out_holds` must be writable.
enum OlStatus ol_system_unitary_micro(const struct OlSystem *s, bool *out_holds);

// Product ket from a comma-separated mode list such as `"a,b,a"`.
//
// # Safety
// `modes` must be a nul-terminated string; `out_state` must be writable.
enum OlStatus ol_state_from_modes(const char *modes, struct OlStateVector **out_state);

// # Safety
// `v` must be null or a handle from this library, freed at most once.
void ol_state_free(struct OlStateVector *v);

// Applies the transposition of 1-based slots `i` and `j`.
//
// # Safety
// `v` must be a live state handle; `out_state` must be writable.
enum OlStatus ol_state_swap(const struct OlStateVector *v,
                            uintptr_t i,
                            uintptr_t j,
                            struct OlStateVector **out_state);

// # Safety
// `v` must be a live state handle; `out_state` must be writable.
enum OlStatus ol_state_symmetrize(const struct OlStateVector *v, struct OlStateVector **out_state);

// # Safety
// `v` must be a live state handle; `out_state` must be writable.
enum OlStatus ol_state_antisymmetrize(const struct OlStateVector *v,
                                      struct OlStateVector **out_state);

// # Safety
// `v` must be a live state handle; `out_class` must be writable.
enum OlStatus ol_state_classify(const struct OlStateVector *v, enum OlSymmetry *out_class);

// Canonical text such as `1/2|a,b> - 1/2|b,a>`; `0` for the zero vector.
//
// # Safety
// `v` must be a live state handle; `out_text` must be writable.
enum OlStatus ol_state_render(const struct OlStateVector *v, char **out_text);

// Exact closed-form microstate count as a decimal string.
//
// # Safety
// `out_text` must be writable.
enum OlStatus ol_count_closed_form(uintptr_t n, uintptr_t g, enum OlRule r, char **out_text);

// Number of microstates found by explicit enumeration over `g`
// equal-energy modes.
//
// # Safety
// `out_count` must be writable.
enum OlStatus ol_count_enumerated(uintptr_t n, uintptr_t g, enum OlRule r, uintptr_t *out_count);

// Mean occupation of each of the `g` modes with the given energies.
// `out_occupation` must have room for `g` values.
//
// # Safety
// `energies` must point to `g` readable doubles and `out_occupation` to `g`
// writable doubles.
enum OlStatus ol_mean_occupation(const double *energies,
                                 uintptr_t g,
                                 uintptr_t n,
                                 enum OlRule r,
                                 double beta,
                                 double *out_occupation);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ONTOLABEL_H */
