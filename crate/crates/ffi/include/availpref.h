#ifndef AVAILPREF_H
#define AVAILPREF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum AvpStatus {
  AVP_STATUS_OK = 0,
  AVP_STATUS_NULL_POINTER = 1,
  AVP_STATUS_INVALID_UTF8 = 2,
  AVP_STATUS_INVALID_JSON = 3,
  AVP_STATUS_INVALID_ARGUMENT = 4,
  AVP_STATUS_ALTERNATIVE_MISMATCH = 5,
  AVP_STATUS_NON_MONOTONE_MEMBERSHIP = 6,
  AVP_STATUS_DOMINANCE_HYPOTHESIS = 7,
  AVP_STATUS_NO_MAXIMAL_ELEMENT = 8,
  AVP_STATUS_PANIC = 9,
} AvpStatus;

/**
 * Alternative set handle.
 */
typedef struct AvpAlternatives AvpAlternatives;

/**
 * Preference oracle handle.
 */
typedef struct AvpOracle AvpOracle;

/**
 * RAF handle.
 */
typedef struct AvpRaf AvpRaf;

/**
 * Perturbation sequences handle.
 */
typedef struct AvpSequences AvpSequences;

/**
 * Weak-preference callback: returns whether `a ≽ b`. Both arrays hold
 * `len` availabilities in alternative order. A null callback is
 * rejected with `NullPointer`.
 */
typedef bool (*AvpPrefersFn)(void *user, const double *a, const double *b, size_t len);

/**
 * Bracketed utility.
 */
typedef struct AvpUtility {
  double u;
  double lo;
  double hi;
  double tol;
  uint32_t oracle_calls;
} AvpUtility;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *avp_last_error_message(void);

/**
 * Releases a string returned by this library.
 */
void avp_string_free(char *s);

enum AvpStatus avp_alternatives_new(const char *const *labels,
                                    size_t len,
                                    struct AvpAlternatives **out);

/**
 * `x1, ..., xn`.
 */
enum AvpStatus avp_alternatives_numbered(size_t n, struct AvpAlternatives **out);

/**
 * Number of alternatives, or 0 for a null handle.
 */
size_t avp_alternatives_len(const struct AvpAlternatives *alts);

void avp_alternatives_free(struct AvpAlternatives *alts);

enum AvpStatus avp_raf_new(const struct AvpAlternatives *alts,
                           const double *values,
                           size_t len,
                           struct AvpRaf **out);

enum AvpStatus avp_raf_top(const struct AvpAlternatives *alts, struct AvpRaf **out);

enum AvpStatus avp_raf_bottom(const struct AvpAlternatives *alts, struct AvpRaf **out);

enum AvpStatus avp_raf_scale_top(double t, const struct AvpAlternatives *alts, struct AvpRaf **out);

/**
 * Parses `{"alts": [...], "values": [...]}`.
 */
enum AvpStatus avp_raf_from_json(const char *json, struct AvpRaf **out);

enum AvpStatus avp_raf_to_json(const struct AvpRaf *raf, char **out);

size_t avp_raf_len(const struct AvpRaf *raf);

/**
 * Copies the availabilities into `buf`, which must hold `avp_raf_len`
 * doubles.
 */
enum AvpStatus avp_raf_values(const struct AvpRaf *raf, double *buf, size_t cap);

void avp_raf_free(struct AvpRaf *raf);

enum AvpStatus avp_raf_strictly_dominates(const struct AvpRaf *a,
                                          const struct AvpRaf *b,
                                          bool *out);

enum AvpStatus avp_raf_pointwise_dominates(const struct AvpRaf *a,
                                           const struct AvpRaf *b,
                                           bool *out);

enum AvpStatus avp_raf_sup_distance(const struct AvpRaf *a, const struct AvpRaf *b, double *out);

/**
 * Builds a built-in oracle from a spec such as `{"kind": "min"}`.
 */
enum AvpStatus avp_oracle_from_spec_json(const char *spec_json,
                                         const struct AvpAlternatives *alts,
                                         struct AvpOracle **out);

/**
 * Wraps a caller-supplied comparison. `user` is passed back on every
 * call and must outlive the oracle.
 */
enum AvpStatus avp_oracle_from_callback(const struct AvpAlternatives *alts,
                                        const char *name,
                                        AvpPrefersFn prefers,
                                        void *user,
                                        struct AvpOracle **out);

void avp_oracle_free(struct AvpOracle *oracle);

enum AvpStatus avp_weak_prefers(const struct AvpOracle *oracle,
                                const struct AvpRaf *a,
                                const struct AvpRaf *b,
                                bool *out);

enum AvpStatus avp_strictly_prefers(const struct AvpOracle *oracle,
                                    const struct AvpRaf *a,
                                    const struct AvpRaf *b,
                                    bool *out);

enum AvpStatus avp_indifferent(const struct AvpOracle *oracle,
                               const struct AvpRaf *a,
                               const struct AvpRaf *b,
                               bool *out);

enum AvpStatus avp_membership(const struct AvpOracle *oracle,
                              const struct AvpRaf *raf,
                              double t,
                              bool *out);

enum AvpStatus avp_compute_u(const struct AvpOracle *oracle,
                             const struct AvpRaf *raf,
                             double tol,
                             struct AvpUtility *out);

enum AvpStatus avp_check_certificate(const struct AvpOracle *oracle,
                                     const struct AvpRaf *raf,
                                     const struct AvpUtility *result,
                                     bool *out);

enum AvpStatus avp_lemma1_sequences(const struct AvpRaf *a,
                                    const struct AvpRaf *b,
                                    struct AvpSequences **out);

/**
 * Writes the `n`-th terms (`n >= 1`) as two new RAF handles.
 */
enum AvpStatus avp_sequences_term(const struct AvpSequences *seq,
                                  uint64_t n,
                                  struct AvpRaf **out_a,
                                  struct AvpRaf **out_b);

enum AvpStatus avp_sequences_epsilon(const struct AvpSequences *seq, double *out);

void avp_sequences_free(struct AvpSequences *seq);

/**
 * Order axioms, weak dominance and weak continuity for a built-in spec,
 * as an axiom-report JSON string.
 */
enum AvpStatus avp_check_axioms_json(const char *spec_json,
                                     const struct AvpAlternatives *alts,
                                     uint64_t seed,
                                     size_t pairs,
                                     size_t triples,
                                     uint64_t depth,
                                     char **out);

/**
 * Representation report JSON for `pairs` uniformly sampled pairs.
 */
enum AvpStatus avp_validate_representation_json(const struct AvpOracle *oracle,
                                                uint64_t seed,
                                                size_t pairs,
                                                double tol,
                                                char **out);

/**
 * Cross-validated choice for a menu given as
 * `{"alts": [...], "items": [{"label": ..., "values": [...]}, ...]}`.
 */
enum AvpStatus avp_choose_json(const struct AvpOracle *oracle,
                               const char *menu_json,
                               double tol,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AVAILPREF_H */
