#ifndef RTM2V_H
#define RTM2V_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Rtm2vStatus {
  RTM2V_STATUS_OK = 0,
  // The query ran and its answer is "no".
  RTM2V_STATUS_FALSE = 1,
  RTM2V_STATUS_PARSE_ERROR = 2,
  // Well-formed input that fails a required check.
  RTM2V_STATUS_INVALID = 3,
  RTM2V_STATUS_NULL_POINTER = 4,
  // A string argument is not UTF-8 or contains an interior NUL.
  RTM2V_STATUS_ENCODING = 5,
  // An internal error; the library state is unaffected.
  RTM2V_STATUS_PANIC = 6,
} Rtm2vStatus;

typedef enum Rtm2vMode {
  RTM2V_MODE_COMPLETE = 0,
  RTM2V_MODE_HALTING = 1,
} Rtm2vMode;

typedef enum Rtm2vCodes {
  RTM2V_CODES_COMB = 0,
  RTM2V_CODES_EXAMPLE_STYLE = 1,
} Rtm2vCodes;

typedef enum Rtm2vHit {
  RTM2V_HIT_HIT_AT = 0,
  RTM2V_HIT_NO_HIT_WITHIN_BUDGET = 1,
  RTM2V_HIT_CYCLE_WITHOUT_HIT = 2,
} Rtm2vHit;

typedef enum Rtm2vConvergence {
  RTM2V_CONVERGENCE_CONVERGED_WITNESS = 0,
  RTM2V_CONVERGENCE_DIVERGENCE_WITNESS = 1,
  RTM2V_CONVERGENCE_INCONCLUSIVE = 2,
} Rtm2vConvergence;

typedef struct Rtm2vElement Rtm2vElement;

typedef struct Rtm2vMachine Rtm2vMachine;

typedef struct Rtm2vTransducer Rtm2vTransducer;

// Checker verdicts of a machine; each field is 0 or 1.
typedef struct Rtm2vMachineReport {
  uint8_t deterministic;
  uint8_t reversible;
  uint8_t complete;
  // Number of halting `(state, symbol)` pairs.
  size_t halting_pairs;
} Rtm2vMachineReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *rtm2v_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void rtm2v_string_free(char *s);

// Parses the machine text format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum Rtm2vStatus rtm2v_machine_parse(const char *text_, struct Rtm2vMachine **out);

// # Safety
// `m` must be null or a handle from this library, not yet freed.
void rtm2v_machine_free(struct Rtm2vMachine *m);

// Fills `report`; returns `Ok` when the machine is deterministic,
// reversible and complete, `False` otherwise.
//
// # Safety
// `m` must be a live handle and `report` a valid pointer.
enum Rtm2vStatus rtm2v_machine_check(const struct Rtm2vMachine *m,
                                     struct Rtm2vMachineReport *report);

// Compiles a machine into an element of 2V. `Invalid` when the machine fails
// the checks the chosen mode requires.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum Rtm2vStatus rtm2v_machine_compile(const struct Rtm2vMachine *m,
                                       enum Rtm2vMode mode,
                                       enum Rtm2vCodes codes,
                                       struct Rtm2vElement **out);

// Parses and validates the element text format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum Rtm2vStatus rtm2v_element_parse(const char *text_, struct Rtm2vElement **out);

// # Safety
// `f` must be null or a handle from this library, not yet freed.
void rtm2v_element_free(struct Rtm2vElement *f);

// # Safety
// `f` must be a live handle and `len` a valid pointer.
enum Rtm2vStatus rtm2v_element_len(const struct Rtm2vElement *f, size_t *len);

// The element in its text format.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum Rtm2vStatus rtm2v_element_to_string(const struct Rtm2vElement *f, char **out);

// `f` then `g`.
//
// # Safety
// `f` and `g` must be live handles and `out` a valid pointer.
enum Rtm2vStatus rtm2v_element_compose(const struct Rtm2vElement *f,
                                       const struct Rtm2vElement *g,
                                       struct Rtm2vElement **out);

// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum Rtm2vStatus rtm2v_element_invert(const struct Rtm2vElement *f, struct Rtm2vElement **out);

// `Ok` if the elements are equal, `False` if not.
//
// # Safety
// `f` and `g` must be live handles.
enum Rtm2vStatus rtm2v_element_equal(const struct Rtm2vElement *f, const struct Rtm2vElement *g);

// Applies `f` to a point literal such as `(101, -)`.
//
// # Safety
// `f` must be a live handle, `point` a NUL-terminated string and `out` a valid pointer.
enum Rtm2vStatus rtm2v_element_apply(const struct Rtm2vElement *f, const char *point, char **out);

// Searches the first `max` powers. `Ok` with `*order` set when the order is
// found, `False` when it exceeds `max` or is infinite.
//
// # Safety
// `f` must be a live handle and `order` a valid pointer.
enum Rtm2vStatus rtm2v_element_order(const struct Rtm2vElement *f, uint64_t max, uint64_t *order);

// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum Rtm2vStatus rtm2v_transducer_from_element(const struct Rtm2vElement *f,
                                               struct Rtm2vTransducer **out);

// Parses the transducer text format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum Rtm2vStatus rtm2v_transducer_parse(const char *text_, struct Rtm2vTransducer **out);

// # Safety
// `t` must be null or a handle from this library, not yet freed.
void rtm2v_transducer_free(struct Rtm2vTransducer *t);

// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum Rtm2vStatus rtm2v_transducer_to_string(const struct Rtm2vTransducer *t, char **out);

// Runs on space-separated symbols and writes the space-separated output
// (`-` when empty).
//
// # Safety
// `t` must be a live handle, `input` a NUL-terminated string and `out` a valid pointer.
enum Rtm2vStatus rtm2v_transducer_run(const struct Rtm2vTransducer *t,
                                      const char *input,
                                      char **out);

// `Ok` if nondegenerate; `False` with the witness cycle as the last error.
//
// # Safety
// `t` must be a live handle.
enum Rtm2vStatus rtm2v_transducer_check_nondegenerate(const struct Rtm2vTransducer *t);

// Whether the orbit of `start` meets `rect` within `budget` steps. Sets
// `*step` for `HitAt`.
//
// # Safety
// `f` must be a live handle, `start` and `rect` NUL-terminated strings and
// `verdict`, `step` valid pointers.
enum Rtm2vStatus rtm2v_orbit_hit(const struct Rtm2vElement *f,
                                 const char *start,
                                 const char *rect,
                                 size_t budget,
                                 enum Rtm2vHit *verdict,
                                 size_t *step);

// Looks for a witness that the orbit of `start` converges to `target`.
// Sets `*step` for `ConvergedWitness`.
//
// # Safety
// `f` must be a live handle, `start` and `target` NUL-terminated strings and
// `verdict`, `step` valid pointers.
enum Rtm2vStatus rtm2v_orbit_converge(const struct Rtm2vElement *f,
                                      const char *start,
                                      const char *target,
                                      size_t budget,
                                      enum Rtm2vConvergence *verdict,
                                      size_t *step);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RTM2V_H */
