#ifndef WREATH_POWERS_H
#define WREATH_POWERS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WpStatus {
  WP_STATUS_OK = 0,
  WP_STATUS_NULL_POINTER = 1,
  WP_STATUS_INVALID_UTF8 = 2,
  WP_STATUS_INVALID_ARGUMENT = 3,
  WP_STATUS_NOT_PRIME = 4,
  WP_STATUS_PARSE_ERROR = 5,
  WP_STATUS_INVALID_GROUP = 6,
  WP_STATUS_GUARD_EXCEEDED = 7,
  WP_STATUS_HYPOTHESIS = 8,
  WP_STATUS_INTERNAL = 9,
} WpStatus;

// Opaque group handle with its conjugacy classes precomputed.
typedef struct WpGroup WpGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a group from a spec string: "1", "C:m", "S:m", "D:m", or a path
// to a group file.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a writable pointer.
enum WpStatus wp_group_from_spec(const char *spec, struct WpGroup **out);

// Builds a group from the text of a group file.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum WpStatus wp_group_from_cayley(const char *text, struct WpGroup **out);

// Releases a handle. Passing null is a no-op.
//
// # Safety
// `group` must come from a `wp_group_from_*` call and not be freed twice.
void wp_group_free(struct WpGroup *group);

// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum WpStatus wp_group_order(const struct WpGroup *group, uint64_t *out);

// Number of conjugacy classes of G.
//
// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum WpStatus wp_group_num_classes(const struct WpGroup *group, size_t *out);

// Number of classes of G that are not r-th powers of a class.
//
// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum WpStatus wp_nonpower_class_count(const struct WpGroup *group, uint64_t r, size_t *out);

// Number of conjugacy classes of G wr S_n for a group with `s` classes.
//
// # Safety
// `out` must be a writable pointer.
enum WpStatus wp_count_classes(size_t s, uint32_t n, char **out);

// Number of conjugacy classes of G wr S_n consisting of r-th powers.
//
// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum WpStatus wp_count_power_classes(const struct WpGroup *group,
                                     uint32_t n,
                                     uint64_t r,
                                     char **out);

// Number of r-th powers in G wr S_n.
//
// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum WpStatus wp_count_power_elements(const struct WpGroup *group,
                                      uint32_t n,
                                      uint64_t r,
                                      char **out);

// Proportion of r-th powers in G wr S_n, as "a/b".
//
// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum WpStatus wp_power_probability(const struct WpGroup *group, uint32_t n, uint64_t r, char **out);

// Counts the distinct m-th powers by enumerating every element. Any m >= 1
// is accepted; large products fail with `WP_STATUS_GUARD_EXCEEDED`.
//
// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum WpStatus wp_oracle_power_count(const struct WpGroup *group,
                                    uint32_t n,
                                    uint64_t m,
                                    uint64_t *out);

// Releases a string returned by this library. Passing null is a no-op.
//
// # Safety
// `s` must come from this library and not be freed twice.
void wp_string_free(char *s);

// Message for the last failed call on this thread, or "" after a success.
// The pointer stays valid until the next call into this library.
const char *wp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WREATH_POWERS_H */
