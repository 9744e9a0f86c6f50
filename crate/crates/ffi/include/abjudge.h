/* C interface to the abjudge pairwise-vote analytics library. */

#ifndef ABJUDGE_H
#define ABJUDGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum AbStatus {
  /**
   * Success.
   */
  AbStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  AbStatus_NullPointer = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  AbStatus_InvalidUtf8 = 2,
  /**
   * The input could not be read or parsed; see `ab_last_error`.
   */
  AbStatus_ParseError = 3,
  /**
   * The analysis rejected the data; see `ab_last_error`.
   */
  AbStatus_AnalysisError = 4,
  /**
   * An internal invariant failed; see `ab_last_error`.
   */
  AbStatus_Panic = 5,
} AbStatus;

/**
 * Opaque handle to a parsed vote list.
 */
typedef struct AbVotes AbVotes;

/**
 * Win fractions of one matchup. A `false` flag means the matching
 * fields are undefined (zero denominator) and hold NaN.
 */
typedef struct AbScorePair {
  double major_win;
  double major_loss;
  double distinct_win;
  double distinct_loss;
  double distinct_tie;
  /**
   * Whether the matchup had any decisive vote (major fields defined).
   */
  bool major_defined;
  /**
   * Whether the matchup had any vote at all (distinct fields defined).
   */
  bool distinct_defined;
} AbScorePair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the calling thread's most recent error, or
 * null if no call has failed yet. The pointer stays valid until the
 * next failing call on the same thread; do not free it.
 */
const char *ab_last_error(void);

/**
 * Parses a vote file (JSONL, CSV, or TSV, auto-detected) into a new
 * handle written to `*out`.
 *
 * # Safety
 * `path` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer. On any status other than `Ok`, `*out` is
 * untouched. The returned handle must be released with `ab_votes_free`.
 */
enum AbStatus ab_votes_parse_path(const char *path, struct AbVotes **out);

/**
 * Parses votes from an in-memory buffer (same formats as the path
 * variant) into a new handle written to `*out`.
 *
 * # Safety
 * `data` must point to `len` readable bytes and `out` to writable
 * storage for one pointer. The returned handle must be released with
 * `ab_votes_free`.
 */
enum AbStatus ab_votes_parse_buffer(const uint8_t *data, size_t len, struct AbVotes **out);

/**
 * Number of votes behind the handle; 0 for null.
 */
size_t ab_votes_len(const struct AbVotes *votes);

/**
 * Releases a handle returned by a parse function. Null is a no-op.
 *
 * # Safety
 * `votes` must be a pointer previously returned through a parse
 * function's out parameter, and must not be used afterwards.
 */
void ab_votes_free(struct AbVotes *votes);

/**
 * Computes the win fractions of one matchup from raw counts.
 *
 * # Safety
 * `out` must point to writable storage for one `AbScorePair`.
 */
enum AbStatus ab_score_pair(uint64_t win, uint64_t loss, uint64_t tie, struct AbScorePair *out);

/**
 * One-sided bootstrap p-value for a matchup given its raw counts
 * (vote-level resampling, deterministic for a fixed seed), written to
 * `*out_p`.
 *
 * # Safety
 * `out_p` must point to writable storage for one double.
 */
enum AbStatus ab_bootstrap_p(uint64_t win,
                             uint64_t loss,
                             uint64_t tie,
                             uint64_t samples,
                             uint64_t seed,
                             double *out_p);

/**
 * Bradley-Terry ranking of the handle's votes as a JSON array of
 * `{system_id, score, uncertainty}` rows (score = log-ability,
 * uncertainty = standard error), best system first. The string must be
 * released with `ab_string_free`.
 *
 * # Safety
 * `votes` must be a live handle and `out_json` writable storage for one
 * pointer.
 */
enum AbStatus ab_rank_bt_json(const struct AbVotes *votes, char **out_json);

/**
 * TrueSkill ranking of the handle's votes as a JSON array of
 * `{system_id, score, uncertainty}` rows (score = mu, uncertainty =
 * sigma), best system first. `passes` replay passes over the stream
 * shuffled from `seed`. The string must be released with
 * `ab_string_free`.
 *
 * # Safety
 * `votes` must be a live handle and `out_json` writable storage for one
 * pointer.
 */
enum AbStatus ab_rank_trueskill_json(const struct AbVotes *votes,
                                     uint64_t seed,
                                     uint32_t passes,
                                     char **out_json);

/**
 * Win-count ranking of the handle's votes as a JSON object
 * `{entries: [{system_id, win_count, total_matchups, mean_major_win}]}`.
 * The string must be released with `ab_string_free`.
 *
 * # Safety
 * `votes` must be a live handle and `out_json` writable storage for one
 * pointer.
 */
enum AbStatus ab_rank_wincount_json(const struct AbVotes *votes, char **out_json);

/**
 * Releases a string returned through an `out_json` parameter. Null is a
 * no-op.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library and must
 * not be used afterwards.
 */
void ab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABJUDGE_H */
