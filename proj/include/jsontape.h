/* C interface to the jsontape library: two-stage validating JSON parser
 * with a tape DOM, plus the reference oracle and corpus generator used
 * by the tooling. All functions are thread-compatible; a jt_parser is
 * exclusive to one call at a time, documents are immutable. */
#ifndef JSONTAPE_H
#define JSONTAPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jt_error {
  JT_OK = 0,
  JT_UTF8_ERROR,
  JT_STRING_ERROR,
  JT_NUMBER_ERROR,
  JT_TAPE_ERROR,
  JT_DEPTH_ERROR,
  JT_CAPACITY,
  JT_EMPTY
} jt_error;

typedef struct jt_parser jt_parser;
typedef struct jt_document jt_document;

jt_parser *jt_parser_new(void);
void jt_parser_free(jt_parser *p);

/* Stage-1 ablation switches; every combination must produce identical
 * results. All default to 1 (fast). */
void jt_parser_set_flags(jt_parser *p, int use_clmul, int fast_extract,
                         int vector_classify);

/* Full parse. On JT_OK, *out owns the document (free with
 * jt_document_free). error_offset gets a byte offset when one is known,
 * otherwise -1; both out params may be NULL. */
jt_error jt_parse(jt_parser *p, const char *data, size_t len,
                  jt_document **out, long long *error_offset);

/* Stage 1 only: UTF-8 validation plus the structural index, retained in
 * the parser until the next call. */
jt_error jt_stage1(jt_parser *p, const char *data, size_t len,
                   long long *error_offset);
size_t jt_index_count(const jt_parser *p);
const uint32_t *jt_index_positions(const jt_parser *p);

/* Stage 2 over the input and index retained by the last jt_stage1 call;
 * out may be NULL to validate only. */
jt_error jt_stage2(jt_parser *p, jt_document **out, long long *error_offset);

void jt_document_free(jt_document *doc);
int jt_document_equal(const jt_document *a, const jt_document *b);

/* One line per tape word; free with jt_string_free. */
char *jt_document_dump(const jt_document *doc);

/* Sorted distinct scalars at a dotted key path, one per line; free with
 * jt_string_free. */
char *jt_document_distinct(const jt_document *doc, const char *path);

void jt_string_free(char *s);

/* Whitespace removal outside strings. Validates first; on JT_OK writes
 * at most len bytes to dst and stores the minified size in *dst_len. */
jt_error jt_minify(jt_parser *p, const char *data, size_t len, char *dst,
                   size_t *dst_len, long long *error_offset);

typedef struct jt_stats {
  uint64_t integers;
  uint64_t floats;
  uint64_t strings; /* every string node, keys included */
  uint64_t non_ascii_bytes;
  uint64_t objects;
  uint64_t arrays;
  uint64_t nulls;
  uint64_t trues;
  uint64_t falses;
  uint64_t structurals; /* structural + pseudo-structural characters */
  uint64_t bytes;
  double bytes_per_structural;
} jt_stats;

jt_error jt_compute_stats(jt_parser *p, const char *data, size_t len,
                          jt_stats *out, long long *error_offset);

/* Reference oracle verdict: 1 accepted, 0 rejected. Character-at-a-time,
 * independent of the main pipeline. */
int jt_oracle_validate(const char *data, size_t len);

/* Deterministic corpus; kind is one of "numbers", "random-mixed",
 * "escaped-strings", "large". Returns malloc-style buffer (free with
 * jt_string_free), NULL on unknown kind. */
char *jt_generate(const char *kind, uint64_t size, uint64_t seed,
                  size_t *len_out);

const char *jt_error_name(jt_error code);

#ifdef __cplusplus
}
#endif

#endif /* JSONTAPE_H */
