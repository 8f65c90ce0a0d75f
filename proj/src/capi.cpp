#include "jsontape.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "document.h"
#include "generate.h"
#include "indexer.h"
#include "oracle.h"
#include "stats.h"
#include "tape.h"

struct jt_parser {
  jt::scan_config config;
  jt::padded_input input; // retained by jt_stage1 for jt_stage2
  jt::structural_index index;
};

struct jt_document {
  jt::parsed_document doc;
};

namespace {

jt_error to_c_error(jt::error_code code) {
  switch (code) {
  case jt::error_code::ok:
    return JT_OK;
  case jt::error_code::utf8_error:
    return JT_UTF8_ERROR;
  case jt::error_code::string_error:
    return JT_STRING_ERROR;
  case jt::error_code::number_error:
    return JT_NUMBER_ERROR;
  case jt::error_code::tape_error:
    return JT_TAPE_ERROR;
  case jt::error_code::depth_error:
    return JT_DEPTH_ERROR;
  case jt::error_code::capacity:
    return JT_CAPACITY;
  default:
    return JT_EMPTY;
  }
}

void set_offset(long long *error_offset, long long value) {
  if (error_offset)
    *error_offset = value;
}

char *copy_string(const std::string &s) {
  char *out = (char *)std::malloc(s.size() + 1);
  if (out)
    std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

jt_parser *jt_parser_new(void) { return new (std::nothrow) jt_parser; }

void jt_parser_free(jt_parser *p) { delete p; }

void jt_parser_set_flags(jt_parser *p, int use_clmul, int fast_extract,
                         int vector_classify) {
  p->config.use_clmul = use_clmul != 0;
  p->config.fast_extract = fast_extract != 0;
  p->config.vector_classify = vector_classify != 0;
}

jt_error jt_parse(jt_parser *p, const char *data, size_t len,
                  jt_document **out, long long *error_offset) {
  if (out)
    *out = nullptr;
  jt::padded_input input = jt::padded_input::from(data, len);
  jt::parse_result r = jt::build_structural_index(input, p->config, p->index);
  if (r.ok()) {
    auto *doc = new (std::nothrow) jt_document;
    if (!doc) {
      set_offset(error_offset, -1);
      return JT_CAPACITY;
    }
    r = jt::build_tape(input, p->index, doc->doc);
    if (r.ok() && out)
      *out = doc;
    else
      delete doc;
  }
  set_offset(error_offset, r.offset);
  return to_c_error(r.code);
}

jt_error jt_stage1(jt_parser *p, const char *data, size_t len,
                   long long *error_offset) {
  p->input = jt::padded_input::from(data, len);
  jt::parse_result r =
      jt::build_structural_index(p->input, p->config, p->index);
  set_offset(error_offset, r.offset);
  return to_c_error(r.code);
}

jt_error jt_stage2(jt_parser *p, jt_document **out, long long *error_offset) {
  if (out)
    *out = nullptr;
  jt::parse_result r;
  if (out) {
    auto *doc = new (std::nothrow) jt_document;
    if (!doc) {
      set_offset(error_offset, -1);
      return JT_CAPACITY;
    }
    r = jt::build_tape(p->input, p->index, doc->doc);
    if (r.ok())
      *out = doc;
    else
      delete doc;
  } else {
    jt::parsed_document scratch;
    r = jt::build_tape(p->input, p->index, scratch);
  }
  set_offset(error_offset, r.offset);
  return to_c_error(r.code);
}

size_t jt_index_count(const jt_parser *p) { return p->index.count; }

const uint32_t *jt_index_positions(const jt_parser *p) {
  return p->index.positions();
}

void jt_document_free(jt_document *doc) { delete doc; }

int jt_document_equal(const jt_document *a, const jt_document *b) {
  return a->doc == b->doc ? 1 : 0;
}

char *jt_document_dump(const jt_document *doc) {
  return copy_string(jt::tape_dump(doc->doc));
}

char *jt_document_distinct(const jt_document *doc, const char *path) {
  std::string out;
  for (const jt::scalar_value &v : jt::distinct_values(doc->doc, path)) {
    out += v.to_string();
    out += '\n';
  }
  return copy_string(out);
}

void jt_string_free(char *s) { std::free(s); }

jt_error jt_minify(jt_parser *p, const char *data, size_t len, char *dst,
                   size_t *dst_len, long long *error_offset) {
  jt::padded_input input = jt::padded_input::from(data, len);
  jt::parse_result r = jt::build_structural_index(input, p->config, p->index);
  if (r.ok()) {
    jt::parsed_document doc;
    r = jt::build_tape(input, p->index, doc);
  }
  set_offset(error_offset, r.offset);
  if (!r.ok())
    return to_c_error(r.code);
  *dst_len = jt::minify_pass(input, (uint8_t *)dst);
  return JT_OK;
}

jt_error jt_compute_stats(jt_parser *p, const char *data, size_t len,
                          jt_stats *out, long long *error_offset) {
  jt_document *doc = nullptr;
  jt_error err = jt_parse(p, data, len, &doc, error_offset);
  if (err != JT_OK)
    return err;
  jt::corpus_stats s = jt::compute_stats(
      doc->doc, (const uint8_t *)data, len, p->index.count);
  jt_document_free(doc);
  out->integers = s.integers;
  out->floats = s.floats;
  out->strings = s.strings;
  out->non_ascii_bytes = s.non_ascii_bytes;
  out->objects = s.objects;
  out->arrays = s.arrays;
  out->nulls = s.nulls;
  out->trues = s.trues;
  out->falses = s.falses;
  out->structurals = s.structurals;
  out->bytes = s.bytes;
  out->bytes_per_structural = s.bytes_per_structural;
  return JT_OK;
}

int jt_oracle_validate(const char *data, size_t len) {
  return jt::oracle_parse((const uint8_t *)data, len, false).accepted ? 1 : 0;
}

char *jt_generate(const char *kind, uint64_t size, uint64_t seed,
                  size_t *len_out) {
  jt::corpus_kind k;
  if (std::strcmp(kind, "numbers") == 0)
    k = jt::corpus_kind::numbers;
  else if (std::strcmp(kind, "random-mixed") == 0)
    k = jt::corpus_kind::random_mixed;
  else if (std::strcmp(kind, "escaped-strings") == 0)
    k = jt::corpus_kind::escaped_strings;
  else if (std::strcmp(kind, "large") == 0)
    k = jt::corpus_kind::large;
  else
    return nullptr;
  std::string out = jt::generate_corpus(k, size, seed);
  if (len_out)
    *len_out = out.size();
  return copy_string(out);
}

const char *jt_error_name(jt_error code) {
  switch (code) {
  case JT_OK:
    return "OK";
  case JT_UTF8_ERROR:
    return "UTF8_ERROR";
  case JT_STRING_ERROR:
    return "STRING_ERROR";
  case JT_NUMBER_ERROR:
    return "NUMBER_ERROR";
  case JT_TAPE_ERROR:
    return "TAPE_ERROR";
  case JT_DEPTH_ERROR:
    return "DEPTH_ERROR";
  case JT_CAPACITY:
    return "CAPACITY";
  default:
    return "EMPTY";
  }
}
