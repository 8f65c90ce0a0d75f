#include "stringparse.h"

#include <cstring>

#include "bits.h"

namespace jt {

namespace {

const uint8_t kEscapeMap[256] = {
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, // 0x00
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, // 0x10
    0, 0, 0x22, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0x2F, // 0x20: " /
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, // 0x30
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, // 0x40
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0x5C, 0, 0, 0, // 0x50: backslash
    0, 0, 0x08, 0, 0, 0, 0x0C, 0, 0, 0, 0, 0, 0, 0, 0x0A, 0, // 0x60: b f n
    0, 0, 0x0D, 0, 0x09, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, // 0x70: r t
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
};

inline int hex_value(uint8_t c) {
  if (c >= '0' && c <= '9')
    return c - '0';
  if (c >= 'a' && c <= 'f')
    return c - 'a' + 10;
  if (c >= 'A' && c <= 'F')
    return c - 'A' + 10;
  return -1;
}

// four hex digits or -1
inline int parse_hex4(const uint8_t *p) {
  int v = 0;
  for (int i = 0; i < 4; i++) {
    int h = hex_value(p[i]);
    if (h < 0)
      return -1;
    v = (v << 4) | h;
  }
  return v;
}

inline uint8_t *encode_utf8(uint32_t cp, uint8_t *dst) {
  if (cp < 0x80) {
    *dst++ = (uint8_t)cp;
  } else if (cp < 0x800) {
    *dst++ = (uint8_t)(0xC0 | (cp >> 6));
    *dst++ = (uint8_t)(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    *dst++ = (uint8_t)(0xE0 | (cp >> 12));
    *dst++ = (uint8_t)(0x80 | ((cp >> 6) & 0x3F));
    *dst++ = (uint8_t)(0x80 | (cp & 0x3F));
  } else {
    *dst++ = (uint8_t)(0xF0 | (cp >> 18));
    *dst++ = (uint8_t)(0x80 | ((cp >> 12) & 0x3F));
    *dst++ = (uint8_t)(0x80 | ((cp >> 6) & 0x3F));
    *dst++ = (uint8_t)(0x80 | (cp & 0x3F));
  }
  return dst;
}

// decode \X at src (src points at the backslash); surrogate pairs combine
// into a single code point
inline bool handle_escape(const uint8_t *buf, size_t *src, uint8_t **dst) {
  size_t p = *src;
  uint8_t esc = buf[p + 1];
  if (esc == 'u') {
    int cp = parse_hex4(buf + p + 2);
    if (cp < 0)
      return false;
    p += 6;
    if (cp >= 0xD800 && cp <= 0xDBFF) {
      if (buf[p] != '\\' || buf[p + 1] != 'u')
        return false; // high surrogate without a low one
      int low = parse_hex4(buf + p + 2);
      if (low < 0xDC00 || low > 0xDFFF)
        return false;
      cp = 0x10000 + (((cp - 0xD800) << 10) | (low - 0xDC00));
      p += 6;
    } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
      return false; // lone low surrogate
    }
    *dst = encode_utf8((uint32_t)cp, *dst);
  } else {
    uint8_t decoded = kEscapeMap[esc];
    if (decoded == 0)
      return false;
    *(*dst)++ = decoded;
    p += 2;
  }
  *src = p;
  return true;
}

struct chunk_masks {
  uint32_t quote;
  uint32_t backslash;
  uint32_t control;
};

#if defined(JT_X64) && defined(__AVX2__)
inline chunk_masks load_chunk(const uint8_t *src, uint8_t *dst) {
  __m256i in = _mm256_loadu_si256((const __m256i *)src);
  _mm256_storeu_si256((__m256i *)dst, in); // speculative copy, 32-byte slack
  chunk_masks m;
  m.quote = (uint32_t)_mm256_movemask_epi8(
      _mm256_cmpeq_epi8(in, _mm256_set1_epi8('"')));
  m.backslash = (uint32_t)_mm256_movemask_epi8(
      _mm256_cmpeq_epi8(in, _mm256_set1_epi8('\\')));
  __m256i bound = _mm256_set1_epi8(0x1F);
  __m256i below = _mm256_cmpeq_epi8(_mm256_max_epu8(in, bound), bound);
  m.control = (uint32_t)_mm256_movemask_epi8(below);
  return m;
}
#else
inline chunk_masks load_chunk(const uint8_t *src, uint8_t *dst) {
  chunk_masks m{0, 0, 0};
  for (int i = 0; i < 32; i++) {
    dst[i] = src[i];
    m.quote |= (uint32_t)(src[i] == '"') << i;
    m.backslash |= (uint32_t)(src[i] == '\\') << i;
    m.control |= (uint32_t)(src[i] < 0x20) << i;
  }
  return m;
}
#endif

inline int first_bit(uint32_t mask) {
  return mask == 0 ? 32 : __builtin_ctz(mask);
}

} // namespace

string_result parse_string(const uint8_t *buf, size_t len, size_t offset,
                           uint8_t *dst) {
  (void)len; // termination is guaranteed by the NUL padding past len
  uint8_t *payload = dst + 4;
  uint8_t *out = payload;
  size_t src = offset + 1;
  for (;;) {
    chunk_masks m = load_chunk(buf + src, out);
    int q = first_bit(m.quote);
    int bs = first_bit(m.backslash);
    int ctrl = first_bit(m.control);
    if (q < bs && q < ctrl) {
      out += q;
      string_result r;
      r.ok = true;
      r.length = (uint32_t)(out - payload);
      r.end_offset = src + (size_t)q + 1;
      std::memcpy(dst, &r.length, 4);
      return r;
    }
    if (ctrl < bs) {
      // unescaped control character, or the NUL padding of an
      // unterminated string
      string_result r;
      r.error_offset = (long long)(src + (size_t)ctrl);
      return r;
    }
    if (bs < 32) {
      out += bs;
      src += (size_t)bs;
      if (!handle_escape(buf, &src, &out)) {
        string_result r;
        r.error_offset = (long long)src;
        return r;
      }
    } else {
      out += 32;
      src += 32;
    }
  }
}

} // namespace jt
