#include "utf8.h"

#include <cstring>

#include "bits.h"

namespace jt {

bool sequence_length_check(const uint8_t *classes, size_t n) {
  // Two shift/saturating-subtract/add rounds, then every value must be
  // positive and lead positions must keep their original value.
  auto sat = [](int v, int s) { return v > s ? v - s : 0; };
  auto at = [&](const int *v, long long i) { return i < 0 ? 1 : v[i]; };
  int v0[256], v1[256], v2[256];
  if (n > 256)
    return false;
  for (size_t i = 0; i < n; i++)
    v0[i] = classes[i];
  for (size_t i = 0; i < n; i++)
    v1[i] = v0[i] + sat(at(v0, (long long)i - 1), 1);
  for (size_t i = 0; i < n; i++)
    v2[i] = v1[i] + sat(at(v1, (long long)i - 2), 2);
  for (size_t i = 0; i < n; i++) {
    if (v2[i] == 0)
      return false;
    if (v0[i] > 0 && v2[i] != v0[i])
      return false;
  }
  return true;
}

#if defined(JT_X64) && defined(__SSSE3__) && defined(__SSE4_1__)

namespace {

struct utf8_state {
  __m128i error = _mm_setzero_si128();
  __m128i prev_input = _mm_setzero_si128();
  __m128i prev_class = _mm_set1_epi8(1);
  __m128i prev_counts = _mm_set1_epi8(1);
  __m128i prev_incomplete = _mm_setzero_si128();
};

inline __m128i gt(__m128i a, uint8_t b) {
  // unsigned a > b
  return _mm_xor_si128(_mm_cmpeq_epi8(_mm_max_epu8(a, _mm_set1_epi8((char)b)),
                                      _mm_set1_epi8((char)b)),
                       _mm_set1_epi8((char)0xFF));
}

inline __m128i lteq(__m128i a, uint8_t b) {
  return _mm_cmpeq_epi8(_mm_max_epu8(a, _mm_set1_epi8((char)b)),
                        _mm_set1_epi8((char)b));
}

inline void check_chunk(utf8_state &st, __m128i input) {
  const __m128i ff = _mm_set1_epi8((char)0xFF);
  __m128i prev1 = _mm_alignr_epi8(input, st.prev_input, 15);

  // byte values no larger than 0xF4
  st.error = _mm_or_si128(st.error,
                          _mm_subs_epu8(input, _mm_set1_epi8((char)0xF4)));
  // 0xC0 and 0xC1 are forbidden (overlong two-byte forms)
  st.error = _mm_or_si128(
      st.error, _mm_or_si128(_mm_cmpeq_epi8(input, _mm_set1_epi8((char)0xC0)),
                             _mm_cmpeq_epi8(input, _mm_set1_epi8((char)0xC1))));
  // constrained second bytes after 0xED, 0xF4, 0xE0 and 0xF0
  __m128i is_ed = _mm_cmpeq_epi8(prev1, _mm_set1_epi8((char)0xED));
  __m128i is_f4 = _mm_cmpeq_epi8(prev1, _mm_set1_epi8((char)0xF4));
  __m128i is_e0 = _mm_cmpeq_epi8(prev1, _mm_set1_epi8((char)0xE0));
  __m128i is_f0 = _mm_cmpeq_epi8(prev1, _mm_set1_epi8((char)0xF0));
  st.error = _mm_or_si128(st.error, _mm_and_si128(is_ed, gt(input, 0x9F)));
  st.error = _mm_or_si128(st.error, _mm_and_si128(is_f4, gt(input, 0x8F)));
  st.error = _mm_or_si128(st.error, _mm_and_si128(is_e0, lteq(input, 0x9F)));
  st.error = _mm_or_si128(st.error, _mm_and_si128(is_f0, lteq(input, 0x8F)));

  // sequence-length classes from the high nibble: ASCII 1, continuation 0,
  // two/three/four-byte leads 2/3/4
  const __m128i class_table =
      _mm_setr_epi8(1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 2, 2, 3, 4);
  __m128i nibble =
      _mm_and_si128(_mm_srli_epi16(input, 4), _mm_set1_epi8(0x0F));
  __m128i classes = _mm_shuffle_epi8(class_table, nibble);

  __m128i prev1_class = _mm_alignr_epi8(classes, st.prev_class, 15);
  __m128i counts =
      _mm_add_epi8(classes, _mm_subs_epu8(prev1_class, _mm_set1_epi8(1)));
  __m128i prev2_counts = _mm_alignr_epi8(counts, st.prev_counts, 14);
  __m128i finals =
      _mm_add_epi8(counts, _mm_subs_epu8(prev2_counts, _mm_set1_epi8(2)));

  __m128i zero = _mm_setzero_si128();
  // continuation slots must be filled
  st.error = _mm_or_si128(st.error, _mm_cmpeq_epi8(finals, zero));
  // lead and ASCII slots must not receive spill from a previous sequence
  __m128i lead = _mm_xor_si128(_mm_cmpeq_epi8(classes, zero), ff);
  __m128i changed = _mm_xor_si128(_mm_cmpeq_epi8(finals, classes), ff);
  st.error = _mm_or_si128(st.error, _mm_and_si128(lead, changed));

  st.prev_input = input;
  st.prev_class = classes;
  st.prev_counts = counts;
  // bytes near the chunk end that still await continuations
  const __m128i max_complete =
      _mm_setr_epi8(-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1,
                    (char)0xEF, (char)0xDF, (char)0xBF);
  st.prev_incomplete = _mm_subs_epu8(input, max_complete);
}

inline void reset_ascii(utf8_state &st) {
  st.prev_input = _mm_setzero_si128();
  st.prev_class = _mm_set1_epi8(1);
  st.prev_counts = _mm_set1_epi8(1);
  st.prev_incomplete = _mm_setzero_si128();
}

inline bool block_is_ascii(const uint8_t *block) {
  __m128i acc = _mm_loadu_si128((const __m128i *)block);
  acc = _mm_or_si128(acc, _mm_loadu_si128((const __m128i *)(block + 16)));
  acc = _mm_or_si128(acc, _mm_loadu_si128((const __m128i *)(block + 32)));
  acc = _mm_or_si128(acc, _mm_loadu_si128((const __m128i *)(block + 48)));
  return _mm_movemask_epi8(acc) == 0;
}

} // namespace

bool validate_utf8(const uint8_t *data, size_t len) {
  utf8_state st;
  size_t full = len / 64;
  for (size_t b = 0; b < full; b++) {
    const uint8_t *block = data + b * 64;
    if (block_is_ascii(block)) {
      // a pending multi-byte sequence cannot be completed by ASCII
      st.error = _mm_or_si128(st.error, st.prev_incomplete);
      reset_ascii(st);
      continue;
    }
    for (int c = 0; c < 4; c++)
      check_chunk(st, _mm_loadu_si128((const __m128i *)(block + c * 16)));
  }
  size_t rest = len - full * 64;
  if (rest != 0) {
    uint8_t tail[64];
    std::memset(tail, 0, sizeof(tail));
    std::memcpy(tail, data + full * 64, rest);
    if (block_is_ascii(tail)) {
      st.error = _mm_or_si128(st.error, st.prev_incomplete);
      reset_ascii(st);
    } else {
      for (int c = 0; c < 4; c++)
        check_chunk(st, _mm_loadu_si128((const __m128i *)(tail + c * 16)));
    }
  }
  // a sequence truncated by the end of input
  st.error = _mm_or_si128(st.error, st.prev_incomplete);
  return _mm_movemask_epi8(_mm_cmpeq_epi8(st.error, _mm_setzero_si128())) ==
         0xFFFF;
}

#else

// Portable fallback: same class arithmetic and range checks, one byte at
// a time.
bool validate_utf8(const uint8_t *data, size_t len) {
  int prev_class = 1, prev_count = 1, prev2_count = 1;
  uint8_t prev_byte = 0;
  bool ok = true;
  auto sat = [](int v, int s) { return v > s ? v - s : 0; };
  static const int class_table[16] = {1, 1, 1, 1, 1, 1, 1, 1,
                                      0, 0, 0, 0, 2, 2, 3, 4};
  for (size_t i = 0; i < len + 3; i++) {
    uint8_t b = i < len ? data[i] : 0;
    if (b > 0xF4 || b == 0xC0 || b == 0xC1)
      ok = false;
    if (prev_byte == 0xED && b > 0x9F)
      ok = false;
    if (prev_byte == 0xF4 && b > 0x8F)
      ok = false;
    if (prev_byte == 0xE0 && b <= 0x9F)
      ok = false;
    if (prev_byte == 0xF0 && b <= 0x8F)
      ok = false;
    int cls = class_table[b >> 4];
    int count = cls + sat(prev_class, 1);
    int final_v = count + sat(prev2_count, 2);
    if (final_v == 0)
      ok = false;
    if (cls > 0 && final_v != cls)
      ok = false;
    prev2_count = prev_count;
    prev_count = count;
    prev_class = cls;
    prev_byte = b;
  }
  return ok;
}

#endif

long long utf8_error_offset(const uint8_t *data, size_t len) {
  size_t i = 0;
  while (i < len) {
    uint8_t b = data[i];
    if (b < 0x80) {
      i++;
      continue;
    }
    int n;
    uint8_t lo = 0x80, hi = 0xBF;
    if (b >= 0xC2 && b <= 0xDF) {
      n = 2;
    } else if (b == 0xE0) {
      n = 3;
      lo = 0xA0;
    } else if (b >= 0xE1 && b <= 0xEC) {
      n = 3;
    } else if (b == 0xED) {
      n = 3;
      hi = 0x9F;
    } else if (b >= 0xEE && b <= 0xEF) {
      n = 3;
    } else if (b == 0xF0) {
      n = 4;
      lo = 0x90;
    } else if (b >= 0xF1 && b <= 0xF3) {
      n = 4;
    } else if (b == 0xF4) {
      n = 4;
      hi = 0x8F;
    } else {
      return (long long)i;
    }
    if (i + (size_t)n > len)
      return (long long)i;
    if (data[i + 1] < lo || data[i + 1] > hi)
      return (long long)i;
    for (int k = 2; k < n; k++)
      if (data[i + k] < 0x80 || data[i + k] > 0xBF)
        return (long long)i;
    i += (size_t)n;
  }
  return -1;
}

} // namespace jt
