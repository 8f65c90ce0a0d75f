#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>

#include "bits.h"

namespace jt {

// Word-level test: true iff all eight bytes are ASCII digits.
inline bool is_eight_digits(const uint8_t *chars) {
  uint64_t val;
  std::memcpy(&val, chars, 8);
  return (((val & 0xF0F0F0F0F0F0F0F0ULL) |
           (((val + 0x0606060606060606ULL) & 0xF0F0F0F0F0F0F0F0ULL) >> 4)) ==
          0x3333333333333333ULL);
}

#if defined(JT_X64) && defined(__SSE4_1__)
// Eight ASCII digits to their integer value: subtract '0' per lane, then
// three multiply-add reductions by {10,1}, {100,1} and {10000,1}.
inline uint32_t parse_eight_digits(const uint8_t *chars) {
  const __m128i ascii0 = _mm_set1_epi8('0');
  const __m128i mul_1_10 =
      _mm_setr_epi8(10, 1, 10, 1, 10, 1, 10, 1, 10, 1, 10, 1, 10, 1, 10, 1);
  const __m128i mul_1_100 = _mm_setr_epi16(100, 1, 100, 1, 100, 1, 100, 1);
  const __m128i mul_1_10000 =
      _mm_setr_epi16(10000, 1, 10000, 1, 10000, 1, 10000, 1);
  __m128i in = _mm_sub_epi8(_mm_loadu_si128((const __m128i *)chars), ascii0);
  __m128i t1 = _mm_maddubs_epi16(in, mul_1_10);
  __m128i t2 = _mm_madd_epi16(t1, mul_1_100);
  __m128i t3 = _mm_packus_epi32(t2, t2);
  __m128i t4 = _mm_madd_epi16(t3, mul_1_10000);
  return (uint32_t)_mm_cvtsi128_si32(t4);
}
#else
inline uint32_t parse_eight_digits(const uint8_t *chars) {
  uint64_t val;
  std::memcpy(&val, chars, 8);
  val = (val & 0x0F0F0F0F0F0F0F0FULL) * 2561 >> 8;
  val = (val & 0x00FF00FF00FF00FFULL) * 6553601 >> 16;
  return (uint32_t)((val & 0x0000FFFF0000FFFFULL) * 42949672960001 >> 32);
}
#endif

struct number_value {
  bool is_integer = false;
  int64_t integer_value = 0;
  double float_value = 0;
};

struct number_result {
  bool ok = false;
  number_value value;
  size_t end_offset = 0; // one past the last consumed byte on success
};

// RFC 8259 number grammar starting at `offset` (a digit or '-'). Integers
// in [-2^63, 2^63) stay integers; any fraction or exponent makes a
// binary64. Out-of-range integers and overflowing floats are rejected.
number_result parse_number(const uint8_t *buf, size_t len, size_t offset);

} // namespace jt
