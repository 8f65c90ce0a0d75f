#pragma once

#include <cstdint>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define JT_X64 1
#endif

namespace jt {

inline int trailing_zeroes(uint64_t v) { return __builtin_ctzll(v); }
inline int popcount64(uint64_t v) { return __builtin_popcountll(v); }

inline uint64_t clear_lowest_bit(uint64_t v) { return v & (v - 1); }

// Prefix XOR over the bits of a word: output bit i is the XOR of input
// bits 0..i. Turns quote locations into in-string spans.
inline uint64_t prefix_xor_ladder(uint64_t mask) {
  mask ^= mask << 1;
  mask ^= mask << 2;
  mask ^= mask << 4;
  mask ^= mask << 8;
  mask ^= mask << 16;
  mask ^= mask << 32;
  return mask;
}

#if defined(JT_X64) && defined(__PCLMUL__)
#define JT_HAVE_CLMUL 1
// Same prefix XOR as the ladder, in one carry-less multiplication by a
// word of ones.
inline uint64_t prefix_xor_clmul(uint64_t mask) {
  __m128i product = _mm_clmulepi64_si128(_mm_set_epi64x(0, (long long)mask),
                                         _mm_set1_epi8((char)0xFF), 0);
  return (uint64_t)_mm_cvtsi128_si64(product);
}
#else
inline uint64_t prefix_xor_clmul(uint64_t mask) { return prefix_xor_ladder(mask); }
#endif

inline uint64_t prefix_xor(uint64_t mask, bool use_clmul) {
  return use_clmul ? prefix_xor_clmul(mask) : prefix_xor_ladder(mask);
}

// Decode the set bits of `mask` into byte offsets, unconditional groups of
// eight per loop iteration. Extra decodes past the true population are
// overwritten by the next group or truncated by the returned end pointer,
// so `out` needs popcount(mask) entries plus 8 of slack.
inline uint32_t *extract_bits(uint64_t mask, uint32_t base, uint32_t *out) {
  uint32_t *end = out + popcount64(mask);
  while (mask != 0) {
    out[0] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out[1] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out[2] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out[3] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out[4] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out[5] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out[6] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out[7] = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
    out += 8;
  }
  return end;
}

// One tzcnt/blsr pair per set bit, one branch per bit.
inline uint32_t *extract_bits_naive(uint64_t mask, uint32_t base, uint32_t *out) {
  while (mask != 0) {
    *out++ = base + (uint32_t)trailing_zeroes(mask);
    mask = clear_lowest_bit(mask);
  }
  return out;
}

} // namespace jt
