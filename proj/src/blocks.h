#pragma once

#include <cstdint>
#include <cstring>

#include "bits.h"

// Stage-1 bitmask algebra over 64-byte blocks. Bit i of every mask
// corresponds to byte i of the block (least significant bit first).
// Carries are materialized as 0 or all-ones words so the whole pipeline
// stays branchless.

namespace jt {

constexpr uint64_t kEvenBits = 0x5555555555555555ULL;
constexpr uint64_t kOddBits = 0xAAAAAAAAAAAAAAAAULL;

struct block_masks {
  uint64_t backslash;
  uint64_t raw_quote;
  uint64_t escaped;
  uint64_t unescaped_quote;
  uint64_t in_string; // covers the opening quote, excludes the closing one
  uint64_t structural;
  uint64_t whitespace;
  uint64_t final_structural;
};

// Carry state threaded between consecutive blocks. At document start the
// input behaves as if preceded by whitespace with no pending backslash.
struct scan_carry {
  uint64_t odd_backslash = 0;  // 0 or 1
  uint64_t in_string = 0;      // 0 or 1
  uint64_t prev_separator = 1; // 0 or 1
};

#if defined(JT_X64) && defined(__AVX2__)
inline uint64_t eq_mask64(const uint8_t *block, uint8_t ch) {
  __m256i lo = _mm256_loadu_si256((const __m256i *)block);
  __m256i hi = _mm256_loadu_si256((const __m256i *)(block + 32));
  __m256i m = _mm256_set1_epi8((char)ch);
  uint64_t rlo = (uint32_t)_mm256_movemask_epi8(_mm256_cmpeq_epi8(lo, m));
  uint64_t rhi = (uint32_t)_mm256_movemask_epi8(_mm256_cmpeq_epi8(hi, m));
  return rlo | (rhi << 32);
}
#else
inline uint64_t eq_mask64(const uint8_t *block, uint8_t ch) {
  uint64_t r = 0;
  for (int i = 0; i < 64; i++)
    r |= (uint64_t)(block[i] == ch) << i;
  return r;
}
#endif

// Ends of all odd-length backslash runs: the byte right after such a run
// is escaped. The run may extend across the block boundary via `carry_in`
// (1 iff the previous block ended on an odd-length run).
inline uint64_t odd_backslash_ends(uint64_t backslash, uint64_t carry_in,
                                   uint64_t *carry_out) {
  uint64_t starts = backslash & ~(backslash << 1);
  // a pending odd run flips which offsets count as even starts
  uint64_t even_start_mask = kEvenBits ^ carry_in;
  uint64_t even_starts = starts & even_start_mask;
  uint64_t odd_starts = starts & ~even_start_mask;
  uint64_t even_carries = backslash + even_starts;
  uint64_t odd_carries;
  bool overflow = __builtin_add_overflow(backslash, odd_starts, &odd_carries);
  odd_carries |= carry_in; // a run carried in ends like an odd start at bit -1
  *carry_out = overflow ? 1 : 0;
  uint64_t even_carry_ends = even_carries & ~backslash;
  uint64_t odd_carry_ends = odd_carries & ~backslash;
  uint64_t even_start_odd_end = even_carry_ends & kOddBits;
  uint64_t odd_start_even_end = odd_carry_ends & kEvenBits;
  return even_start_odd_end | odd_start_even_end;
}

// Quoted range from unescaped quotes: prefix XOR flips on each quote, the
// carry word (0 or all ones) extends a string entered in a prior block.
inline uint64_t string_mask(uint64_t unescaped_quote, uint64_t carry_in,
                            bool use_clmul, uint64_t *carry_out) {
  uint64_t in_string = prefix_xor(unescaped_quote, use_clmul);
  in_string ^= 0ULL - carry_in;
  *carry_out = in_string >> 63;
  return in_string;
}

// Nibble lookup tables of the vectorized classification. The bitwise AND
// of the two looked-up values is nonzero exactly for structural characters
// (low three bits) and white space (bits three and four).
constexpr uint8_t kLowNibbleTable[16] = {16, 0, 0, 0, 0, 0, 0, 0,
                                         0, 8, 10, 4, 1, 12, 0, 0};
constexpr uint8_t kHighNibbleTable[16] = {8, 0, 17, 2, 0, 4, 0, 4,
                                          0, 0, 0, 0, 0, 0, 0, 0};

#if defined(JT_X64) && defined(__AVX2__)
inline void classify_block(const uint8_t *block, uint64_t *structural,
                           uint64_t *whitespace) {
  const __m256i low_table = _mm256_broadcastsi128_si256(
      _mm_loadu_si128((const __m128i *)kLowNibbleTable));
  const __m256i high_table = _mm256_broadcastsi128_si256(
      _mm_loadu_si128((const __m128i *)kHighNibbleTable));
  const __m256i low_mask = _mm256_set1_epi8(0x0F);
  uint64_t s = 0, w = 0;
  for (int half = 0; half < 2; half++) {
    __m256i in = _mm256_loadu_si256((const __m256i *)(block + 32 * half));
    __m256i lo = _mm256_shuffle_epi8(low_table, _mm256_and_si256(in, low_mask));
    __m256i hi = _mm256_shuffle_epi8(
        high_table,
        _mm256_and_si256(_mm256_srli_epi16(in, 4), low_mask));
    __m256i v = _mm256_and_si256(lo, hi);
    __m256i zero = _mm256_setzero_si256();
    __m256i sv = _mm256_and_si256(v, _mm256_set1_epi8(0x07));
    __m256i wv = _mm256_and_si256(v, _mm256_set1_epi8(0x18));
    uint64_t sm =
        (uint32_t)~_mm256_movemask_epi8(_mm256_cmpeq_epi8(sv, zero));
    uint64_t wm =
        (uint32_t)~_mm256_movemask_epi8(_mm256_cmpeq_epi8(wv, zero));
    s |= sm << (32 * half);
    w |= wm << (32 * half);
  }
  *structural = s;
  *whitespace = w;
}
#else
inline void classify_block(const uint8_t *block, uint64_t *structural,
                           uint64_t *whitespace) {
  uint64_t s = 0, w = 0;
  for (int i = 0; i < 64; i++) {
    uint8_t v = kLowNibbleTable[block[i] & 0x0F] & kHighNibbleTable[block[i] >> 4];
    s |= (uint64_t)((v & 0x07) != 0) << i;
    w |= (uint64_t)((v & 0x18) != 0) << i;
  }
  *structural = s;
  *whitespace = w;
}
#endif

// Ablation path: one comparison per member of each character set.
inline void classify_block_naive(const uint8_t *block, uint64_t *structural,
                                 uint64_t *whitespace) {
  uint64_t s = eq_mask64(block, ',') | eq_mask64(block, ':') |
               eq_mask64(block, '[') | eq_mask64(block, ']') |
               eq_mask64(block, '{') | eq_mask64(block, '}');
  uint64_t w = eq_mask64(block, ' ') | eq_mask64(block, '\t') |
               eq_mask64(block, '\n') | eq_mask64(block, '\r');
  *structural = s;
  *whitespace = w;
}

// Merge pseudo-structural characters into the structural mask: structural
// characters outside strings, opening quotes, and non-whitespace bytes
// whose predecessor is a separator (structural, quote or white space).
// Closing quotes are restored while looking for predecessors and removed
// again at the end.
inline uint64_t finalize_structurals(uint64_t structural, uint64_t whitespace,
                                     uint64_t unescaped_quote,
                                     uint64_t in_string, uint64_t prev_separator,
                                     uint64_t *separator_out) {
  structural &= ~in_string;
  structural |= unescaped_quote;
  uint64_t candidates = structural | whitespace;
  *separator_out = candidates >> 63;
  uint64_t pseudo = (candidates << 1) | prev_separator;
  pseudo &= ~whitespace & ~in_string;
  structural |= pseudo;
  structural &= ~(unescaped_quote & ~in_string);
  return structural;
}

// Full per-block pipeline with carry threading.
inline block_masks scan_block(const uint8_t *block, scan_carry &carry,
                              bool use_clmul, bool vector_classify) {
  block_masks m;
  m.backslash = eq_mask64(block, '\\');
  m.raw_quote = eq_mask64(block, '"');
  uint64_t odd_carry = 0;
  m.escaped = odd_backslash_ends(m.backslash, carry.odd_backslash, &odd_carry);
  m.unescaped_quote = m.raw_quote & ~m.escaped;
  uint64_t string_carry = 0;
  m.in_string =
      string_mask(m.unescaped_quote, carry.in_string, use_clmul, &string_carry);
  if (vector_classify)
    classify_block(block, &m.structural, &m.whitespace);
  else
    classify_block_naive(block, &m.structural, &m.whitespace);
  uint64_t sep_carry = 0;
  m.final_structural =
      finalize_structurals(m.structural, m.whitespace, m.unescaped_quote,
                           m.in_string, carry.prev_separator, &sep_carry);
  carry.odd_backslash = odd_carry;
  carry.in_string = string_carry;
  carry.prev_separator = sep_carry;
  return m;
}

} // namespace jt
