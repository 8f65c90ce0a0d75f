#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <random>

#include "blocks.h"
#include "helpers.h"

using namespace jt;

TEST_CASE("worked example block is 64 bytes") {
  CHECK(std::strlen(kExampleBlock) == 64);
}

TEST_CASE("backslash and quote masks of the worked example") {
  const uint8_t *block = (const uint8_t *)kExampleBlock;
  CHECK(row_from_mask(eq_mask64(block, '\\')) ==
        "___111________________1111_______________________________111____");
  CHECK(row_from_mask(eq_mask64(block, '"')) ==
        "__1___1_____1________1____1________1____1___________1_1_1___11__");
}

TEST_CASE("odd backslash run ends, worked example") {
  uint64_t backslash = mask_from_row(
      "___111________________1111_______________________________111____");
  // intermediate rows of the sequence
  uint64_t starts = backslash & ~(backslash << 1);
  CHECK(row_from_mask(starts) ==
        "___1__________________1__________________________________1______");
  uint64_t even_starts = starts & kEvenBits;
  CHECK(row_from_mask(even_starts) ==
        "______________________1_________________________________________");
  uint64_t even_carries = backslash + even_starts;
  CHECK(row_from_mask(even_carries) ==
        "___111____________________1______________________________111____");
  CHECK(row_from_mask(even_carries & ~backslash) ==
        "__________________________1_____________________________________");
  uint64_t odd_starts = starts & kOddBits;
  CHECK(row_from_mask(odd_starts) ==
        "___1_____________________________________________________1______");
  uint64_t odd_carries = backslash + odd_starts;
  CHECK(row_from_mask(odd_carries) ==
        "______1_______________1111__________________________________1___");
  CHECK(row_from_mask(odd_carries & ~backslash) ==
        "______1_____________________________________________________1___");

  uint64_t carry_out = 99;
  uint64_t od = odd_backslash_ends(backslash, 0, &carry_out);
  CHECK(row_from_mask(od) ==
        "______1_____________________________________________________1___");
  CHECK(carry_out == 0);
}

TEST_CASE("unescaped quotes and string mask, worked example") {
  uint64_t q = mask_from_row(
      "__1___1_____1________1____1________1____1___________1_1_1___11__");
  uint64_t od = mask_from_row(
      "______1_____________________________________________________1___");
  uint64_t unescaped = q & ~od;
  CHECK(row_from_mask(unescaped) ==
        "__1_________1________1____1________1____1___________1_1_1____1__");
  for (bool use_clmul : {true, false}) {
    uint64_t carry_out = 99;
    uint64_t in_string = string_mask(unescaped, 0, use_clmul, &carry_out);
    CHECK(row_from_mask(in_string) ==
          "__1111111111_________11111_________11111____________11__11111___");
    CHECK(carry_out == 0);
  }
}

TEST_CASE("prefix xor worked example and equivalence") {
  // 0b100010000 -> 0b011110000
  CHECK(prefix_xor_ladder(0b100010000) == 0b011110000);
  CHECK(prefix_xor_clmul(0b100010000) == 0b011110000);

  for (uint64_t edge :
       {uint64_t(0), ~uint64_t(0), uint64_t(1), uint64_t(1) << 63, kEvenBits,
        kOddBits})
    CHECK(prefix_xor_clmul(edge) == prefix_xor_ladder(edge));
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000000; i++) {
    uint64_t v = rng();
    CHECK(prefix_xor_clmul(v) == prefix_xor_ladder(v));
  }
}

TEST_CASE("classification of the worked example") {
  const uint8_t *block = (const uint8_t *)kExampleBlock;
  uint64_t s = 0, w = 0;
  classify_block(block, &s, &w);
  CHECK(row_from_mask(s) ==
        "1_________11_1_1____1_______1____1_______1_______11____1_______1");
  CHECK(row_from_mask(w) ==
        "_1____________1_1__________1_1____1_______1_____1__1__________1_");
  uint64_t sn = 0, wn = 0;
  classify_block_naive(block, &sn, &wn);
  CHECK(sn == s);
  CHECK(wn == w);
}

TEST_CASE("classification table agrees with per-byte membership, all 256") {
  for (int c = 0; c < 256; c++) {
    uint8_t block[64];
    std::memset(block, (uint8_t)c, 64);
    uint64_t s = 0, w = 0;
    classify_block(block, &s, &w);
    bool is_structural = c == ',' || c == ':' || c == '[' || c == ']' ||
                         c == '{' || c == '}';
    bool is_ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    CHECK(s == (is_structural ? ~0ULL : 0ULL));
    CHECK(w == (is_ws ? ~0ULL : 0ULL));
    uint64_t sn = 0, wn = 0;
    classify_block_naive(block, &sn, &wn);
    CHECK(sn == s);
    CHECK(wn == w);
  }
}

TEST_CASE("pseudo-structural finalization, worked example") {
  uint64_t q = mask_from_row(
      "__1_________1________1____1________1____1___________1_1_1____1__");
  uint64_t r = mask_from_row(
      "__1111111111_________11111_________11111____________11__11111___");
  uint64_t s = mask_from_row(
      "1_________11_1_1____1_______1____1_______1_______11____1_______1");
  uint64_t w = mask_from_row(
      "_1____________1_1__________1_1____1_______1_____1__1__________1_");
  uint64_t sep_out = 99;
  uint64_t final_mask = finalize_structurals(s, w, q, r, 1, &sep_out);
  CHECK(row_from_mask(final_mask) ==
        "1_1__________1_1_1__11______1_1__1_1_____1_1_____11_1__11______1");
  CHECK(sep_out == 1); // block ends on '}'
}

TEST_CASE("scan_block end to end on the worked example") {
  scan_carry carry;
  block_masks m = scan_block((const uint8_t *)kExampleBlock, carry, true, true);
  CHECK(row_from_mask(m.final_structural) ==
        "1_1__________1_1_1__11______1_1__1_1_____1_1_____11_1__11______1");
  CHECK(carry.odd_backslash == 0);
  CHECK(carry.in_string == 0);
  CHECK(carry.prev_separator == 1);
}

TEST_CASE("backslash runs spanning a block boundary") {
  // one backslash at the end of a block escapes the first byte of the next
  uint64_t carry = 0;
  uint64_t od = odd_backslash_ends(1ULL << 63, 0, &carry);
  CHECK(od == 0);
  CHECK(carry == 1);
  od = odd_backslash_ends(0, carry, &carry);
  CHECK(od == 1); // bit 0 of the next block is an odd-run end
  CHECK(carry == 0);

  // a two-backslash run split across the boundary escapes nothing
  carry = 0;
  od = odd_backslash_ends(1ULL << 63, 0, &carry);
  CHECK(carry == 1);
  od = odd_backslash_ends(1, carry, &carry);
  CHECK(od == 0);
  CHECK(carry == 0);

  // a three-backslash run split 1+2: ends odd, escapes byte 2
  carry = 0;
  od = odd_backslash_ends(1ULL << 63, 0, &carry);
  CHECK(carry == 1);
  od = odd_backslash_ends(0b11, carry, &carry);
  CHECK(od == 0b100);
  CHECK(carry == 0);
}

TEST_CASE("string mask carries across blocks") {
  // a string opened in one block covers the whole next block
  uint64_t carry = 0;
  uint64_t m1 = string_mask(1ULL << 62, 0, true, &carry);
  CHECK(carry == 1);
  uint64_t m2 = string_mask(0, carry, true, &carry);
  CHECK(m2 == ~0ULL);
  CHECK(carry == 1);
  uint64_t m3 = string_mask(1, carry, true, &carry);
  CHECK(m3 == 0); // the closing quote itself is outside the mask
  CHECK(carry == 0);
  CHECK((m1 >> 62 & 1) == 1);
}

TEST_CASE("extract_bits matches naive extraction") {
  std::mt19937_64 rng(7);
  uint32_t fast[64 + 8], naive[64];
  for (int i = 0; i < 100000; i++) {
    uint64_t mask = rng() & rng(); // skewed sparse
    if (i % 3 == 0)
      mask = rng();
    uint32_t base = (uint32_t)(rng() & 0xFFFF) * 64;
    uint32_t *fe = extract_bits(mask, base, fast);
    uint32_t *ne = extract_bits_naive(mask, base, naive);
    REQUIRE(fe - fast == ne - naive);
    CHECK(std::memcmp(fast, naive, (size_t)(ne - naive) * 4) == 0);
  }
  // dense case: all 64 bits set exercises the full-group path
  uint32_t *fe = extract_bits(~0ULL, 0, fast);
  CHECK(fe - fast == 64);
  for (int i = 0; i < 64; i++)
    CHECK(fast[i] == (uint32_t)i);
}
