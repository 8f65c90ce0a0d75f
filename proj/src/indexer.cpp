#include "indexer.h"

#include "utf8.h"

namespace jt {

const char *error_name(error_code code) {
  switch (code) {
  case error_code::ok:
    return "OK";
  case error_code::utf8_error:
    return "UTF8_ERROR";
  case error_code::string_error:
    return "STRING_ERROR";
  case error_code::number_error:
    return "NUMBER_ERROR";
  case error_code::tape_error:
    return "TAPE_ERROR";
  case error_code::depth_error:
    return "DEPTH_ERROR";
  case error_code::capacity:
    return "CAPACITY";
  case error_code::empty:
    return "EMPTY";
  }
  return "UNKNOWN";
}

parse_result build_structural_index(const padded_input &input,
                                    const scan_config &config,
                                    structural_index &out) {
  size_t len = input.size();
  if (len >= (1ULL << 32))
    return {error_code::capacity, -1};
  if (!validate_utf8(input.data(), len))
    return {error_code::utf8_error, utf8_error_offset(input.data(), len)};

  // worst case every byte is structural, plus slack for over-extraction
  out.storage.resize(len + 1 + 8);
  uint32_t *dst = out.storage.data();

  scan_carry carry;
  size_t blocks = (len + 63) / 64;
  for (size_t b = 0; b < blocks; b++) {
    block_masks m = scan_block(input.data() + b * 64, carry, config.use_clmul,
                               config.vector_classify);
    uint64_t mask = m.final_structural;
    if (b == blocks - 1 && (len % 64) != 0)
      mask &= ((uint64_t)1 << (len % 64)) - 1; // drop bits in the padding
    uint32_t base = (uint32_t)(b * 64);
    dst = config.fast_extract ? extract_bits(mask, base, dst)
                              : extract_bits_naive(mask, base, dst);
  }
  out.count = (size_t)(dst - out.storage.data());
  return {};
}

size_t minify_pass(const padded_input &input, uint8_t *dst) {
  size_t len = input.size();
  uint8_t *out = dst;
  scan_carry carry;
  size_t blocks = (len + 63) / 64;
  for (size_t b = 0; b < blocks; b++) {
    const uint8_t *block = input.data() + b * 64;
    block_masks m = scan_block(block, carry, true, true);
    uint64_t keep = m.in_string | m.unescaped_quote | ~m.whitespace;
    if (b == blocks - 1 && (len % 64) != 0)
      keep &= ((uint64_t)1 << (len % 64)) - 1;
    while (keep != 0) {
      *out++ = block[trailing_zeroes(keep)];
      keep = clear_lowest_bit(keep);
    }
  }
  return (size_t)(out - dst);
}

} // namespace jt
