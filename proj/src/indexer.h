#pragma once

#include <cstring>
#include <memory>
#include <vector>

#include "blocks.h"
#include "error.h"

namespace jt {

// Input copied into an owned buffer with 64 zero bytes past the end, so
// every 64-byte block read (and every 32-byte string load in stage 2) is
// in bounds.
class padded_input {
public:
  static constexpr size_t padding = 64;

  padded_input() = default;
  padded_input(const uint8_t *data, size_t len) : len_(len) {
    buf_.reset(new uint8_t[len + padding]);
    if (len != 0)
      std::memcpy(buf_.get(), data, len);
    std::memset(buf_.get() + len, 0, padding);
  }
  static padded_input from(const char *data, size_t len) {
    return padded_input(reinterpret_cast<const uint8_t *>(data), len);
  }

  const uint8_t *data() const { return buf_.get(); }
  size_t size() const { return len_; }

private:
  std::unique_ptr<uint8_t[]> buf_;
  size_t len_ = 0;
};

// Runtime-selectable stage-1 configurations; all must produce identical
// indexes.
struct scan_config {
  bool use_clmul = true;
  bool fast_extract = true;
  bool vector_classify = true;
};

struct structural_index {
  std::vector<uint32_t> storage; // count entries used, 8+ slack reserved
  size_t count = 0;

  const uint32_t *positions() const { return storage.data(); }
};

// Stage 1: UTF-8 validation plus the flattened offsets of all structural
// and pseudo-structural characters.
parse_result build_structural_index(const padded_input &input,
                                    const scan_config &config,
                                    structural_index &out);

// Whitespace removal outside strings, driven by the same block masks.
// `dst` must hold at least input.size() bytes; assumes validated input.
size_t minify_pass(const padded_input &input, uint8_t *dst);

} // namespace jt
