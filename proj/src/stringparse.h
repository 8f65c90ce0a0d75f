#pragma once

#include <cstddef>
#include <cstdint>

namespace jt {

struct string_result {
  bool ok = false;
  uint32_t length = 0;    // payload bytes written past the length prefix
  size_t end_offset = 0;  // one past the closing quote on success
  long long error_offset = -1;
};

// Validate and normalize the string whose opening quote sits at `offset`.
// Writes a 32-bit length prefix followed by the decoded UTF-8 payload at
// `dst`. Relies on 32 readable bytes past the source end (input padding)
// and 32 writable bytes of slack at `dst`.
string_result parse_string(const uint8_t *buf, size_t len, size_t offset,
                           uint8_t *dst);

} // namespace jt
