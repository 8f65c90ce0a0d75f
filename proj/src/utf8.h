#pragma once

#include <cstddef>
#include <cstdint>

namespace jt {

// Whole-input UTF-8 validation. One pass, errors accumulate and are
// checked once at the end; no offsets on this path.
bool validate_utf8(const uint8_t *data, size_t len);

// Diagnostic second pass: byte offset of the first invalid sequence, or
// -1 when the input is valid.
long long utf8_error_offset(const uint8_t *data, size_t len);

// Continuation-count check over a vector of sequence-length classes
// (1 ASCII, 2/3/4 lead bytes, 0 continuation). Exposed for tests.
bool sequence_length_check(const uint8_t *classes, size_t n);

} // namespace jt
