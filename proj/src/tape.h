#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.h"
#include "indexer.h"

namespace jt {

// Tape word layout: type tag in bits 56-63, 56-bit payload below.
// 'l' and 'd' words are followed by one raw 64-bit value word.
namespace tape_tag {
constexpr uint8_t root = 'r';
constexpr uint8_t object_open = '{';
constexpr uint8_t object_close = '}';
constexpr uint8_t array_open = '[';
constexpr uint8_t array_close = ']';
constexpr uint8_t string = '"';
constexpr uint8_t int64 = 'l';
constexpr uint8_t float64 = 'd';
constexpr uint8_t true_atom = 't';
constexpr uint8_t false_atom = 'f';
constexpr uint8_t null_atom = 'n';
} // namespace tape_tag

constexpr uint64_t kPayloadMask = (1ULL << 56) - 1;

inline uint64_t tape_word(uint8_t tag, uint64_t payload) {
  return ((uint64_t)tag << 56) | (payload & kPayloadMask);
}
inline uint8_t word_tag(uint64_t word) { return (uint8_t)(word >> 56); }
inline uint64_t word_payload(uint64_t word) { return word & kPayloadMask; }

// allocator that leaves resize-grown elements default-initialized, so the
// big tape and string buffers are not zero-filled before being written
template <class T> struct uninit_allocator : std::allocator<T> {
  template <class U> struct rebind {
    using other = uninit_allocator<U>;
  };
  template <class U> void construct(U *) noexcept {}
  template <class U, class... Args> void construct(U *p, Args &&...args) {
    ::new (static_cast<void *>(p)) U(std::forward<Args>(args)...);
  }
};
template <class T> using raw_vector = std::vector<T, uninit_allocator<T>>;

struct parsed_document {
  raw_vector<uint64_t> tape;
  // length-prefixed normalized strings: 32-bit length, then UTF-8 bytes
  raw_vector<uint8_t> strings;
  size_t source_length = 0;

  bool operator==(const parsed_document &other) const {
    return tape == other.tape && strings == other.strings;
  }
};

// Stage 2: walk the structural index, validate the grammar and emit the
// tape plus string buffer.
parse_result build_tape(const padded_input &input, const structural_index &index,
                        parsed_document &doc);

// One line per tape word: index, tag and a payload annotation; numbers
// render with shortest round-trip formatting.
std::string tape_dump(const parsed_document &doc);

// Convenience: pad, index and build in one call.
parse_result parse(const uint8_t *data, size_t len, const scan_config &config,
                   parsed_document &doc);

} // namespace jt
