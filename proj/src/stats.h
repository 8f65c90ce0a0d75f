#pragma once

#include <cstddef>
#include <cstdint>

#include "tape.h"

namespace jt {

// Per-document shape counts plus the bytes-per-structural ratio.
struct corpus_stats {
  uint64_t integers = 0;
  uint64_t floats = 0;
  uint64_t strings = 0; // every string node, keys included
  uint64_t non_ascii_bytes = 0;
  uint64_t objects = 0;
  uint64_t arrays = 0;
  uint64_t nulls = 0;
  uint64_t trues = 0;
  uint64_t falses = 0;
  uint64_t structurals = 0; // structural and pseudo-structural characters
  uint64_t bytes = 0;
  double bytes_per_structural = 0;
};

corpus_stats compute_stats(const parsed_document &doc, const uint8_t *source,
                           size_t source_len, uint64_t structural_count);

} // namespace jt
