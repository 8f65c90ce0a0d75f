#include "stats.h"

namespace jt {

corpus_stats compute_stats(const parsed_document &doc, const uint8_t *source,
                           size_t source_len, uint64_t structural_count) {
  corpus_stats s;
  s.bytes = source_len;
  s.structurals = structural_count;
  if (structural_count != 0)
    s.bytes_per_structural = (double)source_len / (double)structural_count;
  for (size_t i = 0; i < source_len; i++)
    s.non_ascii_bytes += source[i] >= 0x80;
  for (size_t i = 0; i < doc.tape.size(); i++) {
    switch (word_tag(doc.tape[i])) {
    case tape_tag::int64:
      s.integers++;
      i++;
      break;
    case tape_tag::float64:
      s.floats++;
      i++;
      break;
    case tape_tag::string:
      s.strings++;
      break;
    case tape_tag::object_open:
      s.objects++;
      break;
    case tape_tag::array_open:
      s.arrays++;
      break;
    case tape_tag::null_atom:
      s.nulls++;
      break;
    case tape_tag::true_atom:
      s.trues++;
      break;
    case tape_tag::false_atom:
      s.falses++;
      break;
    default:
      break;
    }
  }
  return s;
}

} // namespace jt
