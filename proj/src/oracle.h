#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace jt {

// Simple nested value tree for traversal equivalence checks. Object
// members keep source order; duplicate keys are kept.
struct oracle_value {
  enum class kind { null_v, bool_v, int_v, float_v, string_v, array_v, object_v };
  kind k = kind::null_v;
  bool boolean = false;
  int64_t integer = 0;
  double number = 0;
  std::string string;
  std::vector<oracle_value> items;
  std::vector<std::pair<std::string, oracle_value>> members;
};

struct oracle_verdict {
  bool accepted = false;
  long long error_offset = -1;
  std::unique_ptr<oracle_value> root; // only when tree building is on
};

// Character-at-a-time recursive descent with the same policy decisions as
// the main pipeline (root scalars allowed, depth 1024, exact integers in
// [-2^63, 2^63), floats rejected on binary64 overflow). `build_tree`
// false skips tree allocation for fuzzing and throughput baselines.
oracle_verdict oracle_parse(const uint8_t *data, size_t len,
                            bool build_tree = true);

// Table-driven DFA over the UTF-8 byte classes.
bool oracle_utf8_valid(const uint8_t *data, size_t len);

// Per-byte scan emitting structural and pseudo-structural offsets,
// opening quotes included.
std::vector<uint32_t> oracle_structural_scan(const uint8_t *data, size_t len);

// Correctly rounded decimal-to-binary64 at high precision; the yardstick
// for number parsing accuracy. `text` is a full JSON number token.
// Returns false when the value overflows binary64.
bool oracle_to_double(const char *text, size_t len, double *out);

} // namespace jt
