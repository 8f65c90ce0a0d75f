#pragma once

#include <cstdint>

namespace jt {

enum class error_code : int {
  ok = 0,
  utf8_error,
  string_error,
  number_error,
  tape_error,
  depth_error,
  capacity,
  empty,
};

struct parse_result {
  error_code code = error_code::ok;
  long long offset = -1; // byte offset when available, otherwise -1

  bool ok() const { return code == error_code::ok; }
};

const char *error_name(error_code code);

} // namespace jt
