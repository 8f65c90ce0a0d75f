#include "generate.h"

#include <charconv>
#include <cmath>
#include <random>

namespace jt {

namespace {

using rng_t = std::mt19937_64;

void append_double(std::string &out, double d) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  (void)ec;
  out.append(buf, p);
  // keep the token a float token even for integral values
  if (std::string_view(buf, p - buf).find_first_of(".eE") ==
      std::string_view::npos)
    out += ".0";
}

void append_int(std::string &out, int64_t v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, p);
}

double random_double(rng_t &rng) {
  double mant = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  int exp = std::uniform_int_distribution<int>(-12, 12)(rng);
  return mant * std::pow(10.0, exp);
}

// code points worth exercising: ASCII, two-, three- and four-byte forms
uint32_t random_code_point(rng_t &rng) {
  switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
  case 0:
    return std::uniform_int_distribution<uint32_t>(0x80, 0x7FF)(rng);
  case 1: {
    // skip the surrogate block
    uint32_t cp = std::uniform_int_distribution<uint32_t>(0x800, 0xF7FF)(rng);
    return cp >= 0xD800 ? cp + 0x800 : cp;
  }
  case 2:
    return std::uniform_int_distribution<uint32_t>(0x10000, 0x10FFFF)(rng);
  default:
    return std::uniform_int_distribution<uint32_t>(0x20, 0x7E)(rng);
  }
}

void append_utf8(std::string &out, uint32_t cp) {
  if (cp < 0x80) {
    out += (char)cp;
  } else if (cp < 0x800) {
    out += (char)(0xC0 | (cp >> 6));
    out += (char)(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += (char)(0xE0 | (cp >> 12));
    out += (char)(0x80 | ((cp >> 6) & 0x3F));
    out += (char)(0x80 | (cp & 0x3F));
  } else {
    out += (char)(0xF0 | (cp >> 18));
    out += (char)(0x80 | ((cp >> 12) & 0x3F));
    out += (char)(0x80 | ((cp >> 6) & 0x3F));
    out += (char)(0x80 | (cp & 0x3F));
  }
}

void append_hex4(std::string &out, uint32_t v) {
  static const char digits[] = "0123456789abcdef";
  out += "\\u";
  for (int shift = 12; shift >= 0; shift -= 4)
    out += digits[(v >> shift) & 0xF];
}

// JSON string literal; non-ASCII goes out raw or as \u escapes
void append_string(std::string &out, rng_t &rng, size_t max_len,
                   bool escape_non_ascii) {
  out += '"';
  size_t n = std::uniform_int_distribution<size_t>(0, max_len)(rng);
  for (size_t i = 0; i < n; i++) {
    uint32_t cp = random_code_point(rng);
    if (cp == '"' || cp == '\\') {
      out += '\\';
      out += (char)cp;
    } else if (cp < 0x20) {
      append_hex4(out, cp);
    } else if (cp < 0x80) {
      out += (char)cp;
    } else if (!escape_non_ascii) {
      append_utf8(out, cp);
    } else if (cp < 0x10000) {
      append_hex4(out, cp);
    } else {
      append_hex4(out, 0xD800 + ((cp - 0x10000) >> 10));
      append_hex4(out, 0xDC00 + ((cp - 0x10000) & 0x3FF));
    }
  }
  out += '"';
}

void append_key(std::string &out, rng_t &rng) {
  static const char *const pool[] = {"id",    "name",  "value", "items",
                                     "count", "flags", "data",  "meta"};
  out += '"';
  out += pool[std::uniform_int_distribution<size_t>(0, 7)(rng)];
  append_int(out, (int64_t)std::uniform_int_distribution<int>(0, 99)(rng));
  out += '"';
}

void indent(std::string &out, int depth) {
  out += '\n';
  out.append((size_t)depth * 2, ' ');
}

void random_value(std::string &out, rng_t &rng, int depth) {
  int pick = std::uniform_int_distribution<int>(0, depth >= 6 ? 5 : 7)(rng);
  switch (pick) {
  case 0:
    out += "null";
    break;
  case 1:
    out += "true";
    break;
  case 2:
    out += "false";
    break;
  case 3:
    append_int(out, (int64_t)rng());
    break;
  case 4:
    append_double(out, random_double(rng));
    break;
  case 5:
    append_string(out, rng, 24, false);
    break;
  case 6: { // array
    size_t n = std::uniform_int_distribution<size_t>(0, 6)(rng);
    out += '[';
    for (size_t i = 0; i < n; i++) {
      if (i)
        out += ',';
      indent(out, depth + 1);
      random_value(out, rng, depth + 1);
    }
    if (n)
      indent(out, depth);
    out += ']';
    break;
  }
  default: { // object
    size_t n = std::uniform_int_distribution<size_t>(0, 6)(rng);
    out += '{';
    for (size_t i = 0; i < n; i++) {
      if (i)
        out += ',';
      indent(out, depth + 1);
      if (i == 0 && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        out += '"';
        out += kPlantedKey;
        out += "\": ";
        append_int(out,
                   (int64_t)std::uniform_int_distribution<int>(0, 7)(rng));
        continue;
      }
      append_key(out, rng);
      out += ": ";
      random_value(out, rng, depth + 1);
    }
    if (n)
      indent(out, depth);
    out += '}';
    break;
  }
  }
}

std::string generate_mixed(uint64_t target_bytes, uint64_t seed) {
  rng_t rng(seed);
  std::string out = "[";
  bool first = true;
  while (out.size() < target_bytes) {
    if (!first)
      out += ',';
    first = false;
    indent(out, 1);
    random_value(out, rng, 1);
  }
  out += "\n]\n";
  return out;
}

} // namespace

std::string generate_corpus(corpus_kind kind, uint64_t size, uint64_t seed) {
  if (size == 0)
    return "[]";
  rng_t rng(seed);
  switch (kind) {
  case corpus_kind::numbers: {
    std::string out = "[";
    for (uint64_t i = 0; i < size; i++) {
      if (i)
        out += ',';
      out += '\n';
      append_double(out, random_double(rng));
    }
    out += "\n]\n";
    return out;
  }
  case corpus_kind::escaped_strings: {
    std::string out = "[";
    for (uint64_t i = 0; i < size; i++) {
      if (i)
        out += ',';
      out += '\n';
      append_string(out, rng, 48, true);
    }
    out += "\n]\n";
    return out;
  }
  case corpus_kind::random_mixed:
    return generate_mixed(size, seed);
  case corpus_kind::large:
  default:
    return generate_mixed(size < (64ULL << 20) ? (64ULL << 20) : size, seed);
  }
}

} // namespace jt
