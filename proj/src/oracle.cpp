#include "oracle.h"

#include <mpfr.h>

#include <cstring>
#include <string>

namespace jt {

// ---------------------------------------------------------------------
// UTF-8, one code point at a time

namespace {

struct utf8_shape {
  int continuations; // 0 for ASCII, -1 for an invalid lead
  uint8_t first_lo = 0x80;
  uint8_t first_hi = 0xBF;
};

utf8_shape lead_shape(uint8_t c) {
  if (c < 0x80)
    return {0};
  if (c < 0xC2)
    return {-1}; // continuation byte or overlong C0/C1
  if (c < 0xE0)
    return {1};
  if (c == 0xE0)
    return {2, 0xA0, 0xBF}; // overlong three-byte forms
  if (c == 0xED)
    return {2, 0x80, 0x9F}; // surrogates
  if (c < 0xF0)
    return {2};
  if (c == 0xF0)
    return {3, 0x90, 0xBF}; // overlong four-byte forms
  if (c < 0xF4)
    return {3};
  if (c == 0xF4)
    return {3, 0x80, 0x8F}; // beyond U+10FFFF
  return {-1};
}

} // namespace

bool oracle_utf8_valid(const uint8_t *data, size_t len) {
  size_t i = 0;
  while (i < len) {
    utf8_shape s = lead_shape(data[i]);
    if (s.continuations < 0 || i + s.continuations >= len)
      return false;
    for (int k = 1; k <= s.continuations; k++) {
      uint8_t lo = k == 1 ? s.first_lo : 0x80;
      uint8_t hi = k == 1 ? s.first_hi : 0xBF;
      if (data[i + k] < lo || data[i + k] > hi)
        return false;
    }
    i += 1 + s.continuations;
  }
  return true;
}

// ---------------------------------------------------------------------
// Structural scan, one byte at a time

namespace {

inline bool scan_ws(uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

inline bool scan_structural(uint8_t c) {
  return c == '{' || c == '}' || c == '[' || c == ']' || c == ':' || c == ',';
}

} // namespace

std::vector<uint32_t> oracle_structural_scan(const uint8_t *data, size_t len) {
  std::vector<uint32_t> out;
  size_t bs_run = 0;      // consecutive backslashes just before this byte
  bool in_string = false; // includes the opening quote, not the closing one
  bool prev_separator = true;
  for (size_t i = 0; i < len; i++) {
    uint8_t c = data[i];
    bool escaped = (bs_run & 1) != 0;
    bs_run = c == '\\' ? bs_run + 1 : 0;
    bool quote = c == '"' && !escaped;
    if (quote)
      in_string = !in_string;
    // after the toggle, in_string covers the opening quote and the string
    // body but not the closing quote, matching the prefix-XOR string mask
    bool s = scan_structural(c);
    bool w = scan_ws(c);
    bool structural = (s && !in_string) || (quote && in_string) ||
                      (prev_separator && !w && !in_string && !quote);
    if (structural)
      out.push_back((uint32_t)i);
    prev_separator = (s && !in_string) || quote || w;
  }
  return out;
}

// ---------------------------------------------------------------------
// Correctly rounded decimal conversion

bool oracle_to_double(const char *text, size_t len, double *out) {
  std::string token(text, len);
  mpfr_exp_t old_emin = mpfr_get_emin();
  mpfr_exp_t old_emax = mpfr_get_emax();
  mpfr_set_emin(-1073); // binary64 range, MPFR's [0.5, 1) significand
  mpfr_set_emax(1024);
  mpfr_t x;
  mpfr_init2(x, 53);
  char *end = nullptr;
  int t = mpfr_strtofr(x, token.c_str(), &end, 10, MPFR_RNDN);
  bool consumed = end == token.c_str() + token.size();
  t = mpfr_check_range(x, t, MPFR_RNDN);
  t = mpfr_subnormalize(x, t, MPFR_RNDN);
  double d = mpfr_get_d(x, MPFR_RNDN);
  bool inf = mpfr_inf_p(x) != 0;
  mpfr_clear(x);
  mpfr_set_emin(old_emin);
  mpfr_set_emax(old_emax);
  if (!consumed || inf)
    return false;
  *out = d;
  return true;
}

// ---------------------------------------------------------------------
// Recursive descent

namespace {

constexpr size_t kMaxDepth = 1024;

class descent {
public:
  descent(const uint8_t *data, size_t len, bool build_tree)
      : buf_(data), len_(len), build_tree_(build_tree) {}

  oracle_verdict run() {
    oracle_verdict v;
    if (!oracle_utf8_valid(buf_, len_)) {
      // report the offset of the offending sequence's lead byte
      size_t i = 0;
      while (i < len_) {
        utf8_shape s = lead_shape(buf_[i]);
        if (s.continuations < 0 || i + (size_t)s.continuations >= len_)
          break;
        bool seq_ok = true;
        for (int k = 1; k <= s.continuations && seq_ok; k++) {
          uint8_t lo = k == 1 ? s.first_lo : (uint8_t)0x80;
          uint8_t hi = k == 1 ? s.first_hi : (uint8_t)0xBF;
          seq_ok = buf_[i + k] >= lo && buf_[i + k] <= hi;
        }
        if (!seq_ok)
          break;
        i += 1 + (size_t)s.continuations;
      }
      v.error_offset = (long long)i;
      return v;
    }
    auto root = std::make_unique<oracle_value>();
    skip_ws();
    if (!parse_value(*root, 0) || (skip_ws(), pos_ != len_)) {
      v.error_offset = (long long)pos_;
      return v;
    }
    v.accepted = true;
    if (build_tree_)
      v.root = std::move(root);
    return v;
  }

private:
  bool at_end() const { return pos_ >= len_; }
  uint8_t peek() const { return buf_[pos_]; }

  void skip_ws() {
    while (!at_end() && scan_ws(peek()))
      pos_++;
  }

  bool parse_value(oracle_value &out, size_t depth);
  bool parse_object(oracle_value &out, size_t depth);
  bool parse_array(oracle_value &out, size_t depth);
  bool parse_string(std::string &out);
  bool parse_number(oracle_value &out);
  bool parse_literal(const char *text, size_t n) {
    if (pos_ + n > len_ || std::memcmp(buf_ + pos_, text, n) != 0)
      return false;
    pos_ += n;
    return true;
  }

  const uint8_t *buf_;
  size_t len_;
  bool build_tree_;
  size_t pos_ = 0;
};

bool descent::parse_value(oracle_value &out, size_t depth) {
  if (at_end())
    return false;
  switch (peek()) {
  case '{':
    return parse_object(out, depth);
  case '[':
    return parse_array(out, depth);
  case '"':
    out.k = oracle_value::kind::string_v;
    return parse_string(out.string);
  case 't':
    out.k = oracle_value::kind::bool_v;
    out.boolean = true;
    return parse_literal("true", 4);
  case 'f':
    out.k = oracle_value::kind::bool_v;
    out.boolean = false;
    return parse_literal("false", 5);
  case 'n':
    out.k = oracle_value::kind::null_v;
    return parse_literal("null", 4);
  default:
    return parse_number(out);
  }
}

bool descent::parse_object(oracle_value &out, size_t depth) {
  if (depth >= kMaxDepth)
    return false;
  out.k = oracle_value::kind::object_v;
  pos_++; // '{'
  skip_ws();
  if (!at_end() && peek() == '}') {
    pos_++;
    return true;
  }
  for (;;) {
    skip_ws();
    if (at_end() || peek() != '"')
      return false;
    std::string key;
    if (!parse_string(key))
      return false;
    skip_ws();
    if (at_end() || peek() != ':')
      return false;
    pos_++;
    skip_ws();
    oracle_value member;
    if (!parse_value(member, depth + 1))
      return false;
    if (build_tree_)
      out.members.emplace_back(std::move(key), std::move(member));
    skip_ws();
    if (at_end())
      return false;
    if (peek() == '}') {
      pos_++;
      return true;
    }
    if (peek() != ',')
      return false;
    pos_++;
  }
}

bool descent::parse_array(oracle_value &out, size_t depth) {
  if (depth >= kMaxDepth)
    return false;
  out.k = oracle_value::kind::array_v;
  pos_++; // '['
  skip_ws();
  if (!at_end() && peek() == ']') {
    pos_++;
    return true;
  }
  for (;;) {
    skip_ws();
    oracle_value item;
    if (!parse_value(item, depth + 1))
      return false;
    if (build_tree_)
      out.items.push_back(std::move(item));
    skip_ws();
    if (at_end())
      return false;
    if (peek() == ']') {
      pos_++;
      return true;
    }
    if (peek() != ',')
      return false;
    pos_++;
  }
}

bool descent::parse_string(std::string &out) {
  pos_++; // opening quote
  for (;;) {
    if (at_end())
      return false;
    uint8_t c = buf_[pos_];
    if (c == '"') {
      pos_++;
      return true;
    }
    if (c < 0x20)
      return false;
    if (c != '\\') {
      out.push_back((char)c);
      pos_++;
      continue;
    }
    if (pos_ + 1 >= len_)
      return false;
    uint8_t esc = buf_[pos_ + 1];
    pos_ += 2;
    switch (esc) {
    case '"':
      out.push_back('"');
      break;
    case '\\':
      out.push_back('\\');
      break;
    case '/':
      out.push_back('/');
      break;
    case 'b':
      out.push_back('\b');
      break;
    case 'f':
      out.push_back('\f');
      break;
    case 'n':
      out.push_back('\n');
      break;
    case 'r':
      out.push_back('\r');
      break;
    case 't':
      out.push_back('\t');
      break;
    case 'u': {
      auto hex4 = [&](long *v) {
        if (pos_ + 4 > len_)
          return false;
        long r = 0;
        for (int i = 0; i < 4; i++) {
          uint8_t h = buf_[pos_ + i];
          int d;
          if (h >= '0' && h <= '9')
            d = h - '0';
          else if (h >= 'a' && h <= 'f')
            d = h - 'a' + 10;
          else if (h >= 'A' && h <= 'F')
            d = h - 'A' + 10;
          else
            return false;
          r = (r << 4) | d;
        }
        pos_ += 4;
        *v = r;
        return true;
      };
      long cp;
      if (!hex4(&cp))
        return false;
      if (cp >= 0xDC00 && cp <= 0xDFFF)
        return false; // lone low surrogate
      if (cp >= 0xD800 && cp <= 0xDBFF) {
        if (pos_ + 2 > len_ || buf_[pos_] != '\\' || buf_[pos_ + 1] != 'u')
          return false;
        pos_ += 2;
        long low;
        if (!hex4(&low) || low < 0xDC00 || low > 0xDFFF)
          return false;
        cp = 0x10000 + (((cp - 0xD800) << 10) | (low - 0xDC00));
      }
      if (cp < 0x80) {
        out.push_back((char)cp);
      } else if (cp < 0x800) {
        out.push_back((char)(0xC0 | (cp >> 6)));
        out.push_back((char)(0x80 | (cp & 0x3F)));
      } else if (cp < 0x10000) {
        out.push_back((char)(0xE0 | (cp >> 12)));
        out.push_back((char)(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back((char)(0x80 | (cp & 0x3F)));
      } else {
        out.push_back((char)(0xF0 | (cp >> 18)));
        out.push_back((char)(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back((char)(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back((char)(0x80 | (cp & 0x3F)));
      }
      break;
    }
    default:
      return false;
    }
  }
}

bool descent::parse_number(oracle_value &out) {
  size_t start = pos_;
  bool negative = false;
  if (!at_end() && peek() == '-') {
    negative = true;
    pos_++;
  }
  if (at_end() || peek() < '0' || peek() > '9')
    return false;
  if (peek() == '0') {
    pos_++;
    if (!at_end() && peek() >= '0' && peek() <= '9')
      return false; // leading zero
  } else {
    while (!at_end() && peek() >= '0' && peek() <= '9')
      pos_++;
  }
  bool is_float = false;
  if (!at_end() && peek() == '.') {
    is_float = true;
    pos_++;
    size_t frac_start = pos_;
    while (!at_end() && peek() >= '0' && peek() <= '9')
      pos_++;
    if (pos_ == frac_start)
      return false;
  }
  if (!at_end() && (peek() == 'e' || peek() == 'E')) {
    is_float = true;
    pos_++;
    if (!at_end() && (peek() == '+' || peek() == '-'))
      pos_++;
    size_t exp_start = pos_;
    while (!at_end() && peek() >= '0' && peek() <= '9')
      pos_++;
    if (pos_ == exp_start)
      return false;
  }
  if (is_float) {
    out.k = oracle_value::kind::float_v;
    return oracle_to_double(reinterpret_cast<const char *>(buf_ + start),
                            pos_ - start, &out.number);
  }
  uint64_t mant = 0;
  for (size_t i = start + (negative ? 1 : 0); i < pos_; i++) {
    uint64_t d = buf_[i] - '0';
    if (mant > (UINT64_MAX - d) / 10)
      return false; // far outside [-2^63, 2^63)
    mant = mant * 10 + d;
  }
  uint64_t limit = negative ? 0x8000000000000000ULL : 0x7FFFFFFFFFFFFFFFULL;
  if (mant > limit)
    return false;
  out.k = oracle_value::kind::int_v;
  out.integer = negative ? (int64_t)(0ULL - mant) : (int64_t)mant;
  return true;
}

} // namespace

oracle_verdict oracle_parse(const uint8_t *data, size_t len, bool build_tree) {
  return descent(data, len, build_tree).run();
}

} // namespace jt
