#include "numbers.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>

namespace jt {

namespace {

inline bool is_digit(uint8_t c) { return c >= '0' && c <= '9'; }

inline bool is_number_terminator(uint8_t c) {
  switch (c) {
  case ' ':
  case '\t':
  case '\n':
  case '\r':
  case ',':
  case ':':
  case '[':
  case ']':
  case '{':
  case '}':
    return true;
  default:
    return false;
  }
}

// exactly representable powers of ten
const double kPow10[23] = {1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,
                           1e8,  1e9,  1e10, 1e11, 1e12, 1e13, 1e14, 1e15,
                           1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};

bool slow_float(const uint8_t *begin, size_t n, double *out) {
  std::string token(reinterpret_cast<const char *>(begin), n);
  errno = 0;
  char *end = nullptr;
  double d = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size())
    return false;
  if (errno == ERANGE && (d == HUGE_VAL || d == -HUGE_VAL))
    return false; // overflow; underflow rounds toward zero and is accepted
  *out = d;
  return true;
}

} // namespace

number_result parse_number(const uint8_t *buf, size_t len, size_t offset) {
  size_t p = offset;
  bool negative = false;
  if (p < len && buf[p] == '-') {
    negative = true;
    p++;
  }
  if (p >= len || !is_digit(buf[p]))
    return {};

  uint64_t mant = 0;
  int digits = 0;
  bool truncated = false;
  long long exp10 = 0;

  auto add_digit = [&](uint8_t d, bool fractional) {
    if (digits < 19) {
      mant = mant * 10 + d;
      digits++;
      if (fractional)
        exp10--;
    } else {
      if (d != 0 || !fractional)
        truncated = true;
      if (!fractional)
        exp10++; // dropped integer digit still scales the value
    }
  };

  if (buf[p] == '0') {
    p++;
    if (p < len && is_digit(buf[p]))
      return {}; // leading zero
  } else {
    while (p < len && is_digit(buf[p])) {
      // eight-digit chunks; padding past len is NUL so the test is safe
      if (digits + 8 <= 19 && is_eight_digits(buf + p)) {
        mant = mant * 100000000 + parse_eight_digits(buf + p);
        digits += 8;
        p += 8;
      } else {
        add_digit(buf[p] - '0', false);
        p++;
      }
    }
  }

  bool has_frac = false;
  if (p < len && buf[p] == '.') {
    has_frac = true;
    p++;
    size_t frac_start = p;
    while (p < len && is_digit(buf[p])) {
      if (digits + 8 <= 19 && is_eight_digits(buf + p)) {
        mant = mant * 100000000 + parse_eight_digits(buf + p);
        digits += 8;
        exp10 -= 8;
        p += 8;
      } else {
        add_digit(buf[p] - '0', true);
        p++;
      }
    }
    if (p == frac_start)
      return {}; // bare '.'
  }

  bool has_exp = false;
  if (p < len && (buf[p] == 'e' || buf[p] == 'E')) {
    has_exp = true;
    p++;
    bool exp_neg = false;
    if (p < len && (buf[p] == '+' || buf[p] == '-')) {
      exp_neg = buf[p] == '-';
      p++;
    }
    size_t exp_start = p;
    long long exp_val = 0;
    while (p < len && is_digit(buf[p])) {
      if (exp_val < 1000000000)
        exp_val = exp_val * 10 + (buf[p] - '0');
      p++;
    }
    if (p == exp_start)
      return {}; // exponent without digits
    exp10 += exp_neg ? -exp_val : exp_val;
  }

  if (p < len && !is_number_terminator(buf[p]))
    return {};

  number_result result;
  result.end_offset = p;

  if (!has_frac && !has_exp) {
    if (truncated || exp10 > 0)
      return {}; // more than 19 digits: outside [-2^63, 2^63)
    uint64_t limit = negative ? 0x8000000000000000ULL : 0x7FFFFFFFFFFFFFFFULL;
    if (mant > limit)
      return {};
    result.ok = true;
    result.value.is_integer = true;
    result.value.integer_value =
        negative ? (int64_t)(0ULL - mant) : (int64_t)mant;
    return result;
  }

  double d;
  if (!truncated && mant <= (1ULL << 53) && exp10 >= -22 && exp10 <= 22) {
    d = (double)mant;
    d = exp10 < 0 ? d / kPow10[-exp10] : d * kPow10[exp10];
  } else if (mant == 0 && !truncated) {
    d = 0.0;
  } else if (exp10 > 340) {
    return {}; // overflows binary64 even before rounding
  } else if (exp10 < -360 - digits) {
    d = 0.0; // rounds to zero under binary64 semantics
  } else {
    size_t digits_start = offset + (negative ? 1 : 0); // sign re-applied below
    if (!slow_float(buf + digits_start, p - digits_start, &d))
      return {};
  }
  result.ok = true;
  result.value.is_integer = false;
  result.value.float_value = negative ? -d : d;
  return result;
}

} // namespace jt
