#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "numbers.h"
#include "oracle.h"

using namespace jt;

namespace {

number_result parse(const std::string &s) {
  std::string padded = s + std::string(64, '\0');
  return parse_number((const uint8_t *)padded.data(), s.size(), 0);
}

void check_integer(const std::string &s, int64_t expect) {
  CAPTURE(s);
  number_result r = parse(s);
  REQUIRE(r.ok);
  REQUIRE(r.value.is_integer);
  CHECK(r.value.integer_value == expect);
  CHECK(r.end_offset == s.size());
}

void check_double(const std::string &s, double expect) {
  CAPTURE(s);
  number_result r = parse(s);
  REQUIRE(r.ok);
  REQUIRE_FALSE(r.value.is_integer);
  CHECK(r.value.float_value == expect);
}

void check_rejected(const std::string &s) {
  CAPTURE(s);
  CHECK_FALSE(parse(s).ok);
}

} // namespace

TEST_CASE("eight digit helpers") {
  CHECK(is_eight_digits((const uint8_t *)"12345678"));
  CHECK(is_eight_digits((const uint8_t *)"00000000"));
  CHECK(is_eight_digits((const uint8_t *)"99999999"));
  CHECK_FALSE(is_eight_digits((const uint8_t *)"1234567a"));
  CHECK_FALSE(is_eight_digits((const uint8_t *)"1234567/"));
  CHECK_FALSE(is_eight_digits((const uint8_t *)"1234567:"));
  CHECK_FALSE(is_eight_digits((const uint8_t *)" 2345678"));
  CHECK(parse_eight_digits((const uint8_t *)"12345678") == 12345678);
  CHECK(parse_eight_digits((const uint8_t *)"00000000") == 0);
  CHECK(parse_eight_digits((const uint8_t *)"99999999") == 99999999);
  CHECK(parse_eight_digits((const uint8_t *)"00000001") == 1);
  // every byte position weighted correctly
  for (int pos = 0; pos < 8; pos++) {
    char buf[9] = "00000000";
    buf[pos] = '7';
    uint32_t expect = 7;
    for (int k = pos + 1; k < 8; k++)
      expect *= 10;
    CHECK(parse_eight_digits((const uint8_t *)buf) == expect);
  }
}

TEST_CASE("integer boundaries") {
  check_integer("0", 0);
  check_integer("-0", 0);
  check_integer("1", 1);
  check_integer("-1", -1);
  check_integer("9223372036854775807", INT64_MAX);
  check_integer("-9223372036854775808", INT64_MIN);
  check_integer("-9223372036854775807", INT64_MIN + 1);
  check_rejected("9223372036854775808");
  check_rejected("-9223372036854775809");
  check_rejected("18446744073709551615");
  check_rejected("99999999999999999999");
}

TEST_CASE("grammar rejections") {
  for (const char *bad : {"012", "1E+", ".1", "0e+", "1.", "+1", "0x1", "NaN",
                          "Infinity", "-", "--1", "1e", "1e-", "01.5", "1..2",
                          "1.2.3", "1e2e3", "", " 1"})
    check_rejected(bad);
  // terminator rule: a number must end at whitespace, a structural
  // character or the end of input
  check_rejected("1a");
  check_rejected("1\"");
  CHECK(parse("1 x").end_offset == 1); // only the number token is consumed
  CHECK(parse("1,2").ok);
  CHECK(parse("1]").ok);
  CHECK(parse("1}").ok);
  CHECK(parse("1\t").ok);
}

TEST_CASE("float values, exact expectations") {
  check_double("0.5", 0.5);
  check_double("-0.5", -0.5);
  check_double("1e0", 1.0);
  check_double("1E2", 100.0);
  check_double("1e+2", 100.0);
  check_double("1e-2", 0.01);
  check_double("0.0", 0.0);
  check_double("-0.0", -0.0);
  check_double("2.5e2", 250.0);
  check_double("1e22", 1e22);
  check_double("1e-22", 1e-22);
  check_double("0e+1", 0.0);
  check_double("123456789.123456789", 123456789.123456789);
  check_double("1.7976931348623157e308", 1.7976931348623157e308);
  check_double("5e-324", 5e-324);     // smallest subnormal
  check_double("2.2250738585072011e-308", 2.2250738585072011e-308);
  check_double("1e-400", 0.0);        // underflow rounds to zero
  check_double("-1e-400", -0.0);
  check_rejected("1e309");            // binary64 overflow
  check_rejected("-1e309");
  check_rejected("1e99999999999");
  check_double("1e-99999999999", 0.0);
}

TEST_CASE("long digit strings fall back correctly") {
  // 19 significant digits plus trailing zeros exercise the truncation path
  check_double("10000000000000000000.0", 1e19);
  check_double("0.12345678901234567890123456789", 0.12345678901234567890123456789);
  check_double("3.141592653589793238462643383279", 3.141592653589793);
  std::string many_zeros = "1" + std::string(100, '0') + ".0";
  check_double(many_zeros, 1e100);
  std::string tiny = "0." + std::string(100, '0') + "1";
  check_double(tiny, 1e-101);
}

TEST_CASE("random decimals match the high-precision oracle") {
  std::mt19937_64 rng(23);
  char buf[64];
  for (int i = 0; i < 200000; i++) {
    int int_digits = 1 + (int)(rng() % 18);
    int frac_digits = 1 + (int)(rng() % 18);
    int exp = (int)(rng() % 601) - 300;
    char *p = buf;
    if (rng() & 1)
      *p++ = '-';
    *p++ = (char)('1' + rng() % 9);
    for (int k = 1; k < int_digits; k++)
      *p++ = (char)('0' + rng() % 10);
    *p++ = '.';
    for (int k = 0; k < frac_digits; k++)
      *p++ = (char)('0' + rng() % 10);
    p += std::snprintf(p, 8, "e%d", exp);
    std::string s(buf, p);
    double expect;
    bool oracle_ok = oracle_to_double(s.data(), s.size(), &expect);
    number_result r = parse(s);
    CAPTURE(s);
    REQUIRE(r.ok == oracle_ok);
    if (r.ok)
      CHECK(r.value.float_value == expect);
  }
}
