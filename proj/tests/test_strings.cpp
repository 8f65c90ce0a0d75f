#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "stringparse.h"

using namespace jt;

namespace {

struct decoded {
  bool ok = false;
  std::string value;
  size_t end_offset = 0;
  long long error_offset = -1;
};

// `literal` is the raw token starting at its opening quote
decoded decode(const std::string &literal, const std::string &suffix = "") {
  std::string buf = literal + suffix + std::string(64, '\0');
  std::string dst(literal.size() + 64, '\0');
  string_result r = parse_string((const uint8_t *)buf.data(),
                                 literal.size() + suffix.size(), 0,
                                 (uint8_t *)dst.data());
  decoded d;
  d.ok = r.ok;
  d.end_offset = r.end_offset;
  d.error_offset = r.error_offset;
  if (r.ok) {
    uint32_t len;
    std::memcpy(&len, dst.data(), 4);
    CHECK(len == r.length);
    d.value = dst.substr(4, len);
  }
  return d;
}

} // namespace

TEST_CASE("plain strings") {
  CHECK(decode("\"\"").value == "");
  CHECK(decode("\"hello\"").value == "hello");
  CHECK(decode("\"hello\"").end_offset == 7);
  std::string long_str = "\"" + std::string(200, 'x') + "\"";
  CHECK(decode(long_str).value == std::string(200, 'x'));
  // multi-byte characters pass through untouched
  CHECK(decode("\"caf\xc3\xa9\"").value == "caf\xc3\xa9");
}

TEST_CASE("all single-character escapes") {
  CHECK(decode(R"("\"")").value == "\"");
  CHECK(decode(R"("\\")").value == "\\");
  CHECK(decode(R"("\/")").value == "/");
  CHECK(decode(R"("\b")").value == "\b");
  CHECK(decode(R"("\f")").value == "\f");
  CHECK(decode(R"("\n")").value == "\n");
  CHECK(decode(R"("\r")").value == "\r");
  CHECK(decode(R"("\t")").value == "\t");
  CHECK(decode(R"("a\nb\tc")").value == "a\nb\tc");
}

TEST_CASE("unicode escapes") {
  CHECK(decode(R"("\u0041")").value == "A");
  CHECK(decode(R"("\u0000")").value == std::string(1, '\0'));
  CHECK(decode(R"("\u00e9")").value == "\xc3\xa9");
  CHECK(decode(R"("\u20ac")").value == "\xe2\x82\xac");
  CHECK(decode(R"("\uFFFD")").value == "\xef\xbf\xbd");
  // surrogate pair for U+1D11E
  CHECK(decode(R"("\uD834\uDD1E")").value == "\xf0\x9d\x84\x9e");
  CHECK(decode(R"("\ud83d\ude00")").value == "\xf0\x9f\x98\x80");
  CHECK(decode(R"("\u0041\u0042")").value == "AB");
}

TEST_CASE("escape rejections") {
  CHECK_FALSE(decode(R"("\q")").ok);
  CHECK_FALSE(decode(R"("\x41")").ok);
  CHECK_FALSE(decode(R"("\u00g0")").ok);
  CHECK_FALSE(decode(R"("\u123")").ok);
  CHECK_FALSE(decode(R"("\")").ok); // escaped quote leaves it unterminated
}

TEST_CASE("lone and mismatched surrogates, exhaustive") {
  char buf[16];
  for (int cp = 0xD800; cp <= 0xDFFF; cp++) {
    std::snprintf(buf, sizeof(buf), "\"\\u%04x\"", cp);
    CAPTURE(buf);
    CHECK_FALSE(decode(buf).ok);
  }
  // high surrogate followed by a non-surrogate escape
  CHECK_FALSE(decode(R"("\uD834\u0041")").ok);
  CHECK_FALSE(decode(R"("\uD834x")").ok);
  // low-then-high order is invalid
  CHECK_FALSE(decode(R"("\uDD1E\uD834")").ok);
}

TEST_CASE("raw control bytes rejected, exhaustive") {
  for (int c = 0; c < 0x20; c++) {
    std::string s = "\"a";
    s += (char)c;
    s += "b\"";
    CAPTURE(c);
    decoded d = decode(s);
    CHECK_FALSE(d.ok);
    CHECK(d.error_offset == 2);
  }
  // 0x7F is not a control character for JSON purposes
  CHECK(decode(std::string("\"a\x7f\"")).value == "a\x7f");
}

TEST_CASE("unterminated strings") {
  CHECK_FALSE(decode("\"abc").ok);
  CHECK_FALSE(decode("\"").ok);
  std::string no_close = "\"" + std::string(100, 'y');
  CHECK_FALSE(decode(no_close).ok);
}

TEST_CASE("chunk boundaries") {
  // quotes, backslashes and controls at every offset around the 32-byte
  // chunk size
  for (size_t pad = 25; pad < 40; pad++) {
    std::string body(pad, 'x');
    CHECK(decode("\"" + body + "\"").value == body);
    CHECK(decode("\"" + body + "\\n\"").value == body + "\n");
    std::string with_ctrl = "\"" + body;
    with_ctrl += '\x01';
    with_ctrl += "\"";
    CHECK_FALSE(decode(with_ctrl).ok);
  }
  // the decoder must stop at the close quote even with trailing bytes
  decoded d = decode("\"ab\"", ", 42]");
  CHECK(d.value == "ab");
  CHECK(d.end_offset == 4);
}
