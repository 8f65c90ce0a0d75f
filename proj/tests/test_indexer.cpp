#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "helpers.h"
#include "indexer.h"
#include "oracle.h"

using namespace jt;

namespace {

std::vector<uint32_t> index_of(const std::string &s, scan_config cfg = {}) {
  padded_input input = padded_input::from(s.data(), s.size());
  structural_index idx;
  parse_result r = build_structural_index(input, cfg, idx);
  REQUIRE(r.ok());
  return {idx.positions(), idx.positions() + idx.count};
}

std::string random_json_soup(std::mt19937_64 &rng, size_t n) {
  // ASCII soup dense in quotes, backslashes and structurals; kept
  // UTF-8-clean so stage 1 is reached
  static const char pool[] =
      "{}[]:,\"\\\\\"  \t\n0123456789abc tfn-.eE+ \"\\\"{}";
  std::string s(n, ' ');
  for (auto &c : s)
    c = pool[rng() % (sizeof(pool) - 1)];
  return s;
}

} // namespace

TEST_CASE("worked example block indexes equal the expected final row") {
  std::string s(kExampleBlock);
  uint64_t final_mask = mask_from_row(
      "1_1__________1_1_1__11______1_1__1_1_____1_1_____11_1__11______1");
  std::vector<uint32_t> expect;
  for (uint32_t i = 0; i < 64; i++)
    if (final_mask >> i & 1)
      expect.push_back(i);
  CHECK(index_of(s) == expect);
}

TEST_CASE("oracle scan agrees on the worked example") {
  std::string s(kExampleBlock);
  CHECK(oracle_structural_scan((const uint8_t *)s.data(), s.size()) ==
        index_of(s));
}

TEST_CASE("dangling atoms are exposed") {
  // the 'a' in [12 a] becomes pseudo-structural for stage 2 to reject
  std::string s = "[12 a]";
  std::vector<uint32_t> expect = {0, 1, 4, 5};
  CHECK(index_of(s) == expect);
  CHECK(oracle_structural_scan((const uint8_t *)s.data(), s.size()) == expect);
}

TEST_CASE("small handwritten documents") {
  CHECK(index_of("{\"k\":1}") == std::vector<uint32_t>{0, 1, 4, 5, 6});
  CHECK(index_of("") == std::vector<uint32_t>{});
  CHECK(index_of("   \t\n  ") == std::vector<uint32_t>{});
  CHECK(index_of("7") == std::vector<uint32_t>{0});
  CHECK(index_of("  7") == std::vector<uint32_t>{2});
  // opening quotes are kept, closing quotes dropped
  CHECK(index_of("\"ab\"") == std::vector<uint32_t>{0});
  CHECK(index_of("\"a\" \"b\"") == std::vector<uint32_t>{0, 4});
}

TEST_CASE("differential fuzz against the scalar scan") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100000; i++) {
    size_t n = rng() % 4096;
    std::string s = random_json_soup(rng, n);
    auto expect = oracle_structural_scan((const uint8_t *)s.data(), s.size());
    CHECK(index_of(s) == expect);
  }
}

TEST_CASE("dense inputs, every byte structural") {
  for (size_t n : {1, 63, 64, 65, 127, 128, 1000}) {
    std::string s(n, ',');
    auto idx = index_of(s);
    REQUIRE(idx.size() == n);
    for (size_t i = 0; i < n; i++)
      CHECK(idx[i] == (uint32_t)i);
  }
}

TEST_CASE("strings and runs spanning block boundaries") {
  // a string opened near a 64-byte boundary hides structurals in the next
  // block
  std::string s(60, ' ');
  s += "\"abc,]}this spans the boundary and keeps going : [\" ,";
  auto expect = oracle_structural_scan((const uint8_t *)s.data(), s.size());
  CHECK(index_of(s) == expect);

  // backslash run across the boundary
  std::string t(62, ' ');
  t += "\"a\\";
  t += std::string(3, '\\');
  t += "\" : 1";
  CHECK(index_of(t) ==
        oracle_structural_scan((const uint8_t *)t.data(), t.size()));
}

TEST_CASE("all configurations produce identical indexes") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 2000; i++) {
    std::string s = random_json_soup(rng, rng() % 2000);
    auto ref = index_of(s);
    for (int mask = 0; mask < 8; mask++) {
      scan_config cfg;
      cfg.use_clmul = mask & 1;
      cfg.fast_extract = mask & 2;
      cfg.vector_classify = mask & 4;
      CHECK(index_of(s, cfg) == ref);
    }
  }
}

TEST_CASE("invalid UTF-8 is rejected before indexing") {
  std::string s = "[1, \"\xb1\x87\"]";
  padded_input input = padded_input::from(s.data(), s.size());
  structural_index idx;
  parse_result r = build_structural_index(input, {}, idx);
  CHECK(r.code == error_code::utf8_error);
  CHECK(r.offset == 5);
}

TEST_CASE("minify pass") {
  auto minified = [](const std::string &s) {
    padded_input input = padded_input::from(s.data(), s.size());
    std::string out(s.size(), '\0');
    out.resize(minify_pass(input, (uint8_t *)out.data()));
    return out;
  };
  CHECK(minified(" { \"a\" : [ 1 , 2 ] } ") == "{\"a\":[1,2]}");
  CHECK(minified("{\"a b\": \"c \\\" d\"}") == "{\"a b\":\"c \\\" d\"}");
  CHECK(minified("[]") == "[]");
  CHECK(minified("") == "");
  std::string ws_in_string = "[\"a \t b\"]"; // tab inside a string stays
  CHECK(minified(ws_in_string) == ws_in_string);
  // idempotence
  std::string once = minified(" [ 1 , \" a \" ] ");
  CHECK(minified(once) == once);
}
