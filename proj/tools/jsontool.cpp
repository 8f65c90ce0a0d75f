#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jsontape.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDivergence = 4;

bool read_file(const std::string &path, std::string &out) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return !in.bad();
}

bool write_file(const std::string &path, const char *data, size_t len) {
  if (path == "-") {
    std::fwrite(data, 1, len, stdout);
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    return false;
  out.write(data, (std::streamsize)len);
  return out.good();
}

struct parser_handle {
  jt_parser *p;
  parser_handle() : p(jt_parser_new()) {}
  ~parser_handle() { jt_parser_free(p); }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct timing {
  double min_s = 0;
  double median_s = 0;
};

// one warm-up run, then min/median of `reps` wall-clock timings
template <class F> timing time_runs(int reps, F &&fn) {
  fn();
  std::vector<double> samples;
  samples.reserve((size_t)reps);
  for (int i = 0; i < reps; i++) {
    double t0 = now_seconds();
    fn();
    samples.push_back(now_seconds() - t0);
  }
  std::sort(samples.begin(), samples.end());
  timing t;
  t.min_s = samples.front();
  t.median_s = samples[samples.size() / 2];
  return t;
}

double gbps(size_t bytes, double seconds) {
  return seconds > 0 ? (double)bytes / seconds / 1e9 : 0;
}

// ------------------------------------------------------------------ validate

int cmd_validate(const std::vector<std::string> &paths, bool with_oracle) {
  parser_handle ph;
  int exit_code = kExitOk;
  for (const auto &path : paths) {
    std::string data;
    if (!read_file(path, data)) {
      std::fprintf(stderr, "%s: cannot read\n", path.c_str());
      exit_code = kExitIo;
      continue;
    }
    long long offset = -1;
    jt_error err = jt_parse(ph.p, data.data(), data.size(), nullptr, &offset);
    if (err == JT_OK) {
      std::printf("%s: OK\n", path.c_str());
    } else if (offset >= 0) {
      std::printf("%s: %s at offset %lld\n", path.c_str(), jt_error_name(err),
                  offset);
    } else {
      std::printf("%s: %s\n", path.c_str(), jt_error_name(err));
    }
    if (err != JT_OK && exit_code == kExitOk)
      exit_code = kExitParse;
    if (with_oracle) {
      bool oracle_ok = jt_oracle_validate(data.data(), data.size()) != 0;
      if (oracle_ok != (err == JT_OK)) {
        std::printf("%s: DIVERGENCE (parser %s, oracle %s)\n", path.c_str(),
                    err == JT_OK ? "accepts" : "rejects",
                    oracle_ok ? "accepts" : "rejects");
        exit_code = kExitDivergence;
      }
    }
  }
  return exit_code;
}

// ---------------------------------------------------------------------- tape

int cmd_tape(const std::string &path) {
  std::string data;
  if (!read_file(path, data)) {
    std::fprintf(stderr, "%s: cannot read\n", path.c_str());
    return kExitIo;
  }
  parser_handle ph;
  jt_document *doc = nullptr;
  long long offset = -1;
  jt_error err = jt_parse(ph.p, data.data(), data.size(), &doc, &offset);
  if (err != JT_OK) {
    std::fprintf(stderr, "%s: %s at offset %lld\n", path.c_str(),
                 jt_error_name(err), offset);
    return kExitParse;
  }
  char *dump = jt_document_dump(doc);
  std::fputs(dump, stdout);
  jt_string_free(dump);
  jt_document_free(doc);
  return kExitOk;
}

// -------------------------------------------------------------------- minify

int cmd_minify(const std::string &in_path, const std::string &out_path) {
  std::string data;
  if (!read_file(in_path, data)) {
    std::fprintf(stderr, "%s: cannot read\n", in_path.c_str());
    return kExitIo;
  }
  parser_handle ph;
  std::string dst(data.size(), '\0');
  size_t out_len = 0;
  long long offset = -1;
  jt_error err = jt_minify(ph.p, data.data(), data.size(), dst.data(),
                           &out_len, &offset);
  if (err != JT_OK) {
    std::fprintf(stderr, "%s: %s at offset %lld\n", in_path.c_str(),
                 jt_error_name(err), offset);
    return kExitParse;
  }
  if (!write_file(out_path, dst.data(), out_len)) {
    std::fprintf(stderr, "%s: cannot write\n", out_path.c_str());
    return kExitIo;
  }
  std::fprintf(stderr, "%zu bytes in, %zu bytes out (%.1f%%)\n", data.size(),
               out_len,
               data.empty() ? 0.0 : 100.0 * (double)out_len / data.size());
  return kExitOk;
}

// --------------------------------------------------------------------- stats

int cmd_stats(const std::vector<std::string> &paths, const std::string &format) {
  parser_handle ph;
  bool tsv = format == "tsv";
  if (tsv)
    std::printf("path\tintegers\tfloats\tstrings\tnon_ascii_bytes\tobjects\t"
                "arrays\tnulls\ttrues\tfalses\tstructurals\tbytes\t"
                "bytes_per_structural\n");
  int exit_code = kExitOk;
  for (const auto &path : paths) {
    std::string data;
    if (!read_file(path, data)) {
      std::fprintf(stderr, "%s: cannot read\n", path.c_str());
      exit_code = kExitIo;
      continue;
    }
    jt_stats s;
    long long offset = -1;
    jt_error err = jt_compute_stats(ph.p, data.data(), data.size(), &s, &offset);
    if (err != JT_OK) {
      std::fprintf(stderr, "%s: %s at offset %lld\n", path.c_str(),
                   jt_error_name(err), offset);
      if (exit_code == kExitOk)
        exit_code = kExitParse;
      continue;
    }
    if (tsv) {
      std::printf("%s\t%llu\t%llu\t%llu\t%llu\t%llu\t%llu\t%llu\t%llu\t%llu\t"
                  "%llu\t%llu\t%.3f\n",
                  path.c_str(), (unsigned long long)s.integers,
                  (unsigned long long)s.floats, (unsigned long long)s.strings,
                  (unsigned long long)s.non_ascii_bytes,
                  (unsigned long long)s.objects, (unsigned long long)s.arrays,
                  (unsigned long long)s.nulls, (unsigned long long)s.trues,
                  (unsigned long long)s.falses,
                  (unsigned long long)s.structurals,
                  (unsigned long long)s.bytes, s.bytes_per_structural);
    } else {
      std::printf("%s\n", path.c_str());
      std::printf("  integers            %llu\n",
                  (unsigned long long)s.integers);
      std::printf("  floats              %llu\n", (unsigned long long)s.floats);
      std::printf("  strings             %llu\n",
                  (unsigned long long)s.strings);
      std::printf("  non-ASCII bytes     %llu\n",
                  (unsigned long long)s.non_ascii_bytes);
      std::printf("  objects             %llu\n",
                  (unsigned long long)s.objects);
      std::printf("  arrays              %llu\n", (unsigned long long)s.arrays);
      std::printf("  nulls               %llu\n", (unsigned long long)s.nulls);
      std::printf("  trues               %llu\n", (unsigned long long)s.trues);
      std::printf("  falses              %llu\n", (unsigned long long)s.falses);
      std::printf("  structurals (S)     %llu\n",
                  (unsigned long long)s.structurals);
      std::printf("  bytes (B)           %llu\n", (unsigned long long)s.bytes);
      std::printf("  bytes/structural    %.3f\n", s.bytes_per_structural);
    }
  }
  return exit_code;
}

// ------------------------------------------------------------------ generate

int cmd_generate(const std::string &kind, uint64_t size, bool size_set,
                 uint64_t seed, const std::string &out_path) {
  if (!size_set) {
    if (kind == "numbers")
      size = 10001;
    else if (kind == "escaped-strings")
      size = 1000;
    else if (kind == "large")
      size = 64ULL << 20;
    else
      size = 1ULL << 20;
  }
  size_t len = 0;
  char *data = jt_generate(kind.c_str(), size, seed, &len);
  if (!data) {
    std::fprintf(stderr, "unknown kind %s\n", kind.c_str());
    return kExitUsage;
  }
  bool ok = write_file(out_path, data, len);
  jt_string_free(data);
  if (!ok) {
    std::fprintf(stderr, "%s: cannot write\n", out_path.c_str());
    return kExitIo;
  }
  if (out_path != "-")
    std::fprintf(stderr, "%s: %zu bytes\n", out_path.c_str(), len);
  return kExitOk;
}

// --------------------------------------------------------------------- query

int cmd_query(const std::string &path, const std::string &key_path, int reps) {
  std::string data;
  if (!read_file(path, data)) {
    std::fprintf(stderr, "%s: cannot read\n", path.c_str());
    return kExitIo;
  }
  parser_handle ph;
  jt_document *doc = nullptr;
  long long offset = -1;
  jt_error err = jt_parse(ph.p, data.data(), data.size(), &doc, &offset);
  if (err != JT_OK) {
    std::fprintf(stderr, "%s: %s at offset %lld\n", path.c_str(),
                 jt_error_name(err), offset);
    return kExitParse;
  }
  char *values = jt_document_distinct(doc, key_path.c_str());
  std::fputs(values, stdout);
  jt_string_free(values);

  timing parse_t = time_runs(reps, [&] {
    jt_document *d = nullptr;
    jt_parse(ph.p, data.data(), data.size(), &d, nullptr);
    jt_document_free(d);
  });
  timing select_t = time_runs(reps, [&] {
    char *v = jt_document_distinct(doc, key_path.c_str());
    jt_string_free(v);
  });
  timing combined_t = time_runs(reps, [&] {
    jt_document *d = nullptr;
    jt_parse(ph.p, data.data(), data.size(), &d, nullptr);
    char *v = jt_document_distinct(d, key_path.c_str());
    jt_string_free(v);
    jt_document_free(d);
  });
  std::fprintf(stderr,
               "parse %.3f ms, select %.3f ms, parse+select %.3f ms "
               "(min of %d)\n",
               parse_t.min_s * 1e3, select_t.min_s * 1e3,
               combined_t.min_s * 1e3, reps);
  jt_document_free(doc);
  return kExitOk;
}

// --------------------------------------------------------------------- bench

struct bench_config {
  const char *name;
  int use_clmul;
  int fast_extract;
  int vector_classify;
};

int cmd_bench(const std::vector<std::string> &paths, bool no_clmul,
              bool naive_extract, bool naive_classify, const std::string &stage,
              int reps, const std::string &format) {
  std::vector<bench_config> configs = {{"default", 1, 1, 1}};
  if (no_clmul)
    configs.push_back({"no-clmul", 0, 1, 1});
  if (naive_extract)
    configs.push_back({"naive-extract", 1, 0, 1});
  if (naive_classify)
    configs.push_back({"naive-classify", 1, 1, 0});

  bool tsv = format == "tsv";
  if (tsv)
    std::printf("path\tconfig\tstage\tbytes\tmin_gbps\tmedian_gbps\n");

  parser_handle ph;
  int exit_code = kExitOk;
  for (const auto &path : paths) {
    std::string data;
    if (!read_file(path, data)) {
      std::fprintf(stderr, "%s: cannot read\n", path.c_str());
      return kExitIo;
    }
    // reference result for the cross-configuration equality check
    jt_parser_set_flags(ph.p, 1, 1, 1);
    jt_document *ref_doc = nullptr;
    long long offset = -1;
    jt_error err = jt_parse(ph.p, data.data(), data.size(), &ref_doc, &offset);
    if (err != JT_OK) {
      std::fprintf(stderr, "%s: %s at offset %lld\n", path.c_str(),
                   jt_error_name(err), offset);
      return kExitParse;
    }
    std::vector<uint32_t> ref_index(jt_index_positions(ph.p),
                                    jt_index_positions(ph.p) +
                                        jt_index_count(ph.p));

    for (const auto &cfg : configs) {
      jt_parser_set_flags(ph.p, cfg.use_clmul, cfg.fast_extract,
                          cfg.vector_classify);
      jt_document *doc = nullptr;
      jt_parse(ph.p, data.data(), data.size(), &doc, nullptr);
      bool same = doc && jt_document_equal(doc, ref_doc) &&
                  jt_index_count(ph.p) == ref_index.size() &&
                  std::memcmp(jt_index_positions(ph.p), ref_index.data(),
                              ref_index.size() * 4) == 0;
      jt_document_free(doc);
      if (!same) {
        std::fprintf(stderr, "%s: config %s produced a different result\n",
                     path.c_str(), cfg.name);
        exit_code = kExitDivergence;
      }

      timing t;
      if (stage == "1") {
        t = time_runs(reps,
                      [&] { jt_stage1(ph.p, data.data(), data.size(), nullptr); });
      } else if (stage == "2") {
        jt_stage1(ph.p, data.data(), data.size(), nullptr);
        t = time_runs(reps, [&] { jt_stage2(ph.p, nullptr, nullptr); });
      } else {
        t = time_runs(reps, [&] {
          jt_document *d = nullptr;
          jt_parse(ph.p, data.data(), data.size(), &d, nullptr);
          jt_document_free(d);
        });
      }
      if (tsv)
        std::printf("%s\t%s\t%s\t%zu\t%.4f\t%.4f\n", path.c_str(), cfg.name,
                    stage.c_str(), data.size(), gbps(data.size(), t.min_s),
                    gbps(data.size(), t.median_s));
      else
        std::printf("%-32s %-15s stage %-4s %10zu B  %7.3f GB/s min  "
                    "%7.3f GB/s median\n",
                    path.c_str(), cfg.name, stage.c_str(), data.size(),
                    gbps(data.size(), t.min_s), gbps(data.size(), t.median_s));
    }
    jt_document_free(ref_doc);
  }
  return exit_code;
}

// ---------------------------------------------------------------------- fuzz

std::vector<std::string> builtin_seeds() {
  std::vector<std::string> seeds;
  size_t len;
  for (const char *spec : {"numbers:200", "random-mixed:4096",
                           "escaped-strings:100"}) {
    std::string s(spec);
    size_t colon = s.find(':');
    char *data = jt_generate(s.substr(0, colon).c_str(),
                             std::stoull(s.substr(colon + 1)), 7, &len);
    seeds.emplace_back(data, len);
    jt_string_free(data);
  }
  seeds.push_back("{\"a\": [1, 2.5, -3e-2, true, false, null, \"x\\u00e9\"]}");
  seeds.push_back("[[[[{\"k\": \"\\\\\\\"\"}]]]]");
  seeds.push_back("{\"planted\": 3, \"s\": \"\\ud83d\\ude00 caf\xc3\xa9\"}");
  seeds.push_back("-0.5e10");
  seeds.push_back("[0e+1]");
  return seeds;
}

int cmd_fuzz(const std::string &seed_dir, uint64_t iterations, uint64_t seed,
             const std::string &out_dir, bool flip_oracle) {
  std::vector<std::string> seeds;
  if (!seed_dir.empty()) {
    std::error_code ec;
    for (const auto &entry :
         std::filesystem::directory_iterator(seed_dir, ec)) {
      if (!entry.is_regular_file())
        continue;
      std::string data;
      if (read_file(entry.path().string(), data))
        seeds.push_back(std::move(data));
    }
    if (ec || seeds.empty()) {
      std::fprintf(stderr, "%s: no readable seed files\n", seed_dir.c_str());
      return kExitIo;
    }
  } else {
    seeds = builtin_seeds();
  }

  static const char kInteresting[] =
      "{}[]:,\"\\ \t\n\r0123456789eE.-+uftnrb/ \xc3\xa9\x80\xf4";
  std::mt19937_64 rng(seed);
  parser_handle ph;
  uint64_t accepted = 0;
  for (uint64_t iter = 0; iter < iterations; iter++) {
    std::string doc = seeds[rng() % seeds.size()];
    int mutations = 1 + (int)(rng() % 8);
    for (int m = 0; m < mutations && !doc.empty(); m++) {
      switch (rng() % 5) {
      case 0: // flip a bit
        doc[rng() % doc.size()] ^= (char)(1 << (rng() % 8));
        break;
      case 1: // overwrite with an interesting byte
        doc[rng() % doc.size()] =
            kInteresting[rng() % (sizeof(kInteresting) - 1)];
        break;
      case 2: // truncate
        doc.resize(rng() % (doc.size() + 1));
        break;
      case 3: { // delete a short slice
        size_t at = rng() % doc.size();
        size_t n = std::min<size_t>(1 + rng() % 8, doc.size() - at);
        doc.erase(at, n);
        break;
      }
      default: { // insert an interesting byte
        doc.insert(doc.begin() + (long)(rng() % (doc.size() + 1)),
                   kInteresting[rng() % (sizeof(kInteresting) - 1)]);
        break;
      }
      }
    }
    bool parser_ok =
        jt_parse(ph.p, doc.data(), doc.size(), nullptr, nullptr) == JT_OK;
    bool oracle_ok = jt_oracle_validate(doc.data(), doc.size()) != 0;
    if (flip_oracle)
      oracle_ok = !oracle_ok;
    accepted += parser_ok;
    if (parser_ok != oracle_ok) {
      std::string repro =
          (std::filesystem::path(out_dir) / "fuzz-reproducer.json").string();
      write_file(repro, doc.data(), doc.size());
      std::fprintf(stderr,
                   "divergence at iteration %llu (parser %s, oracle %s), "
                   "reproducer: %s\n",
                   (unsigned long long)iter,
                   parser_ok ? "accepts" : "rejects",
                   oracle_ok ? "accepts" : "rejects", repro.c_str());
      return kExitDivergence;
    }
  }
  std::fprintf(stderr, "%llu iterations, %llu accepted, no divergence\n",
               (unsigned long long)iterations, (unsigned long long)accepted);
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"two-stage JSON parser tooling"};
  app.require_subcommand(1);

  // validate
  std::vector<std::string> validate_paths;
  bool validate_oracle = false;
  auto *validate = app.add_subcommand("validate", "validate documents");
  validate->add_option("paths", validate_paths)->required();
  validate->add_flag("--oracle", validate_oracle,
                     "also run the reference oracle and compare verdicts");

  // tape
  std::string tape_path;
  auto *tape = app.add_subcommand("tape", "print the tape of a document");
  tape->add_option("path", tape_path)->required();

  // minify
  std::string minify_in, minify_out = "-";
  auto *minify = app.add_subcommand("minify", "remove inter-token whitespace");
  minify->add_option("input", minify_in)->required();
  minify->add_option("output", minify_out, "output path, - for stdout");

  // stats
  std::vector<std::string> stats_paths;
  std::string stats_format = "table";
  auto *stats = app.add_subcommand(
      "stats", "per-document shape counts; strings include object keys");
  stats->add_option("paths", stats_paths)->required();
  stats->add_option("--format", stats_format, "table or tsv")
      ->check(CLI::IsMember({"table", "tsv"}));

  // generate
  std::string gen_kind = "random-mixed", gen_out;
  uint64_t gen_size = 0, gen_seed = 1;
  auto *generate = app.add_subcommand("generate", "write a synthetic corpus");
  generate->add_option("--kind", gen_kind)
      ->check(CLI::IsMember({"numbers", "random-mixed", "escaped-strings",
                             "large"}));
  auto *gen_size_opt = generate->add_option(
      "--size", gen_size, "element count or byte target depending on kind");
  generate->add_option("--seed", gen_seed);
  generate->add_option("--out", gen_out, "output path, - for stdout")
      ->required();

  // query
  std::string query_path, query_keys;
  int query_reps = 10;
  auto *query =
      app.add_subcommand("query", "distinct scalars at a dotted key path");
  query->add_option("path", query_path)->required();
  query->add_option("keys", query_keys)->required();
  query->add_option("--reps", query_reps, "timing repetitions");

  // bench
  std::vector<std::string> bench_paths;
  bool bench_no_clmul = false, bench_naive_extract = false,
       bench_naive_classify = false;
  std::string bench_stage = "all", bench_format = "table";
  int bench_reps = 10;
  auto *bench = app.add_subcommand("bench", "throughput with ablation toggles");
  bench->add_option("paths", bench_paths)->required();
  bench->add_flag("--no-clmul", bench_no_clmul,
                  "also run with the shift-xor prefix ladder");
  bench->add_flag("--naive-extract", bench_naive_extract,
                  "also run with one-bit-at-a-time index extraction");
  bench->add_flag("--naive-classify", bench_naive_classify,
                  "also run with comparison-based classification");
  bench->add_option("--stage", bench_stage)
      ->check(CLI::IsMember({"1", "2", "all"}));
  bench->add_option("--reps", bench_reps, "timing repetitions (min-of-N)");
  bench->add_option("--format", bench_format)
      ->check(CLI::IsMember({"table", "tsv"}));

  // fuzz
  std::string fuzz_seed_dir, fuzz_out_dir = ".";
  uint64_t fuzz_iterations = 1000, fuzz_seed = 1;
  bool fuzz_flip = false;
  auto *fuzz =
      app.add_subcommand("fuzz", "differential fuzz against the oracle");
  fuzz->add_option("--seeds", fuzz_seed_dir, "seed corpus directory");
  fuzz->add_option("--iterations", fuzz_iterations);
  fuzz->add_option("--seed", fuzz_seed, "mutation RNG seed");
  fuzz->add_option("--out", fuzz_out_dir, "reproducer output directory");
  fuzz->add_flag("--flip-oracle", fuzz_flip)->group(""); // harness self-test

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  if (validate->parsed())
    return cmd_validate(validate_paths, validate_oracle);
  if (tape->parsed())
    return cmd_tape(tape_path);
  if (minify->parsed())
    return cmd_minify(minify_in, minify_out);
  if (stats->parsed())
    return cmd_stats(stats_paths, stats_format);
  if (generate->parsed())
    return cmd_generate(gen_kind, gen_size, gen_size_opt->count() > 0, gen_seed,
                        gen_out);
  if (query->parsed())
    return cmd_query(query_path, query_keys, query_reps);
  if (bench->parsed())
    return cmd_bench(bench_paths, bench_no_clmul, bench_naive_extract,
                     bench_naive_classify, bench_stage, bench_reps,
                     bench_format);
  if (fuzz->parsed())
    return cmd_fuzz(fuzz_seed_dir, fuzz_iterations, fuzz_seed, fuzz_out_dir,
                    fuzz_flip);
  return kExitUsage;
}
