#include <charconv>
#include <cstring>

#include "numbers.h"
#include "stringparse.h"
#include "tape.h"

namespace jt {

namespace {

constexpr size_t kMaxDepth = 1024;

inline bool is_separator_byte(uint8_t c) {
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

class tape_builder {
public:
  tape_builder(const padded_input &input, const structural_index &index,
               parsed_document &doc)
      : buf_(input.data()), len_(input.size()), pos_(index.positions()),
        count_(index.count), doc_(doc) {}

  parse_result run();

private:
  struct scope {
    uint64_t open_index;
    bool is_object;
  };

  parse_result fail(error_code code, long long offset) { return {code, offset}; }
  parse_result tape_fail(size_t token) {
    return {error_code::tape_error,
            token < count_ ? (long long)pos_[token] : (long long)len_};
  }

  bool atom_terminated(size_t offset) const {
    return offset >= len_ ||
           is_separator_byte(buf_[offset]) || buf_[offset] == '"';
  }

  void write(uint8_t tag, uint64_t payload) {
    tape_[tape_used_++] = tape_word(tag, payload);
  }

  // returns false on error, with err_ set
  bool emit_scalar(size_t token);

  const uint8_t *buf_;
  size_t len_;
  const uint32_t *pos_;
  size_t count_;
  parsed_document &doc_;
  std::vector<scope> stack_;
  uint64_t *tape_ = nullptr;
  size_t tape_used_ = 0;
  size_t string_used_ = 0;
  parse_result err_;
};

bool tape_builder::emit_scalar(size_t token) {
  size_t offset = pos_[token];
  uint8_t c = buf_[offset];
  switch (c) {
  case '"': {
    string_result r =
        parse_string(buf_, len_, offset, doc_.strings.data() + string_used_);
    if (!r.ok) {
      err_ = fail(error_code::string_error, r.error_offset);
      return false;
    }
    write(tape_tag::string, string_used_);
    string_used_ += 4 + r.length;
    return true;
  }
  case 't':
    if (std::memcmp(buf_ + offset, "true", 4) != 0 ||
        !atom_terminated(offset + 4)) {
      err_ = fail(error_code::tape_error, (long long)offset);
      return false;
    }
    write(tape_tag::true_atom, 0);
    return true;
  case 'f':
    if (std::memcmp(buf_ + offset, "false", 5) != 0 ||
        !atom_terminated(offset + 5)) {
      err_ = fail(error_code::tape_error, (long long)offset);
      return false;
    }
    write(tape_tag::false_atom, 0);
    return true;
  case 'n':
    if (std::memcmp(buf_ + offset, "null", 4) != 0 ||
        !atom_terminated(offset + 4)) {
      err_ = fail(error_code::tape_error, (long long)offset);
      return false;
    }
    write(tape_tag::null_atom, 0);
    return true;
  default: {
    if (c != '-' && !(c >= '0' && c <= '9')) {
      err_ = fail(error_code::tape_error, (long long)offset);
      return false;
    }
    number_result r = parse_number(buf_, len_, offset);
    if (!r.ok) {
      err_ = fail(error_code::number_error, (long long)offset);
      return false;
    }
    if (r.value.is_integer) {
      write(tape_tag::int64, 0);
      tape_[tape_used_++] = (uint64_t)r.value.integer_value;
    } else {
      write(tape_tag::float64, 0);
      uint64_t bits;
      std::memcpy(&bits, &r.value.float_value, 8);
      tape_[tape_used_++] = bits;
    }
    return true;
  }
  }
}

parse_result tape_builder::run() {
  doc_.tape.clear();
  doc_.strings.clear();
  doc_.source_length = len_;
  if (count_ == 0)
    return fail(error_code::empty, -1);

  // two words per token at most, plus the two root words
  doc_.tape.resize(2 * count_ + 3);
  tape_ = doc_.tape.data();
  // payload bytes never exceed the source, prefixes are 4 bytes per string,
  // plus bulk-copy slack
  doc_.strings.resize(len_ + 4 * count_ + 64);
  stack_.reserve(kMaxDepth);

  write(tape_tag::root, 0); // patched at the end
  size_t i = 0;

value_start:
  if (i >= count_)
    return tape_fail(i);
  switch (buf_[pos_[i]]) {
  case '{':
    if (stack_.size() == kMaxDepth)
      return fail(error_code::depth_error, (long long)pos_[i]);
    stack_.push_back({tape_used_, true});
    write(tape_tag::object_open, 0);
    i++;
    goto object_first;
  case '[':
    if (stack_.size() == kMaxDepth)
      return fail(error_code::depth_error, (long long)pos_[i]);
    stack_.push_back({tape_used_, false});
    write(tape_tag::array_open, 0);
    i++;
    goto array_first;
  default:
    if (!emit_scalar(i))
      return err_;
    i++;
    goto after_value;
  }

object_first:
  if (i >= count_)
    return tape_fail(i);
  if (buf_[pos_[i]] == '}')
    goto scope_close;
  goto object_key;

object_key:
  if (i >= count_ || buf_[pos_[i]] != '"')
    return tape_fail(i);
  if (!emit_scalar(i))
    return err_;
  i++;
  if (i >= count_ || buf_[pos_[i]] != ':')
    return tape_fail(i);
  i++;
  goto value_start;

array_first:
  if (i >= count_)
    return tape_fail(i);
  if (buf_[pos_[i]] == ']')
    goto scope_close;
  goto value_start;

after_value:
  if (stack_.empty()) {
    if (i != count_)
      return tape_fail(i);
    goto finish;
  }
  if (i >= count_)
    return tape_fail(i);
  if (stack_.back().is_object) {
    switch (buf_[pos_[i]]) {
    case ',':
      i++;
      goto object_key;
    case '}':
      goto scope_close;
    default:
      return tape_fail(i);
    }
  } else {
    switch (buf_[pos_[i]]) {
    case ',':
      i++;
      goto value_start;
    case ']':
      goto scope_close;
    default:
      return tape_fail(i);
    }
  }

scope_close: {
  scope s = stack_.back();
  stack_.pop_back();
  uint8_t close_tag = s.is_object ? tape_tag::object_close : tape_tag::array_close;
  uint8_t want = s.is_object ? '}' : ']';
  if (buf_[pos_[i]] != want)
    return tape_fail(i);
  write(close_tag, s.open_index);
  // opening word points one past the matching closer
  tape_[s.open_index] = tape_word(word_tag(tape_[s.open_index]), tape_used_);
  i++;
  goto after_value;
}

finish:
  tape_[0] = tape_word(tape_tag::root, tape_used_);
  write(tape_tag::root, 0);
  doc_.tape.resize(tape_used_);
  doc_.strings.resize(string_used_);
  return {};
}

} // namespace

parse_result build_tape(const padded_input &input, const structural_index &index,
                        parsed_document &doc) {
  return tape_builder(input, index, doc).run();
}

parse_result parse(const uint8_t *data, size_t len, const scan_config &config,
                   parsed_document &doc) {
  padded_input input(data, len);
  structural_index index;
  parse_result r = build_structural_index(input, config, index);
  if (!r.ok())
    return r;
  return build_tape(input, index, doc);
}

std::string tape_dump(const parsed_document &doc) {
  std::string out;
  char buf[64];
  auto append_number = [&](uint64_t i) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), i);
    (void)ec;
    out.append(buf, p);
  };
  for (size_t i = 0; i < doc.tape.size(); i++) {
    uint64_t word = doc.tape[i];
    uint8_t tag = word_tag(word);
    uint64_t payload = word_payload(word);
    append_number(i);
    out += " : ";
    switch (tag) {
    case tape_tag::root:
      out += "r\t// pointing to ";
      append_number(payload);
      break;
    case tape_tag::object_open:
    case tape_tag::array_open:
      out += (char)tag;
      out += "\t// pointing to next tape location ";
      append_number(payload);
      out += " (first node after the scope)";
      break;
    case tape_tag::object_close:
    case tape_tag::array_close:
      out += (char)tag;
      out += "\t// pointing to previous tape location ";
      append_number(payload);
      out += " (start of the scope)";
      break;
    case tape_tag::string: {
      out += "string \"";
      uint32_t slen;
      std::memcpy(&slen, doc.strings.data() + payload, 4);
      out.append((const char *)doc.strings.data() + payload + 4, slen);
      out += '"';
      break;
    }
    case tape_tag::int64: {
      out += "integer ";
      int64_t v = (int64_t)doc.tape[i + 1];
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      (void)ec;
      out.append(buf, p);
      i++;
      break;
    }
    case tape_tag::float64: {
      out += "double ";
      double v;
      std::memcpy(&v, &doc.tape[i + 1], 8);
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      (void)ec;
      out.append(buf, p);
      i++;
      break;
    }
    case tape_tag::true_atom:
      out += "true";
      break;
    case tape_tag::false_atom:
      out += "false";
      break;
    case tape_tag::null_atom:
      out += "null";
      break;
    }
    out += '\n';
  }
  return out;
}

} // namespace jt
