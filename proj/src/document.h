#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tape.h"

namespace jt {

// Cursor over a value-start word on the tape. Never points at a closing
// word, a number's raw value word, or an object key.
class node_ref {
public:
  node_ref() = default;
  node_ref(const parsed_document *doc, uint64_t index)
      : doc_(doc), index_(index) {}

  bool valid() const { return doc_ != nullptr; }
  uint64_t index() const { return index_; }
  uint8_t tag() const { return word_tag(doc_->tape[index_]); }

  bool is_object() const { return tag() == tape_tag::object_open; }
  bool is_array() const { return tag() == tape_tag::array_open; }
  bool is_container() const { return is_object() || is_array(); }
  bool is_scalar() const { return valid() && !is_container(); }

  int64_t as_int64() const { return (int64_t)doc_->tape[index_ + 1]; }
  double as_double() const;
  std::string_view as_string() const;

  // first tape index past this value and everything inside it
  uint64_t end_index() const;

  // one past the matching closing word; containers only
  uint64_t scope_end() const { return word_payload(doc_->tape[index_]); }

  node_ref get(std::string_view key) const; // objects; invalid if missing
  node_ref at(size_t i) const;              // arrays; invalid if out of range
  size_t child_count() const;

  const parsed_document *document() const { return doc_; }

private:
  const parsed_document *doc_ = nullptr;
  uint64_t index_ = 0;
};

// Walks an object's key/value pairs or an array's elements using the
// scope-skip pointers.
class child_iterator {
public:
  explicit child_iterator(const node_ref &container);

  bool done() const { return index_ >= stop_; }
  void advance();

  std::string_view key() const; // objects only
  node_ref value() const;

private:
  const parsed_document *doc_;
  bool is_object_;
  uint64_t index_; // key word for objects, value word for arrays
  uint64_t stop_;  // index of the closing word
};

node_ref document_root(const parsed_document &doc);

// A scalar snapshot ordered by kind then value, for dedup and sorted
// output. Floats compare by bit pattern so distinct NaNs stay distinct.
struct scalar_value {
  enum class kind : int { null_v, false_v, true_v, int_v, float_v, string_v };
  kind k = kind::null_v;
  uint64_t bits = 0;
  std::string bytes;

  bool operator<(const scalar_value &other) const {
    if (k != other.k)
      return k < other.k;
    if (k == kind::string_v)
      return bytes < other.bytes;
    return bits < other.bits;
  }

  static scalar_value from(const node_ref &node);
  std::string to_string() const;
};

// All distinct scalars whose key chain matches `path` ("a.b" means a value
// of key b directly inside the value of key a; the first key matches at
// any depth; arrays along the chain are transparent).
std::set<scalar_value> distinct_values(const parsed_document &doc,
                                       std::string_view path);

} // namespace jt
