#include "document.h"

#include <charconv>
#include <cstring>

namespace jt {

double node_ref::as_double() const {
  double d;
  std::memcpy(&d, &doc_->tape[index_ + 1], 8);
  return d;
}

std::string_view node_ref::as_string() const {
  uint64_t offset = word_payload(doc_->tape[index_]);
  uint32_t len;
  std::memcpy(&len, doc_->strings.data() + offset, 4);
  return {reinterpret_cast<const char *>(doc_->strings.data()) + offset + 4,
          len};
}

uint64_t node_ref::end_index() const {
  switch (tag()) {
  case tape_tag::object_open:
  case tape_tag::array_open:
    return scope_end();
  case tape_tag::int64:
  case tape_tag::float64:
    return index_ + 2;
  default:
    return index_ + 1;
  }
}

child_iterator::child_iterator(const node_ref &container)
    : doc_(container.document()), is_object_(container.is_object()),
      index_(container.index() + 1), stop_(container.scope_end() - 1) {}

void child_iterator::advance() {
  index_ = value().end_index();
}

std::string_view child_iterator::key() const {
  return node_ref(doc_, index_).as_string();
}

node_ref child_iterator::value() const {
  return {doc_, is_object_ ? index_ + 1 : index_};
}

node_ref node_ref::get(std::string_view key) const {
  if (!valid() || !is_object())
    return {};
  for (child_iterator it(*this); !it.done(); it.advance())
    if (it.key() == key)
      return it.value();
  return {};
}

node_ref node_ref::at(size_t i) const {
  if (!valid() || !is_array())
    return {};
  for (child_iterator it(*this); !it.done(); it.advance())
    if (i-- == 0)
      return it.value();
  return {};
}

size_t node_ref::child_count() const {
  size_t n = 0;
  for (child_iterator it(*this); !it.done(); it.advance())
    n++;
  return n;
}

node_ref document_root(const parsed_document &doc) { return {&doc, 1}; }

scalar_value scalar_value::from(const node_ref &node) {
  scalar_value v;
  switch (node.tag()) {
  case tape_tag::null_atom:
    v.k = kind::null_v;
    break;
  case tape_tag::false_atom:
    v.k = kind::false_v;
    break;
  case tape_tag::true_atom:
    v.k = kind::true_v;
    break;
  case tape_tag::int64:
    v.k = kind::int_v;
    v.bits = (uint64_t)node.as_int64();
    break;
  case tape_tag::float64: {
    v.k = kind::float_v;
    double d = node.as_double();
    std::memcpy(&v.bits, &d, 8);
    break;
  }
  default:
    v.k = kind::string_v;
    v.bytes = std::string(node.as_string());
    break;
  }
  return v;
}

std::string scalar_value::to_string() const {
  char buf[64];
  switch (k) {
  case kind::null_v:
    return "null";
  case kind::false_v:
    return "false";
  case kind::true_v:
    return "true";
  case kind::int_v: {
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), (int64_t)bits);
    (void)ec;
    return {buf, p};
  }
  case kind::float_v: {
    double d;
    std::memcpy(&d, &bits, 8);
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    (void)ec;
    return {buf, p};
  }
  default:
    return '"' + bytes + '"';
  }
}

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> keys;
  size_t start = 0;
  while (start <= path.size()) {
    size_t dot = path.find('.', start);
    if (dot == std::string_view::npos)
      dot = path.size();
    keys.emplace_back(path.substr(start, dot - start));
    start = dot + 1;
  }
  return keys;
}

// `node` is the value matched for keys[i-1]; continue the chain, looking
// through arrays.
void follow_chain(const node_ref &node, const std::vector<std::string> &keys,
                  size_t i, std::set<scalar_value> &out) {
  if (i == keys.size()) {
    if (node.is_scalar())
      out.insert(scalar_value::from(node));
    return;
  }
  if (node.is_object()) {
    for (child_iterator it(node); !it.done(); it.advance())
      if (it.key() == keys[i])
        follow_chain(it.value(), keys, i + 1, out);
  } else if (node.is_array()) {
    for (child_iterator it(node); !it.done(); it.advance())
      follow_chain(it.value(), keys, i, out);
  }
}

// the first key matches at any depth
void search_all(const node_ref &node, const std::vector<std::string> &keys,
                std::set<scalar_value> &out) {
  if (node.is_object()) {
    for (child_iterator it(node); !it.done(); it.advance()) {
      if (it.key() == keys[0])
        follow_chain(it.value(), keys, 1, out);
      search_all(it.value(), keys, out);
    }
  } else if (node.is_array()) {
    for (child_iterator it(node); !it.done(); it.advance())
      search_all(it.value(), keys, out);
  }
}

} // namespace

std::set<scalar_value> distinct_values(const parsed_document &doc,
                                       std::string_view path) {
  std::set<scalar_value> out;
  if (path.empty())
    return out;
  search_all(document_root(doc), split_path(path), out);
  return out;
}

} // namespace jt
