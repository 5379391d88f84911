#pragma once

#include <memory>
#include <string>
#include <vector>

namespace cbvtc {

// Simple types over a set of base types: either a named base type or an
// arrow. Arrows associate to the right in the surface syntax; the tree form
// is unambiguous. Immutable, cheap to copy (shared nodes).
class SimpleType {
 public:
  static SimpleType base(std::string name);
  static SimpleType arrow(SimpleType domain, SimpleType codomain);

  bool is_base() const { return node_->dom == nullptr; }
  bool is_arrow() const { return node_->dom != nullptr; }

  const std::string& base_name() const;
  SimpleType domain() const;
  SimpleType codomain() const;

  // For sigma = tau_1 => ... => tau_n => iota returns {tau_1, ..., tau_n};
  // result() is the final iota.
  std::vector<SimpleType> argument_types() const;
  SimpleType result() const;
  int arity() const;

  bool operator==(const SimpleType& other) const;
  bool operator!=(const SimpleType& other) const { return !(*this == other); }
  bool operator<(const SimpleType& other) const;  // arbitrary total order

  std::string to_string() const;

 private:
  struct Node {
    std::string name;  // base name when dom == nullptr
    std::shared_ptr<const Node> dom;
    std::shared_ptr<const Node> cod;
  };

  explicit SimpleType(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static int compare(const Node& a, const Node& b);

  std::shared_ptr<const Node> node_;
};

}  // namespace cbvtc
