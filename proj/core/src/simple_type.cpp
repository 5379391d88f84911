#include "cbvtc/simple_type.hpp"

#include <cassert>

namespace cbvtc {

SimpleType SimpleType::base(std::string name) {
  auto node = std::make_shared<Node>();
  node->name = std::move(name);
  return SimpleType(std::move(node));
}

SimpleType SimpleType::arrow(SimpleType domain, SimpleType codomain) {
  auto node = std::make_shared<Node>();
  node->dom = std::move(domain.node_);
  node->cod = std::move(codomain.node_);
  return SimpleType(std::move(node));
}

const std::string& SimpleType::base_name() const {
  assert(is_base());
  return node_->name;
}

SimpleType SimpleType::domain() const {
  assert(is_arrow());
  return SimpleType(node_->dom);
}

SimpleType SimpleType::codomain() const {
  assert(is_arrow());
  return SimpleType(node_->cod);
}

std::vector<SimpleType> SimpleType::argument_types() const {
  std::vector<SimpleType> args;
  SimpleType cur = *this;
  while (cur.is_arrow()) {
    args.push_back(cur.domain());
    cur = cur.codomain();
  }
  return args;
}

SimpleType SimpleType::result() const {
  SimpleType cur = *this;
  while (cur.is_arrow()) cur = cur.codomain();
  return cur;
}

int SimpleType::arity() const {
  int n = 0;
  SimpleType cur = *this;
  while (cur.is_arrow()) {
    ++n;
    cur = cur.codomain();
  }
  return n;
}

int SimpleType::compare(const Node& a, const Node& b) {
  bool a_base = a.dom == nullptr;
  bool b_base = b.dom == nullptr;
  if (a_base != b_base) return a_base ? -1 : 1;
  if (a_base) return a.name.compare(b.name);
  if (int c = compare(*a.dom, *b.dom)) return c;
  return compare(*a.cod, *b.cod);
}

bool SimpleType::operator==(const SimpleType& other) const {
  return compare(*node_, *other.node_) == 0;
}

bool SimpleType::operator<(const SimpleType& other) const {
  return compare(*node_, *other.node_) < 0;
}

std::string SimpleType::to_string() const {
  if (is_base()) return base_name();
  SimpleType dom = domain();
  std::string left =
      dom.is_arrow() ? "(" + dom.to_string() + ")" : dom.to_string();
  return left + " -> " + codomain().to_string();
}

}  // namespace cbvtc
