#include "recmu/type.hpp"

#include <functional>
#include <optional>

namespace recmu {

struct Type::Node {
  Kind kind;
  std::string name;
  // Only set for arrows.
  std::optional<Type> dom;
  std::optional<Type> cod;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string kEmpty;

}  // namespace

Type Type::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAtom;
  n->hash = hash_combine(1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Type(std::move(n));
}

Type Type::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->hash = hash_combine(2, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Type(std::move(n));
}

Type Type::arrow(Type dom, Type cod) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kArrow;
  n->size = 1 + dom.size() + cod.size();
  n->hash = hash_combine(hash_combine(3, dom.hash()), cod.hash());
  n->dom = std::move(dom);
  n->cod = std::move(cod);
  return Type(std::move(n));
}

Type Type::bottom() {
  static const Type b = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kBottom;
    n->hash = 4;
    return Type(std::move(n));
  }();
  return b;
}

Type Type::neg(Type t) { return arrow(std::move(t), bottom()); }

Type::Kind Type::kind() const { return node_->kind; }

const std::string& Type::name() const {
  return (node_->kind == Kind::kAtom || node_->kind == Kind::kVar) ? node_->name : kEmpty;
}

const Type& Type::dom() const { return *node_->dom; }
const Type& Type::cod() const { return *node_->cod; }

std::size_t Type::size() const { return node_->size; }
std::size_t Type::hash() const { return node_->hash; }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind ||
      a.node_->size != b.node_->size) {
    return false;
  }
  switch (a.kind()) {
    case Type::Kind::kAtom:
    case Type::Kind::kVar:
      return a.node_->name == b.node_->name;
    case Type::Kind::kBottom:
      return true;
    case Type::Kind::kArrow:
      return a.dom() == b.dom() && a.cod() == b.cod();
  }
  return false;
}

bool operator<(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case Type::Kind::kAtom:
    case Type::Kind::kVar:
      return a.name() < b.name();
    case Type::Kind::kBottom:
      return false;
    case Type::Kind::kArrow:
      if (a.dom() != b.dom()) return a.dom() < b.dom();
      return a.cod() < b.cod();
  }
  return false;
}

namespace {

bool is_neg(const Type& t) { return t.is_arrow() && t.cod().is_bottom(); }

void print(const Type& t, bool prefix_level, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::kAtom:
    case Type::Kind::kVar:
      out += t.name();
      return;
    case Type::Kind::kBottom:
      out += "bot";
      return;
    case Type::Kind::kArrow:
      if (is_neg(t)) {
        out += '~';
        print(t.dom(), true, out);
        return;
      }
      if (prefix_level) out += '(';
      print(t.dom(), true, out);
      out += " -> ";
      print(t.cod(), false, out);
      if (prefix_level) out += ')';
      return;
  }
}

void collect_vars(const Type& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
  } else if (t.is_arrow()) {
    collect_vars(t.dom(), out);
    collect_vars(t.cod(), out);
  }
}

void collect_subterms(const Type& t, TypePath& path,
                      std::vector<std::pair<TypePath, Type>>& out) {
  out.emplace_back(path, t);
  if (!t.is_arrow()) return;
  path.push_back(Side::kDom);
  collect_subterms(t.dom(), path, out);
  path.back() = Side::kCod;
  collect_subterms(t.cod(), path, out);
  path.pop_back();
}

Type replace_from(const Type& t, const TypePath& path, std::size_t i, const Type& r) {
  if (i == path.size()) return r;
  if (path[i] == Side::kDom) return Type::arrow(replace_from(t.dom(), path, i + 1, r), t.cod());
  return Type::arrow(t.dom(), replace_from(t.cod(), path, i + 1, r));
}

}  // namespace

std::string to_string(const Type& t) {
  std::string out;
  print(t, false, out);
  return out;
}

std::string to_string(const TypePath& path) {
  if (path.empty()) return "root";
  std::string out;
  for (Side s : path) {
    if (!out.empty()) out += '.';
    out += s == Side::kDom ? "dom" : "cod";
  }
  return out;
}

std::set<std::string> type_vars(const Type& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

const Type& subtype_at(const Type& t, const TypePath& path) {
  const Type* cur = &t;
  for (Side s : path) cur = s == Side::kDom ? &cur->dom() : &cur->cod();
  return *cur;
}

Type replace_at(const Type& t, const TypePath& path, const Type& replacement) {
  return replace_from(t, path, 0, replacement);
}

std::vector<std::pair<TypePath, Type>> subterms(const Type& t) {
  std::vector<std::pair<TypePath, Type>> out;
  TypePath path;
  collect_subterms(t, path, out);
  return out;
}

}  // namespace recmu
