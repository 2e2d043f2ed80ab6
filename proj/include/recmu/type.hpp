#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace recmu {

/// Simple types over atomic constants, type variables, the arrow and bottom.
///
/// Values are immutable and cheap to copy (shared nodes). Equality is purely
/// syntactic; equality modulo a set of recursive equations is answered by
/// CongruenceIndex.
class Type {
 public:
  enum class Kind { kAtom, kVar, kArrow, kBottom };

  static Type atom(std::string name);
  static Type var(std::string name);
  static Type arrow(Type dom, Type cod);
  static Type bottom();
  /// ~t, i.e. t -> bot. Not a separate constructor.
  static Type neg(Type t);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::kAtom; }
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_arrow() const { return kind() == Kind::kArrow; }
  bool is_bottom() const { return kind() == Kind::kBottom; }

  /// Name of an atom or variable; empty otherwise.
  const std::string& name() const;
  const Type& dom() const;
  const Type& cod() const;

  /// Number of syntax-tree nodes (leaves count 1, an arrow 1 + both sides).
  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  /// Arbitrary but deterministic total order, for use in ordered containers.
  friend bool operator<(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

/// Which side of an arrow a path step descends into.
enum class Side : unsigned char { kDom, kCod };
using TypePath = std::vector<Side>;

std::string to_string(const Type& t);
std::string to_string(const TypePath& path);

/// Type variables occurring in t.
std::set<std::string> type_vars(const Type& t);

const Type& subtype_at(const Type& t, const TypePath& path);
/// Copy of t with the subtree at path replaced by replacement.
Type replace_at(const Type& t, const TypePath& path, const Type& replacement);

/// Every subterm with its path, pre-order.
std::vector<std::pair<TypePath, Type>> subterms(const Type& t);

}  // namespace recmu
