#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recmu/equations.hpp"
#include "recmu/type.hpp"

namespace recmu {

/// The arrow a type unfolds to at its head.
struct ArrowParts {
  Type dom;
  Type cod;
};

/// Follows defining equations at the head of t until an arrow appears.
/// Throws kNotAFunctionType for atoms, bot, undefined variables and cycles of
/// bare variables (the cycle is listed in the message).
ArrowParts unfold_arrow(const EquationSystem& system, const Type& t);

/// Decides U ~ V in the least congruence generated by an EquationSystem.
///
/// Congruence closure (union-find plus a signature table) over the ground
/// equations X_i = F_i, with atoms and type variables as constants and the
/// arrow as the only binary constructor.
///
/// Threading: intern() is the only mutating operation. Every const member,
/// decide() included, is a pure lookup that never interns, so any number of
/// threads may query concurrently provided nobody interns at the same time.
/// freeze() makes that explicit: after it, intern() throws kIndexFrozen.
class CongruenceIndex {
 public:
  using NodeId = std::size_t;

  explicit CongruenceIndex(EquationSystem system);

  const EquationSystem& system() const { return system_; }

  /// Adds t and its subterms as nodes. Monotone: existing classes only grow.
  NodeId intern(const Type& t);
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  /// u ~ v. Subterms that were never interned are classified through the
  /// signature table, which gives the same answer interning would.
  bool decide(const Type& u, const Type& v) const;

  /// Equality of two interned nodes.
  bool same_class(NodeId a, NodeId b) const { return find(a) == find(b); }

  ArrowParts head_arrow(const Type& u) const { return unfold_arrow(system_, u); }

  /// Component pairs (U1, U2), (V1, V2) of U1 -> V1 ~ U2 -> V2, if equal.
  /// Throws kArityMismatch unless both inputs are syntactic arrows.
  std::optional<std::pair<std::pair<Type, Type>, std::pair<Type, Type>>> decompose(
      const Type& u, const Type& v) const;

  /// Defined variables X with X ~ t, in declaration order.
  std::vector<std::string> defined_equivalents(const Type& t) const;

  /// Interned types grouped by class; each group ordered by node id, groups
  /// ordered by their smallest id.
  std::vector<std::vector<Type>> classes() const;

  std::size_t node_count() const { return nodes_.size(); }
  const Type& node_type(NodeId id) const { return nodes_[id].type; }
  std::optional<NodeId> find_node(const Type& t) const;
  /// Smallest node id in the class of an interned node.
  NodeId representative(NodeId id) const { return min_id_[find(id)]; }

 private:
  struct Node {
    Type type;
    // Child node ids; only meaningful for arrows.
    NodeId dom = 0;
    NodeId cod = 0;
  };

  struct PairHash {
    std::size_t operator()(const std::pair<NodeId, NodeId>& p) const {
      return p.first * 0x9e3779b97f4a7c15ULL ^ p.second;
    }
  };

  NodeId find(NodeId id) const;
  void merge(NodeId a, NodeId b);
  std::pair<NodeId, NodeId> signature(NodeId arrow) const;
  // Class key for possibly un-interned types: "#root" or a structural key.
  std::string class_key(const Type& t) const;

  EquationSystem system_;
  bool frozen_ = false;
  std::vector<Node> nodes_;
  std::vector<NodeId> parent_;
  std::vector<std::size_t> rank_;
  std::vector<NodeId> min_id_;
  // Arrow nodes having a child in the class, indexed by root.
  std::vector<std::vector<NodeId>> uses_;
  std::unordered_map<Type, NodeId, TypeHash> by_type_;
  std::unordered_map<std::pair<NodeId, NodeId>, NodeId, PairHash> signatures_;
};

}  // namespace recmu
