#include "recmu/congruence.hpp"

#include <algorithm>

#include "recmu/error.hpp"

namespace recmu {

ArrowParts unfold_arrow(const EquationSystem& system, const Type& t) {
  std::vector<std::string> visited;
  Type cur = t;
  while (true) {
    if (cur.is_arrow()) return {cur.dom(), cur.cod()};
    if (cur.is_var()) {
      const Type* def = system.definition(cur.name());
      if (def != nullptr) {
        if (std::find(visited.begin(), visited.end(), cur.name()) != visited.end()) {
          std::string cycle;
          for (const auto& v : visited) cycle += v + " -> ";
          cycle += cur.name();
          throw Error(ErrorCode::kNotAFunctionType,
                      "type " + to_string(t) + " is not a function type: variable cycle " + cycle +
                          " reaches no arrow");
        }
        visited.push_back(cur.name());
        cur = *def;
        continue;
      }
    }
    std::string what = cur.is_bottom()  ? "bot is atomic"
                       : cur.is_atom() ? "atom " + cur.name() + " is atomic"
                                       : "variable " + cur.name() + " has no equation";
    throw Error(ErrorCode::kNotAFunctionType,
                "type " + to_string(t) + " is not a function type: " + what);
  }
}

CongruenceIndex::CongruenceIndex(EquationSystem system) : system_(std::move(system)) {
  system_.validate();
  for (std::size_t i = 0; i < system_.size(); ++i) {
    NodeId lhs = intern(Type::var(system_.variables()[i]));
    NodeId rhs = intern(system_.definition(i));
    merge(lhs, rhs);
  }
}

CongruenceIndex::NodeId CongruenceIndex::find(NodeId id) const {
  while (parent_[id] != id) id = parent_[id];
  return id;
}

std::pair<CongruenceIndex::NodeId, CongruenceIndex::NodeId> CongruenceIndex::signature(
    NodeId arrow) const {
  return {find(nodes_[arrow].dom), find(nodes_[arrow].cod)};
}

std::optional<CongruenceIndex::NodeId> CongruenceIndex::find_node(const Type& t) const {
  auto it = by_type_.find(t);
  if (it == by_type_.end()) return std::nullopt;
  return it->second;
}

CongruenceIndex::NodeId CongruenceIndex::intern(const Type& t) {
  if (frozen_) throw Error(ErrorCode::kIndexFrozen, "intern() called on a frozen index");
  if (auto it = by_type_.find(t); it != by_type_.end()) return it->second;

  Node node{t};
  if (t.is_arrow()) {
    node.dom = intern(t.dom());
    node.cod = intern(t.cod());
  }
  const NodeId id = nodes_.size();
  nodes_.push_back(node);
  parent_.push_back(id);
  rank_.push_back(0);
  min_id_.push_back(id);
  uses_.emplace_back();
  by_type_.emplace(t, id);

  if (t.is_arrow()) {
    NodeId d = find(node.dom);
    NodeId c = find(node.cod);
    uses_[d].push_back(id);
    if (c != d) uses_[c].push_back(id);
    auto [it, inserted] = signatures_.try_emplace({d, c}, id);
    if (!inserted) merge(id, it->second);
  }
  return id;
}

void CongruenceIndex::merge(NodeId a, NodeId b) {
  std::vector<std::pair<NodeId, NodeId>> pending{{a, b}};
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    NodeId rx = find(x);
    NodeId ry = find(y);
    if (rx == ry) continue;
    if (rank_[rx] < rank_[ry]) std::swap(rx, ry);

    std::vector<NodeId> moved = std::move(uses_[ry]);
    uses_[ry].clear();
    for (NodeId u : moved) {
      auto it = signatures_.find(signature(u));
      if (it != signatures_.end() && it->second == u) signatures_.erase(it);
    }
    parent_[ry] = rx;
    if (rank_[rx] == rank_[ry]) ++rank_[rx];
    min_id_[rx] = std::min(min_id_[rx], min_id_[ry]);
    for (NodeId u : moved) {
      auto [it, inserted] = signatures_.try_emplace(signature(u), u);
      if (!inserted && find(it->second) != find(u)) pending.emplace_back(u, it->second);
    }
    uses_[rx].insert(uses_[rx].end(), moved.begin(), moved.end());
  }
}

std::string CongruenceIndex::class_key(const Type& t) const {
  if (auto it = by_type_.find(t); it != by_type_.end()) {
    return "#" + std::to_string(find(it->second));
  }
  if (!t.is_arrow()) {
    // A constant never interned is alone in its class.
    return std::string(t.is_var() ? "V:" : "A:") + t.name();
  }
  std::string d = class_key(t.dom());
  std::string c = class_key(t.cod());
  if (d[0] == '#' && c[0] == '#') {
    auto it = signatures_.find({std::stoul(d.substr(1)), std::stoul(c.substr(1))});
    if (it != signatures_.end()) return "#" + std::to_string(find(it->second));
  }
  return "(" + d + "," + c + ")";
}

bool CongruenceIndex::decide(const Type& u, const Type& v) const {
  if (u == v) return true;
  return class_key(u) == class_key(v);
}

std::optional<std::pair<std::pair<Type, Type>, std::pair<Type, Type>>> CongruenceIndex::decompose(
    const Type& u, const Type& v) const {
  if (!u.is_arrow() || !v.is_arrow()) {
    throw Error(ErrorCode::kArityMismatch, "decompose expects two arrow types, got " +
                                               to_string(u) + " and " + to_string(v));
  }
  if (!decide(u, v)) return std::nullopt;
  return std::make_pair(std::make_pair(u.dom(), v.dom()), std::make_pair(u.cod(), v.cod()));
}

std::vector<std::string> CongruenceIndex::defined_equivalents(const Type& t) const {
  std::vector<std::string> out;
  const std::string key = class_key(t);
  for (const auto& name : system_.variables()) {
    if (class_key(Type::var(name)) == key) out.push_back(name);
  }
  return out;
}

std::vector<std::vector<Type>> CongruenceIndex::classes() const {
  std::map<NodeId, std::vector<Type>> by_root;
  std::vector<NodeId> order;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    NodeId r = find(id);
    if (!by_root.count(r)) order.push_back(r);
    by_root[r].push_back(nodes_[id].type);
  }
  std::vector<std::vector<Type>> out;
  for (NodeId r : order) out.push_back(std::move(by_root[r]));
  return out;
}

}  // namespace recmu
