#include "recmu/equations.hpp"

#include "recmu/error.hpp"

namespace recmu {

namespace {

void check_atoms(const Type& t, const std::set<std::string>& atoms, const std::string& owner) {
  if (t.is_atom() && !atoms.count(t.name())) {
    throw Error(ErrorCode::kMalformedSystem,
                "undeclared atom '" + t.name() + "' in the equation of " + owner);
  }
  if (t.is_arrow()) {
    check_atoms(t.dom(), atoms, owner);
    check_atoms(t.cod(), atoms, owner);
  }
}

}  // namespace

void EquationSystem::declare_atom(const std::string& name) {
  if (defs_.count(name) || free_.count(name)) {
    throw Error(ErrorCode::kMalformedSystem, "'" + name + "' is already declared as a variable");
  }
  atoms_.insert(name);
}

void EquationSystem::declare_free(const std::string& name) {
  if (defs_.count(name)) {
    throw Error(ErrorCode::kMalformedSystem,
                "'" + name + "' has an equation and cannot be declared free");
  }
  if (atoms_.count(name)) {
    throw Error(ErrorCode::kMalformedSystem, "'" + name + "' is already declared as an atom");
  }
  free_.insert(name);
}

void EquationSystem::define(const std::string& name, Type rhs) {
  if (defs_.count(name)) {
    throw Error(ErrorCode::kMalformedSystem, "second equation for '" + name + "'");
  }
  if (atoms_.count(name) || free_.count(name)) {
    throw Error(ErrorCode::kMalformedSystem,
                "'" + name + "' is declared as an atom or free variable");
  }
  order_.push_back(name);
  defs_.emplace(name, std::move(rhs));
}

void EquationSystem::validate() const {
  for (const auto& name : order_) {
    const Type& rhs = defs_.at(name);
    check_atoms(rhs, atoms_, name);
    for (const auto& v : type_vars(rhs)) {
      if (!defs_.count(v) && !free_.count(v)) {
        throw Error(ErrorCode::kMalformedSystem, "variable '" + v + "' in the equation of " +
                                                     name + " is neither defined nor free");
      }
    }
  }
}

const Type* EquationSystem::definition(const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

std::optional<std::size_t> EquationSystem::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (order_[i] == name) return i;
  }
  return std::nullopt;
}

std::string EquationSystem::to_source() const {
  std::string out;
  if (!atoms_.empty()) {
    out += "atom";
    for (const auto& a : atoms_) out += " " + a;
    out += '\n';
  }
  if (!free_.empty()) {
    out += "free";
    for (const auto& f : free_) out += " " + f;
    out += '\n';
  }
  for (const auto& name : order_) out += name + " = " + to_string(defs_.at(name)) + "\n";
  return out;
}

}  // namespace recmu
