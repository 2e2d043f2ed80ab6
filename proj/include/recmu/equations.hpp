#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "recmu/type.hpp"

namespace recmu {

/// A finite family of recursive type equations X_i = F_i together with the
/// declared atomic constants and free (constant-like) type variables.
///
/// Variables keep their declaration order; that order is the index order used
/// by the positivity analysis.
class EquationSystem {
 public:
  void declare_atom(const std::string& name);
  void declare_free(const std::string& name);
  /// Throws kMalformedSystem if name already has a definition.
  void define(const std::string& name, Type rhs);

  /// Every variable on a right-hand side must be defined or declared free,
  /// and every atom must be declared. Throws kMalformedSystem otherwise.
  void validate() const;

  bool empty() const { return order_.empty(); }
  std::size_t size() const { return order_.size(); }

  /// Defined variables in declaration order.
  const std::vector<std::string>& variables() const { return order_; }
  const Type& definition(std::size_t index) const { return defs_.at(order_.at(index)); }
  const Type* definition(const std::string& name) const;
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool is_defined(const std::string& name) const { return defs_.count(name) != 0; }

  const std::set<std::string>& atoms() const { return atoms_; }
  const std::set<std::string>& free_variables() const { return free_; }

  /// One line per declaration, in a form parse_equations accepts.
  std::string to_source() const;

 private:
  std::vector<std::string> order_;
  std::map<std::string, Type> defs_;
  std::set<std::string> atoms_;
  std::set<std::string> free_;
};

}  // namespace recmu
