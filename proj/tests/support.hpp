#pragma once

// Test-only helpers: random generators and independent oracles.

#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "recmu/congruence.hpp"
#include "recmu/equations.hpp"
#include "recmu/term.hpp"
#include "recmu/typecheck.hpp"
#include "recmu/type.hpp"

namespace recmu::testing {

std::string corpus_dir();
std::string read_text(const std::string& path);
EquationSystem system_from(const std::string& src);
EquationSystem corpus_system(const std::string& relative);

// Random type over the given leaves with exactly `size` nodes (size odd).
Type random_type(std::mt19937& rng, const std::vector<Type>& leaves, std::size_t size);
// Random type with at most max_size nodes.
Type random_type_upto(std::mt19937& rng, const std::vector<Type>& leaves, std::size_t max_size);

// Leaves for a system: its defined and free variables plus atoms.
std::vector<Type> leaves_of(const EquationSystem& sys);

// Every type reachable from t by one rewrite X_i -> F_i or F_i -> X_i at any position.
std::vector<Type> rewrite_neighbours(const EquationSystem& sys, const Type& t);

// Bidirectional breadth-first search for a rewrite conversion of length at
// most depth. Returns the length found, if any.
std::optional<std::size_t> rewrite_oracle(const EquationSystem& sys, const Type& u, const Type& v,
                                          std::size_t depth, std::size_t frontier_cap = 20000);

// Types reachable from t within depth rewrites (frontier capped).
std::vector<Type> rewrite_closure(const EquationSystem& sys, const Type& t, std::size_t depth,
                                  std::size_t cap = 5000);

// Random walk of k rewrites from t.
Type random_rewrite(std::mt19937& rng, const EquationSystem& sys, const Type& t, std::size_t k);

// Generates typable annotated terms; free variables it invents are recorded
// in bindings (lambda-variables) and mu_bindings.
struct TermGenerator {
  const CongruenceIndex& index;
  std::mt19937& rng;
  bool with_mu = true;
  std::size_t max_depth = 4;
  std::vector<Type> small_types;

  std::vector<std::pair<std::string, Type>> lambda_scope;
  std::vector<std::pair<std::string, Type>> mu_scope;
  std::vector<ContextBinding> free_lambda;
  std::vector<ContextBinding> free_mu;  // types stored as U of ~U
  int counter = 0;

  TermGenerator(const CongruenceIndex& idx, std::mt19937& r, std::vector<Type> types, bool mu);

  Term generate(const Type& t, std::size_t depth);
  Context context() const;

 private:
  std::string fresh(const char* prefix);
  Term leaf(const Type& t);
  Term bottom(std::size_t depth);
};

// Independent nameless beta reducer (lambda fragment only).
struct DbTerm;
using DbPtr = std::shared_ptr<const DbTerm>;
struct DbTerm {
  enum Kind { kVar, kFree, kLam, kApp } kind;
  int index = 0;        // kVar
  std::string name;     // kFree
  DbPtr a, b;           // kLam body in a; kApp fun a, arg b
};
DbPtr to_db(const Term& t);
std::string db_key(const DbPtr& t);
std::vector<DbPtr> db_reducts(const DbPtr& t);
// Longest reduction by plain depth-first enumeration of all sequences;
// empty if more than budget sequences nodes are visited.
std::optional<std::size_t> db_longest(const DbPtr& t, std::size_t budget = 2000000);
// All normal forms reachable, as keys.
std::set<std::string> db_normal_forms(const DbPtr& t, std::size_t budget = 200000);

}  // namespace recmu::testing
