#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "recmu/type.hpp"

namespace recmu {

/// Church-annotated lambda/lambda-mu terms.
///
/// lambda-variables (Var, Lam) and mu-variables (Mu, Name) live in disjoint
/// namespaces. A Mu binder's annotation is the type U for which the bound
/// mu-variable has type ~U.
class Term {
 public:
  enum class Kind { kVar, kLam, kApp, kMu, kName };

  static Term var(std::string x);
  static Term lam(std::string x, Type annotation, Term body);
  static Term app(Term fun, Term arg);
  static Term mu(std::string a, Type annotation, Term body);
  static Term name(std::string a, Term arg);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_lam() const { return kind() == Kind::kLam; }
  bool is_app() const { return kind() == Kind::kApp; }
  bool is_mu() const { return kind() == Kind::kMu; }
  bool is_name() const { return kind() == Kind::kName; }

  /// Variable name, binder name, or the mu-variable of a Name node.
  const std::string& ident() const;
  /// Binder annotation of Lam and Mu.
  const Type& annotation() const;
  /// Sole child of Lam, Mu and Name.
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  std::size_t child_count() const;
  const Term& child(std::size_t i) const;

  /// Structural complexity: number of term nodes.
  std::size_t size() const;

  /// Syntactic equality including bound names.
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Child-index path from the root (Lam/Mu/Name: 0 = body; App: 0 = fun, 1 = arg).
using TermPosition = std::vector<std::uint8_t>;

std::string to_string(const TermPosition& pos);

/// Prints in the concrete syntax. Shadowing binders are renamed so the
/// output always re-parses to an alpha-equivalent term.
std::string to_string(const Term& t);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_mu_vars(const Term& t);
/// Every identifier occurring anywhere in t, bound or free, in both namespaces.
std::set<std::string> all_names(const Term& t);

bool alpha_eq(const Term& a, const Term& b);

/// Nameless rendering: two terms have the same key iff they are alpha-equivalent.
std::string canonical_key(const Term& t);

/// Capture-avoiding m[x := n].
Term subst(const Term& m, const std::string& x, const Term& n);

/// m[a = n]: every Name(a, P) with a free becomes Name(a, P' n), P' = P[a = n].
Term mu_subst(const Term& m, const std::string& a, const Term& n);

/// base, or base with a numeric suffix, not contained in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

const Term& subterm_at(const Term& t, const TermPosition& pos);
Term replace_at(const Term& t, const TermPosition& pos, const Term& replacement);

}  // namespace recmu
