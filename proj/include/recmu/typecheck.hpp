#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "recmu/congruence.hpp"
#include "recmu/parse.hpp"
#include "recmu/term.hpp"
#include "recmu/type.hpp"

namespace recmu {

/// Persistent typing context: extension shares the tail, nothing is mutated.
/// A mu-variable a : ~U is stored with U.
class Context {
 public:
  Context() = default;

  /// Splits bindings into lambda- and mu-variables according to how term uses
  /// each name. A mu-variable must be declared with a type of the form ~U.
  static Context from_bindings(const std::vector<ContextBinding>& bindings, const Term& term);

  Context with_lambda(const std::string& x, Type t) const;
  Context with_mu(const std::string& a, Type u) const;

  const Type* lambda(const std::string& x) const;
  const Type* mu(const std::string& a) const;

  std::map<std::string, Type> lambda_bindings() const;
  std::map<std::string, Type> mu_bindings() const;

 private:
  struct Link {
    std::string name;
    Type type;
    bool is_mu;
    std::shared_ptr<const Link> next;
  };
  const Type* lookup(const std::string& name, bool is_mu) const;

  std::shared_ptr<const Link> head_;
};

/// Synthesizes the type of an annotated term (rules ax, ->i, ->e with the
/// congruence folded into application, and the two bot rules for mu and
/// named terms). Throws kUnboundVariable, kNotAFunctionType,
/// kArgumentTypeMismatch, kMuBodyNotBottom or kNamedTermTypeMismatch.
Type infer(const Context& ctx, const Term& m, const CongruenceIndex& index);

/// infer(ctx, m) ~ expected.
bool check(const Context& ctx, const Term& m, const Type& expected, const CongruenceIndex& index);

struct Judgment {
  Term term;
  Type type;
};

/// Explores up to `steps` distinct reducts breadth-first (all redexes),
/// re-infers each and compares with the type of m. The first element of the
/// result is m itself. Throws kSubjectReductionViolation on a mismatch.
std::vector<Judgment> subject_reduction_probe(const Context& ctx, const Term& m,
                                              const CongruenceIndex& index, std::size_t steps);

}  // namespace recmu
