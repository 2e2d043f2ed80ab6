#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "recmu/equations.hpp"
#include "recmu/reduce.hpp"
#include "recmu/term.hpp"
#include "recmu/typecheck.hpp"

namespace recmu {

/// X = ~~X for every variable in vars; no atoms besides bot.
EquationSystem target_system(const std::set<std::string>& vars);

/// Type variables in the annotations of m and the types of ctx.
std::set<std::string> source_type_vars(const Context& ctx, const Term& m);

/// The closed eliminator M_t, of type ~~t -> t under target_system.
/// Throws kUnsupportedType if t contains an atom.
Term build_mt(const Type& t);

struct Translation {
  Term term;
  /// Source type of m, which is also the type of term under the target system.
  Type type;
  EquationSystem target;
  /// Context of term: lambda bindings kept, each a : ~U turned into a' : ~U.
  Context context;
  /// Lambda name chosen for each free mu-variable.
  std::map<std::string, std::string> mu_names;
};

/// Type-checks m under ctx without equations (kUntypable on failure), then
/// maps mu-binders and named terms to lambda-terms through the M_U family.
Translation translate(const Context& ctx, const Term& m);

/// Structural translation with a fixed choice of names for the free
/// mu-variables; bound mu-variables get fresh lambda names.
Term translate_with(const Term& m, const std::map<std::string, std::string>& mu_names);

struct SimulationStep {
  Rule rule;
  TermPosition position;
  Term source_reduct;
  Term target_reduct;
  /// Length of the shortest target reduction found.
  std::size_t target_steps;
};

struct TranslationReport {
  Translation translation;
  bool type_preserved = false;
  std::vector<SimulationStep> simulations;
};

/// Checks that the translation keeps the type and that every one-step
/// reduct of m is reached from the translation of m in one or more steps,
/// searching at most `fuel` distinct target terms per reduct. Throws
/// kTypePreservationFailure or kSimulationFailure.
TranslationReport verify_translation(const Context& ctx, const Term& m, std::size_t fuel = 5000);

}  // namespace recmu
