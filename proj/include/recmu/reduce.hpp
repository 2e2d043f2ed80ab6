#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "recmu/equations.hpp"
#include "recmu/term.hpp"

namespace recmu {

enum class Rule : unsigned char { kBeta, kMu };
const char* rule_name(Rule r);

struct Redex {
  TermPosition position;
  Rule rule;
};

/// Rule of the redex at the root of t, if t is one.
std::optional<Rule> redex_rule(const Term& t);

/// All redexes in pre-order; the first one is the leftmost-outermost.
std::vector<Redex> redexes(const Term& t);

/// Contracts the redex at pos. For the mu rule the binder annotation U -> V
/// becomes V; when the annotation is not syntactically an arrow it is unfolded
/// through eqs (if given). Throws kNotARedex.
Term step(const Term& m, const TermPosition& pos, const EquationSystem* eqs = nullptr);

struct Reduct {
  Redex redex;
  Term term;
};

std::vector<Reduct> one_step_reducts(const Term& m, const EquationSystem* eqs = nullptr);

struct TraceStep {
  TermPosition position;
  Rule rule;
  Term before;
  Term after;
};

struct ReductionTrace {
  Term start;
  std::vector<TraceStep> steps;
  /// The last term has no redex.
  bool terminated = false;
  std::size_t fuel_spent = 0;

  const Term& result() const { return steps.empty() ? start : steps.back().after; }
};

enum class Strategy { kLeftmostOutermost, kExhaustive };

/// Follows the leftmost-outermost redex. Fuel counts steps. Stops with
/// terminated = false when fuel runs out; never throws for that.
ReductionTrace trace_leftmost(const Term& m, std::size_t fuel,
                              const EquationSystem* eqs = nullptr);

/// The reachable part of the reduction graph, memoized on alpha-canonical keys.
struct ReductionGraph {
  std::vector<Term> nodes;  // nodes[0] is the start term
  std::vector<std::vector<std::size_t>> successors;
  /// Every node was expanded within fuel.
  bool closed = false;
  /// Only meaningful when closed.
  bool acyclic = false;
  std::vector<std::size_t> normal_forms;
};

/// Fuel counts distinct terms.
ReductionGraph explore(const Term& m, std::size_t fuel, const EquationSystem* eqs = nullptr);

/// Normal form of m. Exhaustive mode also requires the whole graph to close
/// without cycles and to have exactly one normal form. Throws kFuelExhausted.
Term normalize(const Term& m, Strategy strategy, std::size_t fuel,
               const EquationSystem* eqs = nullptr);

struct Metrics {
  /// Longest reduction length; empty when the graph did not close or has a cycle.
  std::optional<std::size_t> eta;
  std::size_t cxty = 0;
};

/// Structural complexity: number of term nodes.
std::size_t cxty(const Term& m);

Metrics eta_metric(const Term& m, std::size_t fuel, const EquationSystem* eqs = nullptr);

struct SubtermSet {
  std::vector<Term> terms;  // one representative per alpha class
  /// The reduction graph closed within fuel and has no cycle.
  bool complete = false;
};

SubtermSet subterms_of_reducts(const Term& m, std::size_t fuel,
                               const EquationSystem* eqs = nullptr);

struct SnVerdict {
  bool sn = false;
  std::size_t eta = 0;  // when sn
  /// Why the verdict is not SN: "fuel" or "cycle".
  std::string reason;
  std::size_t explored = 0;
};

SnVerdict sn_probe(const Term& m, std::size_t fuel, const EquationSystem* eqs = nullptr);

}  // namespace recmu
