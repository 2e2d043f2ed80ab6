#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "recmu/congruence.hpp"
#include "recmu/type.hpp"

namespace recmu {

enum class Sign : unsigned char { kPositive, kNegative };

inline Sign flip(Sign s) { return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive; }
inline Sign compose(Sign a, Sign b) { return a == b ? Sign::kPositive : Sign::kNegative; }
const char* sign_symbol(Sign s);

/// Polarities at which a variable occurs in a type. Empty means absent.
struct PolaritySet {
  bool positive = false;
  bool negative = false;

  bool empty() const { return !positive && !negative; }
  bool contains(Sign s) const { return s == Sign::kPositive ? positive : negative; }
  /// Membership in T^s(X): no occurrence of the opposite sign.
  bool only(Sign s) const { return !contains(flip(s)); }
  friend bool operator==(const PolaritySet&, const PolaritySet&) = default;
};

std::string to_string(const PolaritySet& p);

PolaritySet polarity(const Type& t, const std::string& x);

/// Sign of the position reached by path (one flip per domain step).
Sign path_sign(const TypePath& path);

/// Edge src -> dst of the signed dependency graph (indices in declaration
/// order). path locates the occurrence in F_src; when collapsed is set the
/// subterm there is not X_dst itself but a type congruent to it.
struct DependencyEdge {
  std::size_t src;
  std::size_t dst;
  Sign sign;
  TypePath path;
  bool collapsed;
};

/// Edges from plain occurrences plus one edge for every subterm S of an F_i
/// and every defined X_m with S ~ X_m. Deduplicated on (src, dst, sign).
std::vector<DependencyEdge> dependency_edges(const CongruenceIndex& index);

struct Violation {
  std::string variable;
  /// A type congruent to the variable with a negative occurrence of it.
  Type witness;
  TypePath path;
  /// Variables visited by the offending closed walk, starting and ending at variable.
  std::vector<std::string> cycle;
};

struct GoodnessResult {
  bool good = true;
  std::vector<Violation> violations;
};

GoodnessResult check_goodness(const CongruenceIndex& index);

/// The order analysis of a good system. Variables are referred to by
/// declaration index; classes are numbered bottom-up in a topological order
/// of < with ties broken by smallest member.
struct AnalysisReport {
  bool good = true;
  std::vector<Violation> violations;
  std::vector<std::string> variables;
  /// leq[i][j] holds iff i <= j, i.e. X_i is reachable from X_j.
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
  /// Pairs (a, b) with class a < class b, transitively closed.
  std::vector<std::pair<std::size_t, std::size_t>> class_order;
  struct Split {
    std::vector<std::size_t> plus;
    std::vector<std::size_t> minus;
  };
  std::vector<Split> split;

  bool less(std::size_t class_a, std::size_t class_b) const;
  /// "X1 ~ X2 < X3 < X4 ~ X5" when the classes form a chain, otherwise the
  /// covering pairs of < separated by commas.
  std::string order_string() const;
};

/// Throws kNotGood when the system is not good.
AnalysisReport order_analysis(const CongruenceIndex& index);

/// Number of nodes of the syntax tree.
std::size_t lg(const Type& t);

/// t in T_c^eps for the class c, taken relative to the class representative:
/// defined variables of t lie in classes <= c, members of the eps block occur
/// only with sign eps and members of the other block only with the opposite
/// sign. Throws kUnknownClass on a bad class id.
bool class_membership(const Type& t, std::size_t class_id, Sign eps,
                      const AnalysisReport& report);

}  // namespace recmu
