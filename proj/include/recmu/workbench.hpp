#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recmu/congruence.hpp"
#include "recmu/error.hpp"
#include "recmu/parse.hpp"
#include "recmu/positivity.hpp"
#include "recmu/reduce.hpp"
#include "recmu/typecheck.hpp"

namespace recmu {

/// RECMU_FUEL from the environment, else 10000.
std::size_t default_fuel();

struct Settings {
  std::size_t fuel = default_fuel();
  Strategy strategy = Strategy::kLeftmostOutermost;
};

/// An equation system with its frozen congruence index, cached goodness
/// verdict and a typing context. Every report method returns a JSON document;
/// verdict-bearing reports have a boolean "verdict" field.
class Workspace {
 public:
  explicit Workspace(EquationSystem system, Settings settings = {});
  static Workspace from_source(std::string_view equations);

  void set_context(std::string_view context_source);
  Settings& settings() { return settings_; }
  const Settings& settings() const { return settings_; }

  const EquationSystem& system() const { return index_.system(); }
  const CongruenceIndex& index() const { return index_; }
  const GoodnessResult& goodness() const { return goodness_; }

  Term parse_term(std::string_view src) const;
  Type parse_type(std::string_view src) const;
  Context context_for(const Term& t) const { return Context::from_bindings(bindings_, t); }

  std::string check_json(std::string_view term, const std::optional<std::string>& expect) const;
  std::string equiv_json(std::string_view left, std::string_view right) const;
  std::string goodness_json() const;
  std::string analyze_json() const;
  std::string normalize_json(std::string_view term) const;
  /// A JSON array of {rule, position, term}, term being the result of the step.
  std::string trace_json(std::string_view term) const;
  std::string eta_json(std::string_view term) const;
  std::string sn_json(std::string_view term) const;
  std::string translate_json(std::string_view term, bool verify) const;

 private:
  CongruenceIndex index_;
  GoodnessResult goodness_;
  Settings settings_;
  std::vector<ContextBinding> bindings_;
};

std::string corpus_json(const std::string& dir, const std::string& filter, std::size_t fuel);

/// {"error": {"code": ..., "message": ...}}
std::string error_json(const Error& e);

}  // namespace recmu
