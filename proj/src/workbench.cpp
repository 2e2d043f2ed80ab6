#include "recmu/workbench.hpp"

#include <cstdlib>

#include <json.hpp>

#include "recmu/corpus.hpp"
#include "recmu/translate.hpp"

using nlohmann::json;

namespace recmu {

std::size_t default_fuel() {
  if (const char* env = std::getenv("RECMU_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10000;
}

namespace {

json error_object(const Error& e) {
  return {{"code", error_code_name(e.code())}, {"message", e.what()}};
}

json position_json(const TermPosition& pos) {
  json a = json::array();
  for (auto p : pos) a.push_back(static_cast<int>(p));
  return a;
}

json violation_json(const Violation& v) {
  return {{"variable", v.variable},
          {"witness", to_string(v.witness)},
          {"path", to_string(v.path)},
          {"cycle", v.cycle}};
}

const char* strategy_name(Strategy s) {
  return s == Strategy::kLeftmostOutermost ? "leftmost-outermost" : "exhaustive";
}

}  // namespace

Workspace::Workspace(EquationSystem system, Settings settings)
    : index_(std::move(system)), goodness_(), settings_(settings) {
  index_.freeze();
  goodness_ = check_goodness(index_);
}

Workspace Workspace::from_source(std::string_view equations) {
  return Workspace(parse_equations(equations));
}

void Workspace::set_context(std::string_view context_source) {
  bindings_ = parse_context(context_source, system().atoms());
}

Term Workspace::parse_term(std::string_view src) const {
  return parse_program(src, system().atoms());
}

Type Workspace::parse_type(std::string_view src) const {
  return recmu::parse_type(src, system().atoms());
}

std::string Workspace::check_json(std::string_view src,
                                  const std::optional<std::string>& expect) const {
  Term t = parse_term(src);
  std::optional<Type> expected;
  if (expect) expected = parse_type(*expect);
  json out{{"command", "check"}, {"term", to_string(t)}};
  out["expected"] = expected ? json(to_string(*expected)) : json(nullptr);
  try {
    Type ty = infer(context_for(t), t, index_);
    out["type"] = to_string(ty);
    out["verdict"] = expected ? index_.decide(ty, *expected) : true;
    out["error"] = nullptr;
  } catch (const Error& e) {
    out["type"] = nullptr;
    out["verdict"] = false;
    out["error"] = error_object(e);
  }
  return out.dump();
}

std::string Workspace::equiv_json(std::string_view left, std::string_view right) const {
  Type u = parse_type(left);
  Type v = parse_type(right);
  json out{{"command", "equiv"},
           {"left", to_string(u)},
           {"right", to_string(v)},
           {"verdict", index_.decide(u, v)}};
  return out.dump();
}

std::string Workspace::goodness_json() const {
  json edges = json::array();
  for (const auto& e : dependency_edges(index_)) {
    edges.push_back({{"from", system().variables()[e.src]},
                     {"to", system().variables()[e.dst]},
                     {"sign", sign_symbol(e.sign)},
                     {"path", to_string(e.path)},
                     {"collapsed", e.collapsed}});
  }
  json violations = json::array();
  for (const auto& v : goodness_.violations) violations.push_back(violation_json(v));
  json out{{"command", "goodness"},
           {"good", goodness_.good},
           {"verdict", goodness_.good},
           {"violations", violations},
           {"edges", edges}};
  return out.dump();
}

std::string Workspace::analyze_json() const {
  json out{{"command", "analyze"}, {"good", goodness_.good}, {"verdict", goodness_.good}};
  json violations = json::array();
  for (const auto& v : goodness_.violations) violations.push_back(violation_json(v));
  out["violations"] = violations;
  if (!goodness_.good) {
    out["variables"] = system().variables();
    out["classes"] = nullptr;
    out["order"] = nullptr;
    out["class_order"] = nullptr;
    out["split"] = nullptr;
    out["leq"] = nullptr;
  } else {
    AnalysisReport r = order_analysis(index_);
    auto names = [&](const std::vector<std::size_t>& ids) {
      json a = json::array();
      for (auto i : ids) a.push_back(r.variables[i]);
      return a;
    };
    json classes = json::array();
    json split = json::array();
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
      classes.push_back(names(r.classes[c]));
      split.push_back({{"plus", names(r.split[c].plus)}, {"minus", names(r.split[c].minus)}});
    }
    json class_order = json::array();
    for (const auto& [a, b] : r.class_order) class_order.push_back({a, b});
    json leq = json::array();
    for (std::size_t i = 0; i < r.variables.size(); ++i) {
      for (std::size_t j = 0; j < r.variables.size(); ++j) {
        if (i != j && r.leq[i][j]) leq.push_back({r.variables[i], r.variables[j]});
      }
    }
    out["variables"] = r.variables;
    out["classes"] = classes;
    out["order"] = r.order_string();
    out["class_order"] = class_order;
    out["split"] = split;
    out["leq"] = leq;
  }
  json lgs = json::object();
  for (std::size_t i = 0; i < system().size(); ++i) {
    lgs[to_string(system().definition(i))] = lg(system().definition(i));
  }
  out["lg"] = lgs;
  return out.dump();
}

std::string Workspace::normalize_json(std::string_view src) const {
  Term t = parse_term(src);
  json out{{"command", "normalize"},
           {"term", to_string(t)},
           {"strategy", strategy_name(settings_.strategy)},
           {"fuel", settings_.fuel}};
  try {
    if (settings_.strategy == Strategy::kLeftmostOutermost) {
      ReductionTrace tr = trace_leftmost(t, settings_.fuel, &system());
      if (!tr.terminated) {
        throw Error(ErrorCode::kFuelExhausted, "no normal form within " +
                                                   std::to_string(settings_.fuel) +
                                                   " leftmost-outermost steps");
      }
      out["normal_form"] = to_string(tr.result());
      out["steps"] = tr.steps.size();
    } else {
      out["normal_form"] = to_string(normalize(t, Strategy::kExhaustive, settings_.fuel, &system()));
      out["steps"] = nullptr;
    }
    out["verdict"] = true;
    out["error"] = nullptr;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kFuelExhausted) throw;
    out["normal_form"] = nullptr;
    out["steps"] = nullptr;
    out["verdict"] = false;
    out["error"] = error_object(e);
  }
  return out.dump();
}

std::string Workspace::trace_json(std::string_view src) const {
  Term t = parse_term(src);
  ReductionTrace tr = trace_leftmost(t, settings_.fuel, &system());
  json out = json::array();
  for (const auto& s : tr.steps) {
    out.push_back({{"rule", rule_name(s.rule)},
                   {"position", position_json(s.position)},
                   {"term", to_string(s.after)}});
  }
  return out.dump();
}

std::string Workspace::eta_json(std::string_view src) const {
  Term t = parse_term(src);
  Metrics m = eta_metric(t, settings_.fuel, &system());
  json out{{"command", "eta"}, {"term", to_string(t)}, {"cxty", m.cxty}};
  out["eta"] = m.eta ? json(*m.eta) : json(nullptr);
  out["etac"] = m.eta ? json::array({*m.eta, m.cxty}) : json(nullptr);
  out["verdict"] = m.eta.has_value();
  return out.dump();
}

std::string Workspace::sn_json(std::string_view src) const {
  Term t = parse_term(src);
  SnVerdict v = sn_probe(t, settings_.fuel, &system());
  json out{{"command", "sn"},
           {"term", to_string(t)},
           {"result", v.sn ? "SN" : "NotClosed"},
           {"verdict", v.sn},
           {"explored", v.explored},
           {"fuel", settings_.fuel}};
  out["eta"] = v.sn ? json(v.eta) : json(nullptr);
  out["reason"] = v.sn ? json(nullptr) : json(v.reason);
  return out.dump();
}

std::string Workspace::translate_json(std::string_view src, bool verify) const {
  Term t = parse_term(src);
  Context ctx = context_for(t);
  json out{{"command", "translate"}, {"term", to_string(t)}};
  Translation tr = translate(ctx, t);
  out["translation"] = to_string(tr.term);
  out["type"] = to_string(tr.type);
  json eqs = json::array();
  for (std::size_t i = 0; i < tr.target.size(); ++i) {
    eqs.push_back(tr.target.variables()[i] + " = " + to_string(tr.target.definition(i)));
  }
  out["equations"] = eqs;
  out["mu_names"] = tr.mu_names;
  out["verdict"] = true;
  if (!verify) {
    out["verify"] = nullptr;
    return out.dump();
  }
  try {
    TranslationReport rep = verify_translation(ctx, t);
    json sims = json::array();
    for (const auto& s : rep.simulations) {
      sims.push_back({{"rule", rule_name(s.rule)},
                      {"position", position_json(s.position)},
                      {"source", to_string(s.source_reduct)},
                      {"target", to_string(s.target_reduct)},
                      {"steps", s.target_steps}});
    }
    out["verify"] = {{"type_preserved", rep.type_preserved}, {"simulations", sims},
                     {"error", nullptr}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTypePreservationFailure &&
        e.code() != ErrorCode::kSimulationFailure) {
      throw;
    }
    out["verdict"] = false;
    out["verify"] = {{"type_preserved", e.code() != ErrorCode::kTypePreservationFailure},
                     {"simulations", nullptr},
                     {"error", error_object(e)}};
  }
  return out.dump();
}

std::string corpus_json(const std::string& dir, const std::string& filter, std::size_t fuel) {
  auto entries = load_corpus(dir);
  CorpusSummary s = run_corpus(entries, fuel, filter);
  json list = json::array();
  for (const auto& e : s.entries) {
    list.push_back({{"name", e.name},
                    {"passed", e.passed},
                    {"checks", e.checks},
                    {"failures", e.failures}});
  }
  json out{{"command", "corpus"},
           {"entries", list},
           {"passed", s.passed},
           {"failed", s.failed},
           {"verdict", s.failed == 0}};
  return out.dump();
}

std::string error_json(const Error& e) { return json{{"error", error_object(e)}}.dump(); }

}  // namespace recmu
