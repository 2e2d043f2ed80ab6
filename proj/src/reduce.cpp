#include "recmu/reduce.hpp"

#include <deque>
#include <unordered_map>

#include "recmu/congruence.hpp"
#include "recmu/error.hpp"

namespace recmu {

const char* rule_name(Rule r) { return r == Rule::kBeta ? "beta" : "mu"; }

std::optional<Rule> redex_rule(const Term& t) {
  if (!t.is_app()) return std::nullopt;
  if (t.fun().is_lam()) return Rule::kBeta;
  if (t.fun().is_mu()) return Rule::kMu;
  return std::nullopt;
}

namespace {

void collect_redexes(const Term& t, TermPosition& pos, std::vector<Redex>& out) {
  if (auto r = redex_rule(t)) out.push_back({pos, *r});
  for (std::size_t i = 0; i < t.child_count(); ++i) {
    pos.push_back(static_cast<std::uint8_t>(i));
    collect_redexes(t.child(i), pos, out);
    pos.pop_back();
  }
}

Term rename_free_mu(const Term& t, const std::string& from, const std::string& to) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t;
    case Term::Kind::kApp:
      return Term::app(rename_free_mu(t.fun(), from, to), rename_free_mu(t.arg(), from, to));
    case Term::Kind::kLam:
      return Term::lam(t.ident(), t.annotation(), rename_free_mu(t.body(), from, to));
    case Term::Kind::kMu:
      if (t.ident() == from) return t;
      return Term::mu(t.ident(), t.annotation(), rename_free_mu(t.body(), from, to));
    case Term::Kind::kName:
      return Term::name(t.ident() == from ? to : t.ident(), rename_free_mu(t.body(), from, to));
  }
  return t;
}

Term contract(const Term& redex, const EquationSystem* eqs) {
  const Term& f = redex.fun();
  const Term& n = redex.arg();
  if (f.is_lam()) return subst(f.body(), f.ident(), n);

  // (mu a:U->V. b) n  ->  mu a:V. b[a = n]
  std::string a = f.ident();
  Term body = f.body();
  if (free_mu_vars(n).count(a)) {
    // The binder would capture a free mu-variable of n.
    auto avoid = all_names(body);
    auto more = all_names(n);
    avoid.insert(more.begin(), more.end());
    std::string fresh = fresh_name(a, avoid);
    body = rename_free_mu(body, a, fresh);
    a = fresh;
  }
  Type ann = f.annotation();
  if (ann.is_arrow()) {
    ann = ann.cod();
  } else if (eqs != nullptr) {
    try {
      ann = unfold_arrow(*eqs, ann).cod;
    } catch (const Error&) {
      // Untypable input; keep the annotation.
    }
  }
  return Term::mu(a, ann, mu_subst(body, a, n));
}

}  // namespace

std::vector<Redex> redexes(const Term& t) {
  std::vector<Redex> out;
  TermPosition pos;
  collect_redexes(t, pos, out);
  return out;
}

Term step(const Term& m, const TermPosition& pos, const EquationSystem* eqs) {
  const Term& sub = subterm_at(m, pos);
  if (!redex_rule(sub)) {
    throw Error(ErrorCode::kNotARedex,
                "no redex at position " + to_string(pos) + ": " + to_string(sub));
  }
  return replace_at(m, pos, contract(sub, eqs));
}

std::vector<Reduct> one_step_reducts(const Term& m, const EquationSystem* eqs) {
  std::vector<Reduct> out;
  for (auto& r : redexes(m)) {
    Term next = replace_at(m, r.position, contract(subterm_at(m, r.position), eqs));
    out.push_back({std::move(r), std::move(next)});
  }
  return out;
}

namespace {

// First redex in pre-order, without collecting the rest.
bool first_redex(const Term& t, TermPosition& pos, Rule& rule) {
  if (auto r = redex_rule(t)) {
    rule = *r;
    return true;
  }
  for (std::size_t i = 0; i < t.child_count(); ++i) {
    pos.push_back(static_cast<std::uint8_t>(i));
    if (first_redex(t.child(i), pos, rule)) return true;
    pos.pop_back();
  }
  return false;
}

}  // namespace

ReductionTrace trace_leftmost(const Term& m, std::size_t fuel, const EquationSystem* eqs) {
  ReductionTrace trace{m, {}, false, 0};
  Term cur = m;
  while (true) {
    TermPosition pos;
    Rule rule{};
    if (!first_redex(cur, pos, rule)) {
      trace.terminated = true;
      return trace;
    }
    if (trace.fuel_spent >= fuel) return trace;
    Term next = replace_at(cur, pos, contract(subterm_at(cur, pos), eqs));
    trace.steps.push_back({pos, rule, cur, next});
    ++trace.fuel_spent;
    cur = std::move(next);
  }
}

ReductionGraph explore(const Term& m, std::size_t fuel, const EquationSystem* eqs) {
  ReductionGraph g;
  std::unordered_map<std::string, std::size_t> seen;
  g.nodes.push_back(m);
  g.successors.emplace_back();
  seen.emplace(canonical_key(m), 0);
  std::size_t next = 0;
  bool out_of_fuel = fuel == 0;
  while (next < g.nodes.size() && !out_of_fuel) {
    const std::size_t id = next;
    std::vector<std::size_t> succ;
    for (auto& r : one_step_reducts(g.nodes[id], eqs)) {
      std::string key = canonical_key(r.term);
      auto it = seen.find(key);
      if (it != seen.end()) {
        succ.push_back(it->second);
        continue;
      }
      if (g.nodes.size() >= fuel) {
        out_of_fuel = true;
        break;
      }
      seen.emplace(std::move(key), g.nodes.size());
      succ.push_back(g.nodes.size());
      g.nodes.push_back(std::move(r.term));
      g.successors.emplace_back();
    }
    if (out_of_fuel) break;
    if (succ.empty()) g.normal_forms.push_back(id);
    g.successors[id] = std::move(succ);
    ++next;
  }
  g.closed = !out_of_fuel && next == g.nodes.size();
  if (!g.closed) return g;

  // Iterative three-colour DFS for cycle detection.
  enum Colour : unsigned char { kWhite, kGrey, kBlack };
  std::vector<Colour> colour(g.nodes.size(), kWhite);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  colour[0] = kGrey;
  g.acyclic = true;
  while (!stack.empty() && g.acyclic) {
    auto& [v, i] = stack.back();
    if (i < g.successors[v].size()) {
      std::size_t w = g.successors[v][i++];
      if (colour[w] == kGrey) {
        g.acyclic = false;
      } else if (colour[w] == kWhite) {
        colour[w] = kGrey;
        stack.emplace_back(w, 0);
      }
    } else {
      colour[v] = kBlack;
      stack.pop_back();
    }
  }
  return g;
}

Term normalize(const Term& m, Strategy strategy, std::size_t fuel, const EquationSystem* eqs) {
  if (strategy == Strategy::kLeftmostOutermost) {
    ReductionTrace t = trace_leftmost(m, fuel, eqs);
    if (!t.terminated) {
      throw Error(ErrorCode::kFuelExhausted,
                  "no normal form within " + std::to_string(fuel) + " leftmost-outermost steps");
    }
    return t.result();
  }
  ReductionGraph g = explore(m, fuel, eqs);
  if (!g.closed) {
    throw Error(ErrorCode::kFuelExhausted,
                "reduction graph did not close within " + std::to_string(fuel) + " terms");
  }
  if (!g.acyclic) {
    throw Error(ErrorCode::kFuelExhausted,
                "reduction graph has a cycle; some reduction sequence is infinite");
  }
  if (g.normal_forms.size() != 1) {
    throw Error(ErrorCode::kFuelExhausted,
                "expected one normal form, found " + std::to_string(g.normal_forms.size()));
  }
  return g.nodes[g.normal_forms.front()];
}

std::size_t cxty(const Term& m) { return m.size(); }

namespace {

// Longest path from node 0 in a closed acyclic graph.
std::size_t longest_path(const ReductionGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> done(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i < g.successors[v].size()) {
      std::size_t w = g.successors[v][i++];
      if (!done[w]) stack.emplace_back(w, 0);
      continue;
    }
    std::size_t best = 0;
    for (std::size_t w : g.successors[v]) best = std::max(best, depth[w] + 1);
    depth[v] = best;
    done[v] = true;
    stack.pop_back();
  }
  return depth[0];
}

}  // namespace

Metrics eta_metric(const Term& m, std::size_t fuel, const EquationSystem* eqs) {
  Metrics out;
  out.cxty = cxty(m);
  ReductionGraph g = explore(m, fuel, eqs);
  if (g.closed && g.acyclic) out.eta = longest_path(g);
  return out;
}

SubtermSet subterms_of_reducts(const Term& m, std::size_t fuel, const EquationSystem* eqs) {
  ReductionGraph g = explore(m, fuel, eqs);
  SubtermSet out;
  out.complete = g.closed && g.acyclic;
  std::unordered_map<std::string, bool> seen;
  for (const Term& node : g.nodes) {
    std::vector<const Term*> stack{&node};
    while (!stack.empty()) {
      const Term* t = stack.back();
      stack.pop_back();
      if (!seen.emplace(canonical_key(*t), true).second) continue;
      out.terms.push_back(*t);
      for (std::size_t i = 0; i < t->child_count(); ++i) stack.push_back(&t->child(i));
    }
  }
  return out;
}

SnVerdict sn_probe(const Term& m, std::size_t fuel, const EquationSystem* eqs) {
  ReductionGraph g = explore(m, fuel, eqs);
  SnVerdict v;
  v.explored = g.nodes.size();
  if (!g.closed) {
    v.reason = "fuel";
  } else if (!g.acyclic) {
    v.reason = "cycle";
  } else {
    v.sn = true;
    v.eta = longest_path(g);
  }
  return v;
}

}  // namespace recmu
