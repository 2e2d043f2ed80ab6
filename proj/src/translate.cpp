#include "recmu/translate.hpp"

#include <deque>
#include <unordered_map>

#include "recmu/error.hpp"

namespace recmu {

EquationSystem target_system(const std::set<std::string>& vars) {
  EquationSystem sys;
  for (const auto& v : vars) sys.define(v, Type::neg(Type::neg(Type::var(v))));
  return sys;
}

namespace {

void annotation_vars(const Term& m, std::set<std::string>& out) {
  if (m.is_lam() || m.is_mu()) {
    auto vs = type_vars(m.annotation());
    out.insert(vs.begin(), vs.end());
  }
  for (std::size_t i = 0; i < m.child_count(); ++i) annotation_vars(m.child(i), out);
}

void lambda_names(const Term& m, std::set<std::string>& out) {
  if (m.is_var() || m.is_lam()) out.insert(m.ident());
  for (std::size_t i = 0; i < m.child_count(); ++i) lambda_names(m.child(i), out);
}

void reject_atoms(const Type& t) {
  if (t.is_atom()) {
    throw Error(ErrorCode::kUnsupportedType,
                "the translation target has no atoms besides bot; found " + t.name());
  }
  if (t.is_arrow()) {
    reject_atoms(t.dom());
    reject_atoms(t.cod());
  }
}

Term build_mt_at(const Type& t, int& counter) {
  const std::string k = std::to_string(counter++);
  const std::string x = "x" + k;
  switch (t.kind()) {
    case Type::Kind::kBottom: {
      // \x:~~bot. x (\y:bot. y)
      const std::string y = "y" + k;
      Type ann = Type::neg(Type::neg(Type::bottom()));
      return Term::lam(x, ann,
                       Term::app(Term::var(x), Term::lam(y, Type::bottom(), Term::var(y))));
    }
    case Type::Kind::kVar:
      return Term::lam(x, Type::neg(Type::neg(t)), Term::var(x));
    case Type::Kind::kArrow: {
      // \x:~~(U->V). \y:U. M_V (\z:~V. x (\s:U->V. z (s y)))
      const std::string y = "y" + k;
      const std::string z = "z" + k;
      const std::string s = "s" + k;
      const Type& u = t.dom();
      const Type& v = t.cod();
      Term inner = Term::app(Term::var(z), Term::app(Term::var(s), Term::var(y)));
      Term cont = Term::lam(z, Type::neg(v),
                            Term::app(Term::var(x), Term::lam(s, t, std::move(inner))));
      Term mv = build_mt_at(v, counter);
      return Term::lam(x, Type::neg(Type::neg(t)),
                       Term::lam(y, u, Term::app(std::move(mv), std::move(cont))));
    }
    case Type::Kind::kAtom:
      break;
  }
  reject_atoms(t);
  throw Error(ErrorCode::kUnsupportedType, "unsupported type " + to_string(t));
}

struct Translator {
  std::set<std::string> avoid;

  Term run(const Term& m, std::map<std::string, std::string>& scope) {
    switch (m.kind()) {
      case Term::Kind::kVar:
        return m;
      case Term::Kind::kLam:
        return Term::lam(m.ident(), m.annotation(), run(m.body(), scope));
      case Term::Kind::kApp:
        return Term::app(run(m.fun(), scope), run(m.arg(), scope));
      case Term::Kind::kMu: {
        // (mu a:U. b)* = M_U (\a':~U. b*)
        std::string fresh = avoid.count(m.ident()) ? fresh_name(m.ident(), avoid) : m.ident();
        avoid.insert(fresh);
        auto saved = scope;
        scope[m.ident()] = fresh;
        Term body = run(m.body(), scope);
        scope = std::move(saved);
        return Term::app(build_mt(m.annotation()),
                         Term::lam(fresh, Type::neg(m.annotation()), std::move(body)));
      }
      case Term::Kind::kName: {
        // ([a] n)* = a' n*
        auto it = scope.find(m.ident());
        const std::string name = it == scope.end() ? m.ident() : it->second;
        Term body = run(m.body(), scope);
        return Term::app(Term::var(name), std::move(body));
      }
    }
    return m;
  }
};

}  // namespace

std::set<std::string> source_type_vars(const Context& ctx, const Term& m) {
  std::set<std::string> out;
  annotation_vars(m, out);
  for (const auto& [_, t] : ctx.lambda_bindings()) {
    auto vs = type_vars(t);
    out.insert(vs.begin(), vs.end());
  }
  for (const auto& [_, t] : ctx.mu_bindings()) {
    auto vs = type_vars(t);
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

Term build_mt(const Type& t) {
  reject_atoms(t);
  int counter = 0;
  return build_mt_at(t, counter);
}

Term translate_with(const Term& m, const std::map<std::string, std::string>& mu_names) {
  Translator tr;
  lambda_names(m, tr.avoid);
  for (const auto& [_, v] : mu_names) tr.avoid.insert(v);
  auto scope = mu_names;
  return tr.run(m, scope);
}

Translation translate(const Context& ctx, const Term& m) {
  const auto vars = source_type_vars(ctx, m);
  EquationSystem source;
  for (const auto& v : vars) source.declare_free(v);
  CongruenceIndex source_index(source);
  Type type = [&] {
    try {
      return infer(ctx, m, source_index);
    } catch (const Error& e) {
      throw Error(ErrorCode::kUntypable, std::string("source term is not typable: ") + e.what());
    }
  }();
  reject_atoms(type);

  std::set<std::string> avoid;
  lambda_names(m, avoid);
  for (const auto& [x, _] : ctx.lambda_bindings()) avoid.insert(x);
  std::map<std::string, std::string> mu_names;
  Context target_ctx;
  for (const auto& [x, t] : ctx.lambda_bindings()) target_ctx = target_ctx.with_lambda(x, t);
  for (const auto& [a, u] : ctx.mu_bindings()) {
    std::string name = avoid.count(a) ? fresh_name(a, avoid) : a;
    avoid.insert(name);
    mu_names[a] = name;
    target_ctx = target_ctx.with_lambda(name, Type::neg(u));
  }
  for (const auto& a : free_mu_vars(m)) {
    if (!mu_names.count(a)) mu_names[a] = avoid.count(a) ? fresh_name(a, avoid) : a;
  }
  Term term = translate_with(m, mu_names);
  return {term, type, target_system(vars), target_ctx, mu_names};
}

TranslationReport verify_translation(const Context& ctx, const Term& m, std::size_t fuel) {
  TranslationReport report{translate(ctx, m), false, {}};
  const Translation& tr = report.translation;
  CongruenceIndex target_index(tr.target);
  const EquationSystem* eqs = &tr.target;

  try {
    report.type_preserved = check(tr.context, tr.term, tr.type, target_index);
  } catch (const Error& e) {
    throw Error(ErrorCode::kTypePreservationFailure,
                "translation " + to_string(tr.term) + " does not type-check: " + e.what());
  }
  if (!report.type_preserved) {
    throw Error(ErrorCode::kTypePreservationFailure,
                "translation " + to_string(tr.term) + " has type " +
                    to_string(infer(tr.context, tr.term, target_index)) + ", expected " +
                    to_string(tr.type));
  }

  auto source_steps = one_step_reducts(m);
  if (source_steps.empty()) return report;

  // Keys of the wanted target terms, each mapped to its source step.
  std::unordered_map<std::string, std::vector<std::size_t>> wanted;
  std::vector<Term> targets;
  std::vector<std::optional<std::size_t>> found(source_steps.size());
  for (std::size_t i = 0; i < source_steps.size(); ++i) {
    targets.push_back(translate_with(source_steps[i].term, tr.mu_names));
    wanted[canonical_key(targets.back())].push_back(i);
  }
  std::size_t remaining = source_steps.size();

  // Breadth-first over target reducts; the start term itself does not count.
  std::unordered_map<std::string, std::size_t> depth;
  std::deque<std::pair<Term, std::size_t>> queue{{tr.term, 0}};
  while (!queue.empty() && remaining > 0 && depth.size() < fuel) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    for (auto& r : one_step_reducts(cur, eqs)) {
      std::string key = canonical_key(r.term);
      if (!depth.emplace(key, d + 1).second) continue;
      if (auto it = wanted.find(key); it != wanted.end()) {
        for (std::size_t i : it->second) {
          if (!found[i]) {
            found[i] = d + 1;
            --remaining;
          }
        }
      }
      queue.emplace_back(std::move(r.term), d + 1);
      if (depth.size() >= fuel) break;
    }
  }
  for (std::size_t i = 0; i < source_steps.size(); ++i) {
    if (!found[i]) {
      throw Error(ErrorCode::kSimulationFailure,
                  std::string(rule_name(source_steps[i].redex.rule)) + " step at " +
                      to_string(source_steps[i].redex.position) + " to " +
                      to_string(source_steps[i].term) + " is not simulated: " +
                      to_string(targets[i]) + " not reached from " + to_string(tr.term) +
                      " within " + std::to_string(fuel) + " terms");
    }
    report.simulations.push_back({source_steps[i].redex.rule, source_steps[i].redex.position,
                                  source_steps[i].term, targets[i], *found[i]});
  }
  return report;
}

}  // namespace recmu
