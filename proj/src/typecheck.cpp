#include "recmu/typecheck.hpp"

#include <deque>
#include <set>
#include <unordered_set>

#include "recmu/error.hpp"
#include "recmu/reduce.hpp"

namespace recmu {

Context Context::from_bindings(const std::vector<ContextBinding>& bindings, const Term& term) {
  const auto mu_names = free_mu_vars(term);
  Context ctx;
  for (const auto& b : bindings) {
    if (mu_names.count(b.name)) {
      if (!b.type.is_arrow() || !b.type.cod().is_bottom()) {
        throw Error(ErrorCode::kUsage, "mu-variable " + b.name +
                                           " must be declared with a type ~U, got " +
                                           to_string(b.type));
      }
      ctx = ctx.with_mu(b.name, b.type.dom());
    } else {
      ctx = ctx.with_lambda(b.name, b.type);
    }
  }
  return ctx;
}

Context Context::with_lambda(const std::string& x, Type t) const {
  Context out;
  out.head_ = std::make_shared<const Link>(Link{x, std::move(t), false, head_});
  return out;
}

Context Context::with_mu(const std::string& a, Type u) const {
  Context out;
  out.head_ = std::make_shared<const Link>(Link{a, std::move(u), true, head_});
  return out;
}

const Type* Context::lookup(const std::string& name, bool is_mu) const {
  for (const Link* l = head_.get(); l != nullptr; l = l->next.get()) {
    if (l->is_mu == is_mu && l->name == name) return &l->type;
  }
  return nullptr;
}

const Type* Context::lambda(const std::string& x) const { return lookup(x, false); }
const Type* Context::mu(const std::string& a) const { return lookup(a, true); }

std::map<std::string, Type> Context::lambda_bindings() const {
  std::map<std::string, Type> out;
  for (const Link* l = head_.get(); l != nullptr; l = l->next.get()) {
    if (!l->is_mu) out.emplace(l->name, l->type);  // innermost wins
  }
  return out;
}

std::map<std::string, Type> Context::mu_bindings() const {
  std::map<std::string, Type> out;
  for (const Link* l = head_.get(); l != nullptr; l = l->next.get()) {
    if (l->is_mu) out.emplace(l->name, l->type);
  }
  return out;
}

namespace {

std::string class_note(const CongruenceIndex& index, const Type& t) {
  auto eq = index.defined_equivalents(t);
  if (eq.empty()) return "";
  std::string s = " (~";
  for (const auto& v : eq) s += " " + v;
  return s + ")";
}

}  // namespace

Type infer(const Context& ctx, const Term& m, const CongruenceIndex& index) {
  switch (m.kind()) {
    case Term::Kind::kVar: {
      const Type* t = ctx.lambda(m.ident());
      if (t == nullptr) throw Error(ErrorCode::kUnboundVariable, "unbound variable " + m.ident());
      return *t;
    }
    case Term::Kind::kLam:
      return Type::arrow(m.annotation(),
                         infer(ctx.with_lambda(m.ident(), m.annotation()), m.body(), index));
    case Term::Kind::kApp: {
      Type ft = infer(ctx, m.fun(), index);
      ArrowParts parts = [&] {
        try {
          return index.head_arrow(ft);
        } catch (const Error& e) {
          throw Error(ErrorCode::kNotAFunctionType,
                      "cannot apply " + to_string(m.fun()) + ": " + e.what());
        }
      }();
      Type at = infer(ctx, m.arg(), index);
      if (!index.decide(at, parts.dom)) {
        throw Error(ErrorCode::kArgumentTypeMismatch,
                    "argument " + to_string(m.arg()) + " of " + to_string(m.fun()) +
                        ": expected " + to_string(parts.dom) + class_note(index, parts.dom) +
                        ", found " + to_string(at) + class_note(index, at) +
                        "; the two are not congruent");
      }
      return parts.cod;
    }
    case Term::Kind::kMu: {
      Type bt = infer(ctx.with_mu(m.ident(), m.annotation()), m.body(), index);
      if (!index.decide(bt, Type::bottom())) {
        throw Error(ErrorCode::kMuBodyNotBottom, "body of mu " + m.ident() + " has type " +
                                                     to_string(bt) + class_note(index, bt) +
                                                     ", not bot");
      }
      return m.annotation();
    }
    case Term::Kind::kName: {
      const Type* u = ctx.mu(m.ident());
      if (u == nullptr) {
        throw Error(ErrorCode::kUnboundVariable, "unbound mu-variable " + m.ident());
      }
      Type at = infer(ctx, m.body(), index);
      if (!index.decide(at, *u)) {
        throw Error(ErrorCode::kNamedTermTypeMismatch,
                    "[" + m.ident() + "] expects a term of type " + to_string(*u) +
                        class_note(index, *u) + ", found " + to_string(at) + class_note(index, at));
      }
      return Type::bottom();
    }
  }
  throw Error(ErrorCode::kUsage, "unknown term kind");
}

bool check(const Context& ctx, const Term& m, const Type& expected, const CongruenceIndex& index) {
  return index.decide(infer(ctx, m, index), expected);
}

std::vector<Judgment> subject_reduction_probe(const Context& ctx, const Term& m,
                                              const CongruenceIndex& index, std::size_t steps) {
  const Type original = infer(ctx, m, index);
  std::vector<Judgment> out{{m, original}};
  std::unordered_set<std::string> seen{canonical_key(m)};
  std::deque<Term> queue{m};
  const EquationSystem* eqs = &index.system();
  std::size_t done = 0;
  while (!queue.empty() && done < steps) {
    Term cur = queue.front();
    queue.pop_front();
    for (auto& r : one_step_reducts(cur, eqs)) {
      if (done >= steps) break;
      if (!seen.insert(canonical_key(r.term)).second) continue;
      ++done;
      Type t = [&] {
        try {
          return infer(ctx, r.term, index);
        } catch (const Error& e) {
          throw Error(ErrorCode::kSubjectReductionViolation,
                      "reduct " + to_string(r.term) + " of " + to_string(cur) +
                          " is untypable: " + e.what());
        }
      }();
      if (!index.decide(t, original)) {
        throw Error(ErrorCode::kSubjectReductionViolation,
                    "reduct " + to_string(r.term) + " has type " + to_string(t) + ", expected " +
                        to_string(original));
      }
      out.push_back({r.term, t});
      queue.push_back(std::move(r.term));
    }
  }
  return out;
}

}  // namespace recmu
