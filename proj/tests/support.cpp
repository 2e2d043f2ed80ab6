#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "recmu/error.hpp"
#include "recmu/parse.hpp"

#ifndef RECMU_CORPUS_DIR
#define RECMU_CORPUS_DIR "corpus"
#endif

namespace recmu::testing {

std::string corpus_dir() { return RECMU_CORPUS_DIR; }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EquationSystem system_from(const std::string& src) { return parse_equations(src); }

EquationSystem corpus_system(const std::string& relative) {
  return parse_equations(read_text(corpus_dir() + "/" + relative));
}

Type random_type(std::mt19937& rng, const std::vector<Type>& leaves, std::size_t size) {
  if (size <= 1) {
    std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
    return leaves[pick(rng)];
  }
  // size = 1 + left + right with both sides odd.
  std::size_t inner = size - 1;
  std::uniform_int_distribution<std::size_t> split(0, inner / 2 - 1);
  std::size_t left = 2 * split(rng) + 1;
  return Type::arrow(random_type(rng, leaves, left), random_type(rng, leaves, inner - left));
}

Type random_type_upto(std::mt19937& rng, const std::vector<Type>& leaves, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> pick(0, (max_size - 1) / 2);
  return random_type(rng, leaves, 2 * pick(rng) + 1);
}

std::vector<Type> leaves_of(const EquationSystem& sys) {
  std::vector<Type> out;
  for (const auto& v : sys.variables()) out.push_back(Type::var(v));
  for (const auto& v : sys.free_variables()) out.push_back(Type::var(v));
  for (const auto& a : sys.atoms()) out.push_back(Type::atom(a));
  if (out.empty()) out.push_back(Type::var("X"));
  return out;
}

std::vector<Type> rewrite_neighbours(const EquationSystem& sys, const Type& t) {
  std::vector<Type> out;
  for (const auto& [path, sub] : subterms(t)) {
    if (sub.is_var()) {
      if (const Type* def = sys.definition(sub.name())) out.push_back(replace_at(t, path, *def));
    }
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if (sub == sys.definition(i)) {
        out.push_back(replace_at(t, path, Type::var(sys.variables()[i])));
      }
    }
  }
  return out;
}

namespace {

std::unordered_map<Type, std::size_t, TypeHash> layers(const EquationSystem& sys, const Type& t,
                                                       std::size_t depth, std::size_t cap) {
  std::unordered_map<Type, std::size_t, TypeHash> dist{{t, 0}};
  std::vector<Type> frontier{t};
  for (std::size_t d = 1; d <= depth && !frontier.empty(); ++d) {
    std::vector<Type> next;
    for (const Type& u : frontier) {
      for (Type& w : rewrite_neighbours(sys, u)) {
        if (dist.size() >= cap) return dist;
        if (dist.emplace(w, d).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace

std::optional<std::size_t> rewrite_oracle(const EquationSystem& sys, const Type& u, const Type& v,
                                          std::size_t depth, std::size_t frontier_cap) {
  auto a = layers(sys, u, (depth + 1) / 2, frontier_cap);
  auto b = layers(sys, v, depth / 2, frontier_cap);
  std::optional<std::size_t> best;
  for (const auto& [t, da] : a) {
    auto it = b.find(t);
    if (it == b.end()) continue;
    std::size_t total = da + it->second;
    if (total <= depth && (!best || total < *best)) best = total;
  }
  return best;
}

std::vector<Type> rewrite_closure(const EquationSystem& sys, const Type& t, std::size_t depth,
                                  std::size_t cap) {
  std::vector<Type> out;
  for (auto& [u, _] : layers(sys, t, depth, cap)) out.push_back(u);
  return out;
}

Type random_rewrite(std::mt19937& rng, const EquationSystem& sys, const Type& t, std::size_t k) {
  Type cur = t;
  for (std::size_t i = 0; i < k; ++i) {
    auto next = rewrite_neighbours(sys, cur);
    if (next.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    cur = next[pick(rng)];
  }
  return cur;
}

TermGenerator::TermGenerator(const CongruenceIndex& idx, std::mt19937& r, std::vector<Type> types,
                             bool mu)
    : index(idx), rng(r), with_mu(mu), small_types(std::move(types)) {}

std::string TermGenerator::fresh(const char* prefix) {
  return prefix + std::to_string(counter++);
}

Term TermGenerator::leaf(const Type& t) {
  std::vector<std::string> matches;
  for (const auto& [x, ty] : lambda_scope) {
    if (index.decide(ty, t)) matches.push_back(x);
  }
  for (const auto& b : free_lambda) {
    if (index.decide(b.type, t)) matches.push_back(b.name);
  }
  if (!matches.empty() && std::uniform_int_distribution<int>(0, 3)(rng) != 0) {
    std::uniform_int_distribution<std::size_t> pick(0, matches.size() - 1);
    return Term::var(matches[pick(rng)]);
  }
  std::string x = fresh("v");
  free_lambda.push_back({x, t});
  return Term::var(x);
}

Term TermGenerator::bottom(std::size_t depth) {
  std::uniform_int_distribution<std::size_t> pick_type(0, small_types.size() - 1);
  if (!mu_scope.empty() && std::uniform_int_distribution<int>(0, 3)(rng) != 0) {
    std::uniform_int_distribution<std::size_t> pick(0, mu_scope.size() - 1);
    auto [b, w] = mu_scope[pick(rng)];
    return Term::name(b, generate(w, depth + 1));
  }
  std::string b = fresh("k");
  Type w = small_types[pick_type(rng)];
  free_mu.push_back({b, w});
  return Term::name(b, generate(w, depth + 1));
}

Term TermGenerator::generate(const Type& t, std::size_t depth) {
  if (depth >= max_depth) return leaf(t);
  std::uniform_int_distribution<int> roll(0, 99);
  std::uniform_int_distribution<std::size_t> pick_type(0, small_types.size() - 1);
  const int r = roll(rng);
  if (r < 15) return leaf(t);
  if (r < 50) {
    try {
      ArrowParts parts = index.head_arrow(t);
      std::string x = fresh("x");
      lambda_scope.emplace_back(x, parts.dom);
      Term body = generate(parts.cod, depth + 1);
      lambda_scope.pop_back();
      return Term::lam(x, parts.dom, std::move(body));
    } catch (const Error&) {
      return leaf(t);
    }
  }
  if (r < 75 || !with_mu) {
    Type u = small_types[pick_type(rng)];
    Term f = generate(Type::arrow(u, t), depth + 1);
    Term a = generate(u, depth + 1);
    return Term::app(std::move(f), std::move(a));
  }
  if (r < 88) {
    std::string a = fresh("a");
    mu_scope.emplace_back(a, t);
    Term body = bottom(depth + 1);
    mu_scope.pop_back();
    return Term::mu(a, t, std::move(body));
  }
  // A mu-redex at arrow type u -> t.
  Type u = small_types[pick_type(rng)];
  Type ut = Type::arrow(u, t);
  std::string a = fresh("a");
  mu_scope.emplace_back(a, ut);
  Term body = bottom(depth + 1);
  mu_scope.pop_back();
  Term arg = generate(u, depth + 1);
  return Term::app(Term::mu(a, ut, std::move(body)), std::move(arg));
}

Context TermGenerator::context() const {
  Context ctx;
  for (const auto& b : free_lambda) ctx = ctx.with_lambda(b.name, b.type);
  for (const auto& b : free_mu) ctx = ctx.with_mu(b.name, b.type);
  return ctx;
}

namespace {

DbPtr make(DbTerm t) { return std::make_shared<const DbTerm>(std::move(t)); }

DbPtr db_rec(const Term& t, std::vector<std::string>& env) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      for (std::size_t i = env.size(); i-- > 0;) {
        if (env[i] == t.ident()) return make({DbTerm::kVar, int(env.size() - 1 - i), "", nullptr, nullptr});
      }
      return make({DbTerm::kFree, 0, t.ident(), nullptr, nullptr});
    case Term::Kind::kLam: {
      env.push_back(t.ident());
      DbPtr body = db_rec(t.body(), env);
      env.pop_back();
      return make({DbTerm::kLam, 0, "", body, nullptr});
    }
    case Term::Kind::kApp:
      return make({DbTerm::kApp, 0, "", db_rec(t.fun(), env), db_rec(t.arg(), env)});
    default:
      throw std::runtime_error("de Bruijn oracle handles the lambda fragment only");
  }
}

DbPtr shift(const DbPtr& t, int d, int cutoff) {
  switch (t->kind) {
    case DbTerm::kVar:
      return t->index >= cutoff ? make({DbTerm::kVar, t->index + d, "", nullptr, nullptr}) : t;
    case DbTerm::kFree:
      return t;
    case DbTerm::kLam:
      return make({DbTerm::kLam, 0, "", shift(t->a, d, cutoff + 1), nullptr});
    case DbTerm::kApp:
      return make({DbTerm::kApp, 0, "", shift(t->a, d, cutoff), shift(t->b, d, cutoff)});
  }
  return t;
}

DbPtr db_subst(const DbPtr& t, int j, const DbPtr& s) {
  switch (t->kind) {
    case DbTerm::kVar:
      return t->index == j ? s : t;
    case DbTerm::kFree:
      return t;
    case DbTerm::kLam:
      return make({DbTerm::kLam, 0, "", db_subst(t->a, j + 1, shift(s, 1, 0)), nullptr});
    case DbTerm::kApp:
      return make({DbTerm::kApp, 0, "", db_subst(t->a, j, s), db_subst(t->b, j, s)});
  }
  return t;
}

}  // namespace

DbPtr to_db(const Term& t) {
  std::vector<std::string> env;
  return db_rec(t, env);
}

std::string db_key(const DbPtr& t) {
  switch (t->kind) {
    case DbTerm::kVar: return std::to_string(t->index);
    case DbTerm::kFree: return "'" + t->name;
    case DbTerm::kLam: return "L(" + db_key(t->a) + ")";
    case DbTerm::kApp: return "(" + db_key(t->a) + " " + db_key(t->b) + ")";
  }
  return "";
}

std::vector<DbPtr> db_reducts(const DbPtr& t) {
  std::vector<DbPtr> out;
  if (t->kind == DbTerm::kApp && t->a->kind == DbTerm::kLam) {
    out.push_back(shift(db_subst(t->a->a, 0, shift(t->b, 1, 0)), -1, 0));
  }
  if (t->kind == DbTerm::kLam) {
    for (auto& r : db_reducts(t->a)) out.push_back(make({DbTerm::kLam, 0, "", r, nullptr}));
  }
  if (t->kind == DbTerm::kApp) {
    for (auto& r : db_reducts(t->a)) out.push_back(make({DbTerm::kApp, 0, "", r, t->b}));
    for (auto& r : db_reducts(t->b)) out.push_back(make({DbTerm::kApp, 0, "", t->a, r}));
  }
  return out;
}

namespace {

bool longest_rec(const DbPtr& t, std::size_t& budget, std::size_t& out) {
  if (budget == 0) return false;
  --budget;
  std::size_t best = 0;
  for (const auto& r : db_reducts(t)) {
    std::size_t sub = 0;
    if (!longest_rec(r, budget, sub)) return false;
    best = std::max(best, sub + 1);
  }
  out = best;
  return true;
}

}  // namespace

std::optional<std::size_t> db_longest(const DbPtr& t, std::size_t budget) {
  std::size_t out = 0;
  if (!longest_rec(t, budget, out)) return std::nullopt;
  return out;
}

std::set<std::string> db_normal_forms(const DbPtr& t, std::size_t budget) {
  std::set<std::string> nfs;
  std::unordered_set<std::string> seen;
  std::vector<DbPtr> stack{t};
  while (!stack.empty() && seen.size() < budget) {
    DbPtr cur = stack.back();
    stack.pop_back();
    if (!seen.insert(db_key(cur)).second) continue;
    auto next = db_reducts(cur);
    if (next.empty()) nfs.insert(db_key(cur));
    for (auto& r : next) stack.push_back(std::move(r));
  }
  return nfs;
}

}  // namespace recmu::testing
