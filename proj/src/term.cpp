#include "recmu/term.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

#include "recmu/error.hpp"

namespace recmu {

struct Term::Node {
  Kind kind;
  std::string ident;
  std::optional<Type> annotation;
  std::optional<Term> first;
  std::optional<Term> second;
  std::size_t size = 1;
};

Term Term::var(std::string x) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->ident = std::move(x);
  return Term(std::move(n));
}

Term Term::lam(std::string x, Type annotation, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLam;
  n->ident = std::move(x);
  n->annotation = std::move(annotation);
  n->size = 1 + body.size();
  n->first = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kApp;
  n->size = 1 + fun.size() + arg.size();
  n->first = std::move(fun);
  n->second = std::move(arg);
  return Term(std::move(n));
}

Term Term::mu(std::string a, Type annotation, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kMu;
  n->ident = std::move(a);
  n->annotation = std::move(annotation);
  n->size = 1 + body.size();
  n->first = std::move(body);
  return Term(std::move(n));
}

Term Term::name(std::string a, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kName;
  n->ident = std::move(a);
  n->size = 1 + arg.size();
  n->first = std::move(arg);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::ident() const { return node_->ident; }
const Type& Term::annotation() const { return *node_->annotation; }
const Term& Term::body() const { return *node_->first; }
const Term& Term::fun() const { return *node_->first; }
const Term& Term::arg() const { return *node_->second; }

std::size_t Term::child_count() const {
  switch (kind()) {
    case Kind::kVar:
      return 0;
    case Kind::kApp:
      return 2;
    default:
      return 1;
  }
}

const Term& Term::child(std::size_t i) const { return i == 0 ? *node_->first : *node_->second; }

std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size() || a.ident() != b.ident()) return false;
  if ((a.is_lam() || a.is_mu()) && a.annotation() != b.annotation()) return false;
  for (std::size_t i = 0; i < a.child_count(); ++i) {
    if (a.child(i) != b.child(i)) return false;
  }
  return true;
}

std::string to_string(const TermPosition& pos) {
  std::string out = "[";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(pos[i]);
  }
  return out + "]";
}

namespace {

enum class Space { kLambda, kMu };

struct Scope {
  Space space;
  std::string name;
  std::string printed;
};

class Printer {
 public:
  explicit Printer(const Term& t) : avoid_(all_names(t)) {}

  // level 0: binders may extend right; 1: function position; 2: argument.
  void print(const Term& t, int level) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        out_ += lookup(Space::kLambda, t.ident());
        return;
      case Term::Kind::kApp:
        if (level == 2) out_ += '(';
        print(t.fun(), 1);
        out_ += ' ';
        print(t.arg(), 2);
        if (level == 2) out_ += ')';
        return;
      case Term::Kind::kLam:
      case Term::Kind::kMu: {
        if (level > 0) out_ += '(';
        const Space space = t.is_lam() ? Space::kLambda : Space::kMu;
        std::string printed = binder_name(t.ident());
        out_ += t.is_lam() ? "\\" : "mu ";
        out_ += printed;
        out_ += ':';
        out_ += to_string(t.annotation());
        out_ += ". ";
        scopes_.push_back({space, t.ident(), printed});
        print(t.body(), 0);
        scopes_.pop_back();
        if (level > 0) out_ += ')';
        return;
      }
      case Term::Kind::kName:
        if (level > 0) out_ += '(';
        out_ += '[';
        out_ += lookup(Space::kMu, t.ident());
        out_ += "] ";
        print(t.body(), 0);
        if (level > 0) out_ += ')';
        return;
    }
  }

  std::string take() { return std::move(out_); }

 private:
  std::string lookup(Space space, const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (it->space == space && it->name == name) return it->printed;
    }
    return name;
  }

  std::string binder_name(const std::string& name) {
    bool shadows = std::any_of(scopes_.begin(), scopes_.end(),
                               [&](const Scope& s) { return s.printed == name; });
    if (!shadows) return name;
    std::string fresh = fresh_name(name, avoid_);
    avoid_.insert(fresh);
    return fresh;
  }

  std::set<std::string> avoid_;
  std::vector<Scope> scopes_;
  std::string out_;
};

void collect_free(const Term& t, Space space, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      if (space == Space::kLambda &&
          std::find(bound.begin(), bound.end(), t.ident()) == bound.end()) {
        out.insert(t.ident());
      }
      return;
    case Term::Kind::kApp:
      collect_free(t.fun(), space, bound, out);
      collect_free(t.arg(), space, bound, out);
      return;
    case Term::Kind::kLam:
    case Term::Kind::kMu: {
      bool binds = (t.is_lam() ? Space::kLambda : Space::kMu) == space;
      if (binds) bound.push_back(t.ident());
      collect_free(t.body(), space, bound, out);
      if (binds) bound.pop_back();
      return;
    }
    case Term::Kind::kName:
      if (space == Space::kMu &&
          std::find(bound.begin(), bound.end(), t.ident()) == bound.end()) {
        out.insert(t.ident());
      }
      collect_free(t.body(), space, bound, out);
      return;
  }
}

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind() != Term::Kind::kApp) out.insert(t.ident());
  for (std::size_t i = 0; i < t.child_count(); ++i) collect_names(t.child(i), out);
}

bool occurs_free(const Term& t, Space space, const std::string& x) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return space == Space::kLambda && t.ident() == x;
    case Term::Kind::kApp:
      return occurs_free(t.fun(), space, x) || occurs_free(t.arg(), space, x);
    case Term::Kind::kLam:
    case Term::Kind::kMu:
      if ((t.is_lam() ? Space::kLambda : Space::kMu) == space && t.ident() == x) return false;
      return occurs_free(t.body(), space, x);
    case Term::Kind::kName:
      if (space == Space::kMu && t.ident() == x) return true;
      return occurs_free(t.body(), space, x);
  }
  return false;
}

// Renames free occurrences of `from` in the given namespace to `to`; `to` is
// assumed fresh for t.
Term rename_free(const Term& t, Space space, const std::string& from, const std::string& to) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return (space == Space::kLambda && t.ident() == from) ? Term::var(to) : t;
    case Term::Kind::kApp:
      return Term::app(rename_free(t.fun(), space, from, to),
                       rename_free(t.arg(), space, from, to));
    case Term::Kind::kLam:
    case Term::Kind::kMu: {
      if ((t.is_lam() ? Space::kLambda : Space::kMu) == space && t.ident() == from) return t;
      Term body = rename_free(t.body(), space, from, to);
      return t.is_lam() ? Term::lam(t.ident(), t.annotation(), std::move(body))
                        : Term::mu(t.ident(), t.annotation(), std::move(body));
    }
    case Term::Kind::kName: {
      Term body = rename_free(t.body(), space, from, to);
      const std::string& a = (space == Space::kMu && t.ident() == from) ? to : t.ident();
      return Term::name(a, std::move(body));
    }
  }
  return t;
}

struct Substituter {
  // Names to avoid when inventing binders: everything in both input terms
  // plus every name generated so far.
  std::set<std::string> avoid;
  std::set<std::string> replacement_free_lambda;
  std::set<std::string> replacement_free_mu;
  Term replacement;

  // Renames binder `t` if it would capture a free variable of the replacement
  // while `target` (in `target_space`) occurs below it.
  std::pair<std::string, Term> open_binder(const Term& t, Space target_space,
                                           const std::string& target) {
    const Space binder_space = t.is_lam() ? Space::kLambda : Space::kMu;
    const auto& captured =
        binder_space == Space::kLambda ? replacement_free_lambda : replacement_free_mu;
    if (captured.count(t.ident()) && occurs_free(t.body(), target_space, target)) {
      std::string fresh = fresh_name(t.ident(), avoid);
      avoid.insert(fresh);
      return {fresh, rename_free(t.body(), binder_space, t.ident(), fresh)};
    }
    return {t.ident(), t.body()};
  }

  Term lambda(const Term& t, const std::string& x) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        return t.ident() == x ? replacement : t;
      case Term::Kind::kApp:
        return Term::app(lambda(t.fun(), x), lambda(t.arg(), x));
      case Term::Kind::kLam:
      case Term::Kind::kMu: {
        if (t.is_lam() && t.ident() == x) return t;
        if (!occurs_free(t.body(), Space::kLambda, x)) return t;
        auto [binder, body] = open_binder(t, Space::kLambda, x);
        Term new_body = lambda(body, x);
        return t.is_lam() ? Term::lam(binder, t.annotation(), std::move(new_body))
                          : Term::mu(binder, t.annotation(), std::move(new_body));
      }
      case Term::Kind::kName:
        return Term::name(t.ident(), lambda(t.body(), x));
    }
    return t;
  }

  Term mu(const Term& t, const std::string& a) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        return t;
      case Term::Kind::kApp:
        return Term::app(mu(t.fun(), a), mu(t.arg(), a));
      case Term::Kind::kLam:
      case Term::Kind::kMu: {
        if (t.is_mu() && t.ident() == a) return t;
        if (!occurs_free(t.body(), Space::kMu, a)) return t;
        auto [binder, body] = open_binder(t, Space::kMu, a);
        Term new_body = mu(body, a);
        return t.is_lam() ? Term::lam(binder, t.annotation(), std::move(new_body))
                          : Term::mu(binder, t.annotation(), std::move(new_body));
      }
      case Term::Kind::kName: {
        Term inner = mu(t.body(), a);
        if (t.ident() == a) return Term::name(a, Term::app(std::move(inner), replacement));
        return Term::name(t.ident(), std::move(inner));
      }
    }
    return t;
  }
};

Substituter make_substituter(const Term& m, const Term& n) {
  Substituter s{all_names(m), free_vars(n), free_mu_vars(n), n};
  auto names_n = all_names(n);
  s.avoid.insert(names_n.begin(), names_n.end());
  return s;
}

struct KeyBuilder {
  std::vector<std::pair<Space, const std::string*>> stack;
  std::string out;

  void index_of(Space space, const std::string& name) {
    for (std::size_t i = stack.size(); i-- > 0;) {
      if (stack[i].first == space && *stack[i].second == name) {
        out += '#';
        out += std::to_string(stack.size() - 1 - i);
        return;
      }
    }
    out += '$';
    out += name;
    out += ' ';
  }

  void build(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        index_of(Space::kLambda, t.ident());
        return;
      case Term::Kind::kApp:
        out += "(A";
        build(t.fun());
        out += ' ';
        build(t.arg());
        out += ')';
        return;
      case Term::Kind::kLam:
      case Term::Kind::kMu:
        out += t.is_lam() ? "(L{" : "(M{";
        out += to_string(t.annotation());
        out += '}';
        stack.emplace_back(t.is_lam() ? Space::kLambda : Space::kMu, &t.ident());
        build(t.body());
        stack.pop_back();
        out += ')';
        return;
      case Term::Kind::kName:
        out += "(N";
        index_of(Space::kMu, t.ident());
        out += ' ';
        build(t.body());
        out += ')';
        return;
    }
  }
};

bool alpha_rec(const Term& a, const Term& b, std::vector<std::pair<Space, std::string>>& sa,
               std::vector<std::pair<Space, std::string>>& sb) {
  if (a.kind() != b.kind()) return false;
  auto same_ref = [&](Space space, const std::string& x, const std::string& y) {
    auto find = [space](const auto& stack, const std::string& n) -> long {
      for (std::size_t i = stack.size(); i-- > 0;) {
        if (stack[i].first == space && stack[i].second == n) return static_cast<long>(i);
      }
      return -1;
    };
    long ia = find(sa, x);
    long ib = find(sb, y);
    if (ia < 0 && ib < 0) return x == y;
    return ia == ib;
  };
  switch (a.kind()) {
    case Term::Kind::kVar:
      return same_ref(Space::kLambda, a.ident(), b.ident());
    case Term::Kind::kApp:
      return alpha_rec(a.fun(), b.fun(), sa, sb) && alpha_rec(a.arg(), b.arg(), sa, sb);
    case Term::Kind::kLam:
    case Term::Kind::kMu: {
      if (a.annotation() != b.annotation()) return false;
      const Space space = a.is_lam() ? Space::kLambda : Space::kMu;
      sa.emplace_back(space, a.ident());
      sb.emplace_back(space, b.ident());
      bool eq = alpha_rec(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return eq;
    }
    case Term::Kind::kName:
      return same_ref(Space::kMu, a.ident(), b.ident()) && alpha_rec(a.body(), b.body(), sa, sb);
  }
  return false;
}

Term replace_from(const Term& t, const TermPosition& pos, std::size_t i, const Term& r) {
  if (i == pos.size()) return r;
  switch (t.kind()) {
    case Term::Kind::kApp:
      if (pos[i] == 0) return Term::app(replace_from(t.fun(), pos, i + 1, r), t.arg());
      return Term::app(t.fun(), replace_from(t.arg(), pos, i + 1, r));
    case Term::Kind::kLam:
      return Term::lam(t.ident(), t.annotation(), replace_from(t.body(), pos, i + 1, r));
    case Term::Kind::kMu:
      return Term::mu(t.ident(), t.annotation(), replace_from(t.body(), pos, i + 1, r));
    case Term::Kind::kName:
      return Term::name(t.ident(), replace_from(t.body(), pos, i + 1, r));
    case Term::Kind::kVar:
      break;
  }
  throw Error(ErrorCode::kUsage, "term position " + to_string(pos) + " does not exist");
}

}  // namespace

std::string to_string(const Term& t) {
  Printer p(t);
  p.print(t, 0);
  return p.take();
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, Space::kLambda, bound, out);
  return out;
}

std::set<std::string> free_mu_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, Space::kMu, bound, out);
  return out;
}

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::pair<Space, std::string>> sa, sb;
  return alpha_rec(a, b, sa, sb);
}

std::string canonical_key(const Term& t) {
  KeyBuilder kb;
  kb.build(t);
  return std::move(kb.out);
}

Term subst(const Term& m, const std::string& x, const Term& n) {
  Substituter s = make_substituter(m, n);
  s.avoid.insert(x);
  return s.lambda(m, x);
}

Term mu_subst(const Term& m, const std::string& a, const Term& n) {
  Substituter s = make_substituter(m, n);
  s.avoid.insert(a);
  return s.mu(m, a);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

const Term& subterm_at(const Term& t, const TermPosition& pos) {
  const Term* cur = &t;
  for (auto i : pos) {
    if (i >= cur->child_count()) {
      throw Error(ErrorCode::kUsage, "term position " + to_string(pos) + " does not exist");
    }
    cur = &cur->child(i);
  }
  return *cur;
}

Term replace_at(const Term& t, const TermPosition& pos, const Term& replacement) {
  return replace_from(t, pos, 0, replacement);
}

}  // namespace recmu
