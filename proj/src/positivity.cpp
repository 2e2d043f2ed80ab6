#include "recmu/positivity.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "recmu/error.hpp"

namespace recmu {

const char* sign_symbol(Sign s) { return s == Sign::kPositive ? "+" : "-"; }

std::string to_string(const PolaritySet& p) {
  if (p.positive && p.negative) return "{+,-}";
  if (p.positive) return "{+}";
  if (p.negative) return "{-}";
  return "{}";
}

namespace {

void collect_polarity(const Type& t, const std::string& x, Sign s, PolaritySet& out) {
  switch (t.kind()) {
    case Type::Kind::kVar:
      if (t.name() == x) (s == Sign::kPositive ? out.positive : out.negative) = true;
      return;
    case Type::Kind::kArrow:
      collect_polarity(t.dom(), x, flip(s), out);
      collect_polarity(t.cod(), x, s, out);
      return;
    default:
      return;
  }
}

}  // namespace

PolaritySet polarity(const Type& t, const std::string& x) {
  PolaritySet out;
  collect_polarity(t, x, Sign::kPositive, out);
  return out;
}

Sign path_sign(const TypePath& path) {
  Sign s = Sign::kPositive;
  for (Side side : path) {
    if (side == Side::kDom) s = flip(s);
  }
  return s;
}

std::size_t lg(const Type& t) { return t.size(); }

std::vector<DependencyEdge> dependency_edges(const CongruenceIndex& index) {
  const EquationSystem& sys = index.system();
  std::vector<DependencyEdge> edges;
  std::set<std::tuple<std::size_t, std::size_t, Sign>> seen;
  auto add = [&](DependencyEdge e) {
    if (seen.emplace(e.src, e.dst, e.sign).second) edges.push_back(std::move(e));
  };
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (const auto& [path, sub] : subterms(sys.definition(i))) {
      const Sign s = path_sign(path);
      if (sub.is_var() && sys.is_defined(sub.name())) {
        add({i, *sys.index_of(sub.name()), s, path, false});
      }
      for (const auto& name : index.defined_equivalents(sub)) {
        if (sub.is_var() && sub.name() == name) continue;
        // F_i itself is always congruent to X_i.
        if (path.empty() && name == sys.variables()[i]) continue;
        add({i, *sys.index_of(name), s, path, true});
      }
    }
  }
  return edges;
}

namespace {

struct Walk {
  std::vector<const DependencyEdge*> edges;
};

// Shortest walk from (start, +) to (start, -) over (variable, sign) states.
std::optional<Walk> negative_cycle(std::size_t start, std::size_t n,
                                   const std::vector<std::vector<const DependencyEdge*>>& out) {
  auto state = [](std::size_t v, Sign s) { return 2 * v + (s == Sign::kNegative ? 1 : 0); };
  std::vector<const DependencyEdge*> via(2 * n, nullptr);
  std::vector<bool> visited(2 * n, false);
  std::deque<std::pair<std::size_t, Sign>> queue{{start, Sign::kPositive}};
  visited[state(start, Sign::kPositive)] = true;
  const std::size_t goal = state(start, Sign::kNegative);
  while (!queue.empty()) {
    auto [v, s] = queue.front();
    queue.pop_front();
    for (const DependencyEdge* e : out[v]) {
      Sign t = compose(s, e->sign);
      std::size_t id = state(e->dst, t);
      if (visited[id]) continue;
      visited[id] = true;
      via[id] = e;
      if (id == goal) {
        Walk w;
        std::size_t cur = goal;
        while (true) {
          const DependencyEdge* step = via[cur];
          w.edges.push_back(step);
          Sign before = compose(cur % 2 ? Sign::kNegative : Sign::kPositive, step->sign);
          cur = state(step->src, before);
          if (cur == state(start, Sign::kPositive)) break;
        }
        std::reverse(w.edges.begin(), w.edges.end());
        return w;
      }
      queue.emplace_back(e->dst, t);
    }
  }
  return std::nullopt;
}

std::vector<std::vector<const DependencyEdge*>> adjacency(const std::vector<DependencyEdge>& edges,
                                                          std::size_t n) {
  std::vector<std::vector<const DependencyEdge*>> out(n);
  for (const auto& e : edges) out[e.src].push_back(&e);
  return out;
}

}  // namespace

GoodnessResult check_goodness(const CongruenceIndex& index) {
  const EquationSystem& sys = index.system();
  const std::size_t n = sys.size();
  const auto edges = dependency_edges(index);
  const auto out = adjacency(edges, n);

  GoodnessResult result;
  for (std::size_t i = 0; i < n; ++i) {
    auto walk = negative_cycle(i, n, out);
    if (!walk) continue;
    // Unfold along the walk; hole always holds the current variable.
    Type witness = Type::var(sys.variables()[i]);
    TypePath hole;
    Violation v{sys.variables()[i], witness, {}, {sys.variables()[i]}};
    for (const DependencyEdge* e : walk->edges) {
      witness = replace_at(witness, hole, sys.definition(e->src));
      hole.insert(hole.end(), e->path.begin(), e->path.end());
      if (e->collapsed) witness = replace_at(witness, hole, Type::var(sys.variables()[e->dst]));
      v.cycle.push_back(sys.variables()[e->dst]);
    }
    v.witness = witness;
    v.path = hole;
    result.violations.push_back(std::move(v));
  }
  result.good = result.violations.empty();
  return result;
}

bool AnalysisReport::less(std::size_t a, std::size_t b) const {
  return std::find(class_order.begin(), class_order.end(), std::make_pair(a, b)) !=
         class_order.end();
}

std::string AnalysisReport::order_string() const {
  auto render = [&](std::size_t c) {
    std::string s;
    for (std::size_t k = 0; k < classes[c].size(); ++k) {
      if (k) s += " ~ ";
      s += variables[classes[c][k]];
    }
    return s;
  };
  bool chain = true;
  for (std::size_t c = 0; c + 1 < classes.size(); ++c) chain = chain && less(c, c + 1);
  std::string out;
  if (chain) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (c) out += " < ";
      out += render(c);
    }
    return out;
  }
  // Covering pairs only.
  for (const auto& [a, b] : class_order) {
    bool covered = false;
    for (std::size_t c = 0; c < classes.size() && !covered; ++c) covered = less(a, c) && less(c, b);
    if (covered) continue;
    if (!out.empty()) out += ", ";
    out += "(" + render(a) + ") < (" + render(b) + ")";
  }
  // Classes unrelated to everything.
  for (std::size_t c = 0; c < classes.size(); ++c) {
    bool related = false;
    for (const auto& [a, b] : class_order) related = related || a == c || b == c;
    if (related) continue;
    if (!out.empty()) out += ", ";
    out += "(" + render(c) + ")";
  }
  return out;
}

AnalysisReport order_analysis(const CongruenceIndex& index) {
  const EquationSystem& sys = index.system();
  const std::size_t n = sys.size();
  GoodnessResult goodness = check_goodness(index);
  if (!goodness.good) {
    const Violation& v = goodness.violations.front();
    throw Error(ErrorCode::kNotGood, "order analysis needs a good system; " + v.variable +
                                         " ~ " + to_string(v.witness) +
                                         " occurs negatively at " + to_string(v.path));
  }
  const auto edges = dependency_edges(index);
  const auto out = adjacency(edges, n);

  AnalysisReport r;
  r.variables = sys.variables();
  r.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> stack{j};
    r.leq[j][j] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (const DependencyEdge* e : out[v]) {
        if (!r.leq[e->dst][j]) {
          r.leq[e->dst][j] = true;
          stack.push_back(e->dst);
        }
      }
    }
  }

  // Classes of mutual reachability, then a topological order of <.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (group_of[i] != n) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < n; ++j) {
      if (r.leq[i][j] && r.leq[j][i]) {
        group_of[j] = groups.size();
        members.push_back(j);
      }
    }
    groups.push_back(std::move(members));
  }
  const std::size_t g = groups.size();
  auto group_less = [&](std::size_t a, std::size_t b) {
    return a != b && r.leq[groups[a].front()][groups[b].front()];
  };
  std::vector<std::size_t> order;
  std::vector<bool> placed(g, false);
  while (order.size() < g) {
    for (std::size_t a = 0; a < g; ++a) {
      if (placed[a]) continue;
      bool minimal = true;
      for (std::size_t b = 0; b < g && minimal; ++b) minimal = placed[b] || !group_less(b, a);
      if (minimal) {
        placed[a] = true;
        order.push_back(a);
        break;
      }
    }
  }
  r.class_of.assign(n, 0);
  for (std::size_t c = 0; c < g; ++c) {
    r.classes.push_back(groups[order[c]]);
    for (std::size_t v : r.classes.back()) r.class_of[v] = c;
  }
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      if (group_less(order[a], order[b])) r.class_order.emplace_back(a, b);
    }
  }

  // Split each class by the sign of paths from its representative.
  for (const auto& cls : r.classes) {
    const std::size_t rep = cls.front();
    std::map<std::size_t, Sign> sign_of{{rep, Sign::kPositive}};
    std::deque<std::size_t> queue{rep};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (const DependencyEdge* e : out[v]) {
        if (r.class_of[e->dst] != r.class_of[rep] || sign_of.count(e->dst)) continue;
        sign_of[e->dst] = compose(sign_of[v], e->sign);
        queue.push_back(e->dst);
      }
    }
    AnalysisReport::Split split;
    for (std::size_t v : cls) {
      (sign_of.at(v) == Sign::kPositive ? split.plus : split.minus).push_back(v);
    }
    r.split.push_back(std::move(split));
  }
  return r;
}

bool class_membership(const Type& t, std::size_t class_id, Sign eps,
                      const AnalysisReport& report) {
  if (class_id >= report.classes.size()) {
    throw Error(ErrorCode::kUnknownClass, "unknown class " + std::to_string(class_id) + " (report has " +
                                              std::to_string(report.classes.size()) + ")");
  }
  for (const auto& name : type_vars(t)) {
    auto it = std::find(report.variables.begin(), report.variables.end(), name);
    if (it == report.variables.end()) continue;
    std::size_t c = report.class_of[it - report.variables.begin()];
    if (c != class_id && !report.less(c, class_id)) return false;
  }
  const auto& split = report.split[class_id];
  for (std::size_t j : split.plus) {
    if (!polarity(t, report.variables[j]).only(eps)) return false;
  }
  for (std::size_t j : split.minus) {
    if (!polarity(t, report.variables[j]).only(flip(eps))) return false;
  }
  return true;
}

}  // namespace recmu
