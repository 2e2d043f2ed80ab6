#include "recmu/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "recmu/congruence.hpp"
#include "recmu/error.hpp"
#include "recmu/parse.hpp"
#include "recmu/positivity.hpp"
#include "recmu/reduce.hpp"
#include "recmu/translate.hpp"

namespace fs = std::filesystem;

namespace recmu {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::string> CorpusEntry::get(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<std::string> CorpusEntry::get_all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : fields) {
    if (k == key) out.push_back(v);
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

CorpusEntry load_case(const fs::path& file) {
  CorpusEntry entry;
  entry.file = file;
  std::istringstream in(read_file(file));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kSyntax,
                  file.string() + ":" + std::to_string(lineno) + ": expected 'key: value'");
    }
    std::string key = trim(t.substr(0, colon));
    std::string value = trim(t.substr(colon + 1));
    if (key == "name") entry.name = value;
    if (key == "source") entry.source = value;
    entry.fields.emplace_back(std::move(key), std::move(value));
  }
  if (entry.name.empty()) entry.name = file.stem().string();
  return entry;
}

std::vector<CorpusEntry> load_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "no corpus directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".case") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) out.push_back(load_case(f));
  return out;
}

EntryInputs load_inputs(const CorpusEntry& entry) {
  const fs::path base = entry.file.parent_path();
  EntryInputs in;
  if (auto eqs = entry.get("equations")) in.system = parse_equations(read_file(base / *eqs));
  std::string term_src;
  if (auto term = entry.get("term")) {
    term_src = read_file(base / *term);
  } else if (auto inline_src = entry.get("term-inline")) {
    term_src = *inline_src;
  }
  if (!term_src.empty()) in.term = parse_program(term_src, in.system.atoms());
  if (auto ctx = entry.get("context")) {
    in.bindings = parse_context(read_file(base / *ctx), in.system.atoms());
  }
  if (in.term) in.context = Context::from_bindings(in.bindings, *in.term);
  return in;
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error(ErrorCode::kSyntax, "expected true or false, got '" + v + "'");
}

struct Runner {
  const CorpusEntry& entry;
  std::size_t fuel;
  EntryResult result;

  void expect(const std::string& what, bool ok, const std::string& detail = "") {
    result.checks.push_back(what);
    if (!ok) {
      result.passed = false;
      result.failures.push_back(what + (detail.empty() ? "" : ": " + detail));
    }
  }

  void run() {
    EntryInputs in = load_inputs(entry);
    CongruenceIndex index(in.system);
    index.freeze();
    const auto& atoms = in.system.atoms();

    if (auto v = entry.get("expect-good")) {
      bool good = check_goodness(index).good;
      expect("goodness", good == parse_bool(*v), "got " + std::string(good ? "good" : "not good"));
    }
    if (auto v = entry.get("expect-order")) {
      std::string got = order_analysis(index).order_string();
      expect("order", got == *v, "got '" + got + "'");
    }
    for (const auto& q : entry.get_all("expect-equiv")) {
      bool want = true;
      auto pos = q.find("==");
      if (pos == std::string::npos) {
        pos = q.find("!=");
        want = false;
      }
      if (pos == std::string::npos) throw Error(ErrorCode::kSyntax, "expect-equiv needs == or !=");
      Type u = parse_type(q.substr(0, pos), atoms);
      Type v = parse_type(q.substr(pos + 2), atoms);
      bool got = index.decide(u, v);
      expect("equiv " + q, got == want, got ? "congruent" : "not congruent");
    }
    if (!in.term) return;
    const Term& term = *in.term;
    const EquationSystem* eqs = &in.system;

    if (auto code = entry.get("expect-error")) {
      std::string got = "none";
      try {
        infer(in.context, term, index);
      } catch (const Error& e) {
        got = error_code_name(e.code());
      }
      expect("error " + *code, got == *code, "got " + got);
      return;
    }
    if (auto t = entry.get("expect-type")) {
      Type want = parse_type(*t, atoms);
      std::string detail;
      bool ok = false;
      try {
        Type got = infer(in.context, term, index);
        ok = index.decide(got, want);
        detail = "inferred " + to_string(got);
      } catch (const Error& e) {
        detail = std::string(error_code_name(e.code())) + ": " + e.what();
      }
      expect("type " + *t, ok, detail);
    }
    if (auto n = entry.get("expect-normal")) {
      Term want = parse_term(*n, atoms);
      ReductionTrace tr = trace_leftmost(term, fuel, eqs);
      expect("normal form", tr.terminated && alpha_eq(tr.result(), want),
             tr.terminated ? "got " + to_string(tr.result()) : "fuel exhausted");
    }
    if (auto k = entry.get("expect-steps")) {
      ReductionTrace tr = trace_leftmost(term, fuel, eqs);
      expect("trace length", tr.terminated && std::to_string(tr.steps.size()) == *k,
             "got " + std::to_string(tr.steps.size()));
    }
    if (auto v = entry.get("expect-sn")) {
      SnVerdict sn = sn_probe(term, fuel, eqs);
      expect("sn", sn.sn == parse_bool(*v),
             sn.sn ? "SN(" + std::to_string(sn.eta) + ")" : "NotClosed (" + sn.reason + ")");
    }
    if (auto k = entry.get("expect-eta")) {
      Metrics m = eta_metric(term, fuel, eqs);
      expect("eta", m.eta && std::to_string(*m.eta) == *k,
             m.eta ? "got " + std::to_string(*m.eta) : "unknown");
    }
    if (entry.get("expect-translation")) {
      std::string detail;
      bool ok = true;
      try {
        verify_translation(in.context, term);
      } catch (const Error& e) {
        ok = false;
        detail = std::string(error_code_name(e.code())) + ": " + e.what();
      }
      expect("translation", ok, detail);
    }
  }
};

}  // namespace

EntryResult run_entry(const CorpusEntry& entry, std::size_t fuel) {
  Runner r{entry, fuel, {}};
  r.result.name = entry.name;
  static const std::set<std::string> known{
      "name",          "source",        "equations",   "context",     "term",
      "term-inline",   "expect-type",   "expect-normal", "expect-steps", "expect-good",
      "expect-order",  "expect-equiv",  "expect-sn",   "expect-eta",  "expect-translation",
      "expect-error"};
  for (const auto& [key, _] : entry.fields) {
    if (!known.count(key)) {
      r.result.passed = false;
      r.result.failures.push_back("unknown key '" + key + "'");
    }
  }
  try {
    r.run();
  } catch (const Error& e) {
    r.result.passed = false;
    r.result.failures.push_back(std::string(error_code_name(e.code())) + ": " + e.what());
  }
  return r.result;
}

CorpusSummary run_corpus(const std::vector<CorpusEntry>& entries, std::size_t fuel,
                         const std::string& filter) {
  std::vector<std::future<EntryResult>> jobs;
  for (const auto& e : entries) {
    if (!filter.empty() && e.name.find(filter) == std::string::npos) continue;
    jobs.push_back(std::async(std::launch::async, [&e, fuel] { return run_entry(e, fuel); }));
  }
  CorpusSummary summary;
  for (auto& j : jobs) {
    summary.entries.push_back(j.get());
    (summary.entries.back().passed ? summary.passed : summary.failed)++;
  }
  return summary;
}

}  // namespace recmu
