// recmu: command-line workbench over the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "recmu/recmu.h"

#ifndef RECMU_DEFAULT_CORPUS
#define RECMU_DEFAULT_CORPUS "corpus"
#endif

using nlohmann::json;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A term argument names a file if one exists, otherwise it is source text.
std::string term_source(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

struct ApiError {
  recmu_status status;
  std::string message;
};

void ensure(recmu_status st) {
  if (st != RECMU_OK) throw ApiError{st, recmu_last_error()};
}

class Session {
 public:
  Session(const std::string& eqs_path, const std::string& ctx_path, std::size_t fuel,
          const std::string& strategy) {
    std::string eqs = eqs_path.empty() ? "" : read_file(eqs_path);
    ensure(recmu_workspace_new(eqs.c_str(), &ws_));
    if (!ctx_path.empty()) ensure(recmu_workspace_set_context(ws_, read_file(ctx_path).c_str()));
    if (fuel > 0) ensure(recmu_workspace_set_fuel(ws_, fuel));
    if (strategy == "exhaustive") {
      ensure(recmu_workspace_set_strategy(ws_, RECMU_EXHAUSTIVE));
    } else if (strategy != "lo" && strategy != "leftmost-outermost") {
      throw UsageError("unknown strategy '" + strategy + "' (use lo or exhaustive)");
    }
  }
  ~Session() { recmu_workspace_free(ws_); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  recmu_workspace* get() const { return ws_; }

 private:
  recmu_workspace* ws_ = nullptr;
};

template <typename F>
json call(F&& f) {
  char* out = nullptr;
  recmu_status st = f(&out);
  if (st != RECMU_OK) throw ApiError{st, recmu_last_error()};
  json j = json::parse(out);
  recmu_string_free(out);
  return j;
}

int verdict_exit(const json& j) { return j.value("verdict", false) ? kExitTrue : kExitFalse; }

std::string str_or(const json& j, const char* key, const std::string& fallback) {
  return j.contains(key) && j[key].is_string() ? j[key].get<std::string>() : fallback;
}

void print_violations(const json& j) {
  for (const auto& v : j["violations"]) {
    std::cout << "  " << v["variable"].get<std::string>() << " ~ "
              << v["witness"].get<std::string>() << "  (negative occurrence at "
              << v["path"].get<std::string>() << ")\n";
  }
}

void print_check(const json& j) {
  if (!j["error"].is_null()) {
    std::cout << "type error (" << j["error"]["code"].get<std::string>()
              << "): " << j["error"]["message"].get<std::string>() << "\n";
    return;
  }
  std::cout << j["term"].get<std::string>() << " : " << j["type"].get<std::string>() << "\n";
  if (!j["expected"].is_null()) {
    std::cout << (j["verdict"].get<bool>() ? "matches " : "does not match ")
              << j["expected"].get<std::string>() << "\n";
  }
}

void print_analysis(const json& j) {
  if (!j["good"].get<bool>()) {
    std::cout << "not good; analysis refused\n";
    print_violations(j);
    return;
  }
  std::cout << "order: " << j["order"].get<std::string>() << "\n";
  for (std::size_t c = 0; c < j["classes"].size(); ++c) {
    auto list = [](const json& a) {
      std::string s = "{";
      for (std::size_t k = 0; k < a.size(); ++k) s += (k ? ", " : "") + a[k].get<std::string>();
      return s + "}";
    };
    std::cout << "class " << c << ": " << list(j["classes"][c])
              << "  plus=" << list(j["split"][c]["plus"])
              << "  minus=" << list(j["split"][c]["minus"]) << "\n";
  }
}

void print_translation(const json& j) {
  std::cout << j["translation"].get<std::string>() << "\n";
  std::cout << "type: " << j["type"].get<std::string>() << "\n";
  std::cout << "equations:";
  if (j["equations"].empty()) std::cout << " (none)";
  std::cout << "\n";
  for (const auto& e : j["equations"]) std::cout << "  " << e.get<std::string>() << "\n";
  if (j["verify"].is_null()) return;
  const json& v = j["verify"];
  if (!v["error"].is_null()) {
    std::cout << "verification FAILED (" << v["error"]["code"].get<std::string>()
              << "): " << v["error"]["message"].get<std::string>() << "\n";
    return;
  }
  std::cout << "type preserved\n";
  for (const auto& s : v["simulations"]) {
    std::cout << "  " << s["rule"].get<std::string>() << " step at " << s["position"].dump()
              << " simulated in " << s["steps"].get<std::size_t>() << " target steps\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for lambda and lambda-mu calculi with recursive type equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(recmu_version()));
  app.footer(
      "Exit status: 0 success or true verdict, 1 negative verdict, 2 error.\n"
      "Fuel: leftmost-outermost counts reduction steps; exhaustive exploration counts\n"
      "distinct terms. Default 10000, overridden by RECMU_FUEL or --fuel.\n"
      "TERM arguments name a file when one exists, otherwise they are source text.");

  bool as_json = false;
  std::size_t fuel = 0;
  std::string eqs_path;
  std::string ctx_path;
  std::string strategy = "lo";
  std::string term;
  std::string expect;
  std::string left;
  std::string right;
  bool verify = false;
  std::string corpus_dir = RECMU_DEFAULT_CORPUS;
  std::string filter;

  auto common = [&](CLI::App* sub, bool needs_eqs) {
    sub->add_flag("--json", as_json, "machine-readable output");
    sub->add_option("--fuel", fuel, "reduction budget")->check(CLI::PositiveNumber);
    if (needs_eqs) {
      sub->add_option("EQS", eqs_path, "equation file")->required()->check(CLI::ExistingFile);
    } else {
      sub->add_option("--eqs", eqs_path, "equation file")->check(CLI::ExistingFile);
    }
  };

  auto* check = app.add_subcommand("check", "type-check a term");
  common(check, true);
  check->add_option("TERM", term, "term file or source")->required();
  check->add_option("--context", ctx_path, "context file (x : T lines)")->check(CLI::ExistingFile);
  check->add_option("--expect", expect, "expected type");

  auto* equiv = app.add_subcommand("equiv", "decide congruence of two types");
  common(equiv, true);
  equiv->add_option("T1", left)->required();
  equiv->add_option("T2", right)->required();

  auto* goodness = app.add_subcommand("goodness", "check the positivity condition");
  common(goodness, true);

  auto* analyze = app.add_subcommand("analyze", "order and class analysis of a good system");
  common(analyze, true);

  CLI::App* reducers[4];
  const char* names[4] = {"normalize", "trace", "eta", "sn"};
  const char* help[4] = {"normal form of a term", "leftmost-outermost reduction trace",
                         "longest reduction length", "strong normalization probe"};
  for (int i = 0; i < 4; ++i) {
    reducers[i] = app.add_subcommand(names[i], help[i]);
    common(reducers[i], false);
    reducers[i]->add_option("TERM", term, "term file or source")->required();
  }
  reducers[0]
      ->add_option("--strategy", strategy, "lo (leftmost-outermost) or exhaustive")
      ->check(CLI::IsMember({"lo", "leftmost-outermost", "exhaustive"}));

  auto* trans = app.add_subcommand("translate", "translate a lambda-mu term into lambda");
  common(trans, false);
  trans->add_option("TERM", term, "term file or source")->required();
  trans->add_option("--context", ctx_path, "context file")->check(CLI::ExistingFile);
  trans->add_flag("--verify", verify, "check type preservation and simulation");

  auto* corpus = app.add_subcommand("corpus", "corpus operations");
  auto* run = corpus->add_subcommand("run", "run every corpus entry");
  corpus->require_subcommand(1);
  run->add_option("DIR", corpus_dir, "corpus directory");
  run->add_option("--filter", filter, "only entries whose name contains this");
  run->add_flag("--json", as_json, "machine-readable output");
  run->add_option("--fuel", fuel, "reduction budget")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitTrue : kExitError;
  }

  try {
    json j;
    int code = kExitTrue;
    if (run->parsed()) {
      j = call([&](char** out) {
        return recmu_corpus_run(corpus_dir.c_str(), filter.c_str(), fuel, out);
      });
      code = verdict_exit(j);
      if (!as_json) {
        for (const auto& e : j["entries"]) {
          std::cout << (e["passed"].get<bool>() ? "PASS " : "FAIL ") << e["name"].get<std::string>()
                    << "\n";
          for (const auto& f : e["failures"]) std::cout << "     " << f.get<std::string>() << "\n";
        }
        std::cout << j["passed"].get<std::size_t>() << " passed, " << j["failed"].get<std::size_t>()
                  << " failed\n";
      }
    } else {
      Session s(eqs_path, ctx_path, fuel, strategy);
      if (check->parsed()) {
        std::string src = term_source(term);
        j = call([&](char** out) {
          return recmu_check(s.get(), src.c_str(), expect.empty() ? nullptr : expect.c_str(), out);
        });
        if (!as_json) print_check(j);
      } else if (equiv->parsed()) {
        j = call([&](char** out) { return recmu_equiv(s.get(), left.c_str(), right.c_str(), out); });
        if (!as_json) {
          std::cout << j["left"].get<std::string>() << (j["verdict"].get<bool>() ? " ~ " : " !~ ")
                    << j["right"].get<std::string>() << "\n";
        }
      } else if (goodness->parsed()) {
        j = call([&](char** out) { return recmu_goodness(s.get(), out); });
        if (!as_json) {
          std::cout << (j["good"].get<bool>() ? "good" : "not good") << "\n";
          print_violations(j);
        }
      } else if (analyze->parsed()) {
        j = call([&](char** out) { return recmu_analyze(s.get(), out); });
        if (!as_json) print_analysis(j);
      } else if (reducers[0]->parsed()) {
        std::string src = term_source(term);
        j = call([&](char** out) { return recmu_normalize(s.get(), src.c_str(), out); });
        if (!as_json) {
          if (j["verdict"].get<bool>()) {
            std::cout << j["normal_form"].get<std::string>() << "\n";
          } else {
            std::cout << "no normal form found: " << j["error"]["message"].get<std::string>()
                      << "\n";
          }
        }
      } else if (reducers[1]->parsed()) {
        std::string src = term_source(term);
        j = call([&](char** out) { return recmu_trace(s.get(), src.c_str(), out); });
        if (!as_json) {
          std::size_t k = 0;
          for (const auto& st : j) {
            std::cout << ++k << ". " << st["rule"].get<std::string>() << " at "
                      << st["position"].dump() << ": " << st["term"].get<std::string>() << "\n";
          }
          if (k == 0) std::cout << "already normal\n";
        }
      } else if (reducers[2]->parsed()) {
        std::string src = term_source(term);
        j = call([&](char** out) { return recmu_eta(s.get(), src.c_str(), out); });
        code = verdict_exit(j);
        if (!as_json) {
          std::cout << "eta = " << (j["eta"].is_null() ? "unknown" : j["eta"].dump())
                    << ", cxty = " << j["cxty"].dump() << "\n";
        }
      } else if (reducers[3]->parsed()) {
        std::string src = term_source(term);
        j = call([&](char** out) { return recmu_sn(s.get(), src.c_str(), out); });
        if (!as_json) {
          if (j["verdict"].get<bool>()) {
            std::cout << "SN(" << j["eta"].dump() << ")\n";
          } else {
            std::cout << "NotClosed (" << str_or(j, "reason", "?") << ") after "
                      << j["explored"].dump() << " terms\n";
          }
        }
      } else if (trans->parsed()) {
        std::string src = term_source(term);
        j = call([&](char** out) { return recmu_translate(s.get(), src.c_str(), verify, out); });
        if (!as_json) print_translation(j);
      }
      if (!reducers[1]->parsed()) code = verdict_exit(j);
    }
    if (as_json) std::cout << j.dump(2) << "\n";
    return code;
  } catch (const ApiError& e) {
    if (as_json) {
      std::cout << json{{"error", {{"code", recmu_status_name(e.status)}, {"message", e.message}}}}
                       .dump(2)
                << "\n";
    } else {
      std::cerr << "error (" << recmu_status_name(e.status) << "): " << e.message << "\n";
    }
    return kExitError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
