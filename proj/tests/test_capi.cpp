#include <gtest/gtest.h>

#include <json.hpp>
#include <string>
#include <thread>

#include "recmu/recmu.h"

using json = nlohmann::json;

namespace {

// Owns a JSON string returned by the library.
json take(char* s) {
  EXPECT_NE(s, nullptr);
  json doc = json::parse(s == nullptr ? "null" : s);
  recmu_string_free(s);
  return doc;
}

struct Ws {
  recmu_workspace* ws = nullptr;
  explicit Ws(const char* eqs) { EXPECT_EQ(recmu_workspace_new(eqs, &ws), RECMU_OK); }
  ~Ws() { recmu_workspace_free(ws); }
};

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(recmu_version(), "1.0.0");
  EXPECT_STREQ(recmu_status_name(RECMU_OK), "Ok");
  EXPECT_STREQ(recmu_status_name(RECMU_ERR_SYNTAX), "SyntaxError");
  EXPECT_STREQ(recmu_status_name(RECMU_ERR_NOT_GOOD), "NotGood");
  EXPECT_STREQ(recmu_status_name(RECMU_ERR_USAGE), "UsageError");
  EXPECT_STREQ(recmu_status_name(RECMU_ERR_INTERNAL), "Internal");
  EXPECT_STREQ(recmu_status_name(static_cast<recmu_status>(77)), "Unknown");
}

TEST(CApi, WorkspaceCreationErrors) {
  recmu_workspace* ws = reinterpret_cast<recmu_workspace*>(0x1);
  EXPECT_EQ(recmu_workspace_new("X = ", &ws), RECMU_ERR_SYNTAX);
  EXPECT_EQ(ws, nullptr);
  EXPECT_NE(std::string(recmu_last_error()).find("1:"), std::string::npos);
  EXPECT_EQ(recmu_workspace_new("X = Y", &ws), RECMU_ERR_MALFORMED_SYSTEM);
  EXPECT_EQ(recmu_workspace_new("X = X", nullptr), RECMU_ERR_USAGE);
  recmu_workspace_free(nullptr);
}

TEST(CApi, CheckAndEquiv) {
  Ws w("atom T\nX = X -> T\n");
  char* out = nullptr;
  ASSERT_EQ(recmu_check(w.ws, "(\\x:X. x x) (\\x:X. x x)", "T", &out), RECMU_OK);
  auto doc = take(out);
  EXPECT_TRUE(doc["verdict"].get<bool>());
  EXPECT_EQ(doc["type"], "T");

  ASSERT_EQ(recmu_equiv(w.ws, "X", "(X -> T) -> T", &out), RECMU_OK);
  EXPECT_TRUE(take(out)["verdict"].get<bool>());
  ASSERT_EQ(recmu_equiv(w.ws, "X", "T", &out), RECMU_OK);
  EXPECT_FALSE(take(out)["verdict"].get<bool>());

  EXPECT_EQ(recmu_equiv(w.ws, "X ->", "T", &out), RECMU_ERR_SYNTAX);
  EXPECT_EQ(out, nullptr);
  EXPECT_FALSE(std::string(recmu_last_error()).empty());
}

TEST(CApi, TypeErrorsAreVerdicts) {
  Ws w("");
  char* out = nullptr;
  ASSERT_EQ(recmu_check(w.ws, "\\x:X. x x", nullptr, &out), RECMU_OK);
  auto doc = take(out);
  EXPECT_FALSE(doc["verdict"].get<bool>());
  EXPECT_EQ(doc["error"]["code"], "NotAFunctionType");
}

TEST(CApi, GoodnessAndAnalysis) {
  Ws good("X1 = X2 -> X1\nX2 = X1 -> X2\nX3 = (X1 -> X2) -> X3\n"
          "X4 = X5 -> (X3 -> X1) -> X4\nX5 = X4 -> (X2 -> X3) -> X5\n");
  EXPECT_EQ(recmu_workspace_is_good(good.ws), 1);
  char* out = nullptr;
  ASSERT_EQ(recmu_analyze(good.ws, &out), RECMU_OK);
  EXPECT_EQ(take(out)["order"], "X1 ~ X2 < X3 < X4 ~ X5");

  Ws bad("X = X -> X\n");
  EXPECT_EQ(recmu_workspace_is_good(bad.ws), 0);
  ASSERT_EQ(recmu_goodness(bad.ws, &out), RECMU_OK);
  auto g = take(out);
  EXPECT_FALSE(g["verdict"].get<bool>());
  EXPECT_EQ(g["violations"][0]["variable"], "X");
  EXPECT_EQ(recmu_workspace_is_good(nullptr), 0);
}

TEST(CApi, ReductionCalls) {
  Ws w("");
  char* out = nullptr;
  ASSERT_EQ(recmu_normalize(w.ws, "(\\f:X -> X. \\x:X. f (f x)) (\\y:X. y) v", &out), RECMU_OK);
  EXPECT_EQ(take(out)["normal_form"], "v");
  ASSERT_EQ(recmu_trace(w.ws, "(\\x:X. x) y", &out), RECMU_OK);
  EXPECT_EQ(take(out).size(), 1u);
  ASSERT_EQ(recmu_eta(w.ws, "(\\f:X -> X. \\x:X. f (f x)) (\\y:X. y) v", &out), RECMU_OK);
  EXPECT_EQ(take(out)["eta"], 4);
  ASSERT_EQ(recmu_sn(w.ws, "(\\x:X. x) y", &out), RECMU_OK);
  EXPECT_TRUE(take(out)["verdict"].get<bool>());

  ASSERT_EQ(recmu_workspace_set_strategy(w.ws, RECMU_EXHAUSTIVE), RECMU_OK);
  ASSERT_EQ(recmu_normalize(w.ws, "(\\x:X. x) ((\\y:X. y) z)", &out), RECMU_OK);
  EXPECT_EQ(take(out)["normal_form"], "z");
}

TEST(CApi, FuelLimits) {
  Ws w("atom T\nX = X -> T\n");
  EXPECT_EQ(recmu_workspace_set_fuel(w.ws, 0), RECMU_ERR_USAGE);
  ASSERT_EQ(recmu_workspace_set_fuel(w.ws, 50), RECMU_OK);
  char* out = nullptr;
  ASSERT_EQ(recmu_normalize(w.ws, "(\\x:X. x x) (\\x:X. x x)", &out), RECMU_OK);
  auto doc = take(out);
  EXPECT_FALSE(doc["verdict"].get<bool>());
  EXPECT_EQ(doc["fuel"], 50);
}

TEST(CApi, ContextAndTranslation) {
  Ws w("");
  ASSERT_EQ(recmu_workspace_set_context(w.ws, "f : X -> Y\nn : X\n"), RECMU_OK);
  char* out = nullptr;
  ASSERT_EQ(recmu_translate(w.ws, "(mu a:X -> Y. [a] f) n", 1, &out), RECMU_OK);
  auto doc = take(out);
  EXPECT_TRUE(doc["verdict"].get<bool>());
  EXPECT_TRUE(doc["verify"]["type_preserved"].get<bool>());
  EXPECT_EQ(doc["verify"]["simulations"].size(), 1u);
  EXPECT_EQ(recmu_workspace_set_context(w.ws, "f : X ->"), RECMU_ERR_SYNTAX);
}

TEST(CApi, NullArguments) {
  char* out = reinterpret_cast<char*>(0x1);
  EXPECT_EQ(recmu_check(nullptr, "x", nullptr, &out), RECMU_ERR_USAGE);
  EXPECT_EQ(out, nullptr);
  Ws w("");
  EXPECT_EQ(recmu_goodness(w.ws, nullptr), RECMU_ERR_USAGE);
  EXPECT_EQ(recmu_workspace_set_context(nullptr, ""), RECMU_ERR_USAGE);
  // A null term is read as empty source.
  EXPECT_EQ(recmu_normalize(w.ws, nullptr, &out), RECMU_ERR_SYNTAX);
}

TEST(CApi, CorpusRun) {
  char* out = nullptr;
  ASSERT_EQ(recmu_corpus_run(RECMU_CORPUS_DIR, "delta", 0, &out), RECMU_OK);
  auto doc = take(out);
  EXPECT_TRUE(doc["verdict"].get<bool>());
  EXPECT_GT(doc["passed"].get<int>(), 0);
  EXPECT_EQ(recmu_corpus_run("/nonexistent/dir", "", 0, &out), RECMU_ERR_IO);
}

TEST(CApi, LastErrorIsPerThread) {
  recmu_workspace* ws = nullptr;
  EXPECT_EQ(recmu_workspace_new("X = ", &ws), RECMU_ERR_SYNTAX);
  std::string other;
  std::thread([&] { other = recmu_last_error(); }).join();
  EXPECT_TRUE(other.empty());
  EXPECT_FALSE(std::string(recmu_last_error()).empty());
}

TEST(CApi, SharedWorkspaceAcrossThreads) {
  Ws w("X1 = X2 -> X1\nX2 = X1 -> X2\n");
  std::vector<std::thread> threads;
  std::vector<int> ok(4, 0);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 50; ++i) {
        char* out = nullptr;
        if (recmu_equiv(w.ws, "X1", "(X1 -> X2) -> X1", &out) == RECMU_OK) {
          ok[t] += json::parse(out)["verdict"].get<bool>() ? 1 : 0;
          recmu_string_free(out);
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int n : ok) EXPECT_EQ(n, 50);
}
