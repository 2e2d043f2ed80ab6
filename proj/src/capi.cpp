#include "recmu/recmu.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "recmu/workbench.hpp"

struct recmu_workspace {
  std::unique_ptr<recmu::Workspace> impl;
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

recmu_status status_of(recmu::ErrorCode code) {
  return static_cast<recmu_status>(static_cast<int>(code) + 1);
}

template <typename F>
recmu_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return RECMU_OK;
  } catch (const recmu::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return RECMU_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return RECMU_ERR_INTERNAL;
  }
}

template <typename F>
recmu_status json_call(const recmu_workspace* ws, char** out, F&& f) {
  if (out != nullptr) *out = nullptr;
  if (ws == nullptr || out == nullptr) {
    last_error = "null workspace or output pointer";
    return RECMU_ERR_USAGE;
  }
  return guard([&] { *out = copy_out(f(*ws->impl)); });
}

const char* str(const char* s) { return s == nullptr ? "" : s; }

}  // namespace

extern "C" {

const char* recmu_version(void) { return "1.0.0"; }

const char* recmu_status_name(recmu_status status) {
  if (status == RECMU_OK) return "Ok";
  if (status == RECMU_ERR_INTERNAL) return "Internal";
  int v = static_cast<int>(status) - 1;
  if (v < 0 || v > static_cast<int>(recmu::ErrorCode::kUsage)) return "Unknown";
  return recmu::error_code_name(static_cast<recmu::ErrorCode>(v));
}

const char* recmu_last_error(void) { return last_error.c_str(); }

void recmu_string_free(char* s) { std::free(s); }

recmu_status recmu_workspace_new(const char* equations, recmu_workspace** out) {
  if (out == nullptr) {
    last_error = "null output pointer";
    return RECMU_ERR_USAGE;
  }
  *out = nullptr;
  return guard([&] {
    auto ws = std::make_unique<recmu_workspace>();
    ws->impl = std::make_unique<recmu::Workspace>(recmu::Workspace::from_source(str(equations)));
    *out = ws.release();
  });
}

void recmu_workspace_free(recmu_workspace* ws) { delete ws; }

recmu_status recmu_workspace_set_context(recmu_workspace* ws, const char* context) {
  if (ws == nullptr) return RECMU_ERR_USAGE;
  return guard([&] { ws->impl->set_context(str(context)); });
}

recmu_status recmu_workspace_set_fuel(recmu_workspace* ws, size_t fuel) {
  if (ws == nullptr || fuel == 0) {
    last_error = "fuel must be positive";
    return RECMU_ERR_USAGE;
  }
  ws->impl->settings().fuel = fuel;
  return RECMU_OK;
}

recmu_status recmu_workspace_set_strategy(recmu_workspace* ws, recmu_strategy s) {
  if (ws == nullptr) return RECMU_ERR_USAGE;
  ws->impl->settings().strategy = s == RECMU_EXHAUSTIVE ? recmu::Strategy::kExhaustive
                                                        : recmu::Strategy::kLeftmostOutermost;
  return RECMU_OK;
}

int recmu_workspace_is_good(const recmu_workspace* ws) {
  return ws != nullptr && ws->impl->goodness().good ? 1 : 0;
}

recmu_status recmu_check(const recmu_workspace* ws, const char* term, const char* expected,
                         char** json_out) {
  return json_call(ws, json_out, [&](const recmu::Workspace& w) {
    std::optional<std::string> e;
    if (expected != nullptr) e = expected;
    return w.check_json(str(term), e);
  });
}

recmu_status recmu_equiv(const recmu_workspace* ws, const char* left, const char* right,
                         char** json_out) {
  return json_call(ws, json_out,
                   [&](const recmu::Workspace& w) { return w.equiv_json(str(left), str(right)); });
}

recmu_status recmu_goodness(const recmu_workspace* ws, char** json_out) {
  return json_call(ws, json_out, [](const recmu::Workspace& w) { return w.goodness_json(); });
}

recmu_status recmu_analyze(const recmu_workspace* ws, char** json_out) {
  return json_call(ws, json_out, [](const recmu::Workspace& w) { return w.analyze_json(); });
}

recmu_status recmu_normalize(const recmu_workspace* ws, const char* term, char** json_out) {
  return json_call(ws, json_out,
                   [&](const recmu::Workspace& w) { return w.normalize_json(str(term)); });
}

recmu_status recmu_trace(const recmu_workspace* ws, const char* term, char** json_out) {
  return json_call(ws, json_out,
                   [&](const recmu::Workspace& w) { return w.trace_json(str(term)); });
}

recmu_status recmu_eta(const recmu_workspace* ws, const char* term, char** json_out) {
  return json_call(ws, json_out, [&](const recmu::Workspace& w) { return w.eta_json(str(term)); });
}

recmu_status recmu_sn(const recmu_workspace* ws, const char* term, char** json_out) {
  return json_call(ws, json_out, [&](const recmu::Workspace& w) { return w.sn_json(str(term)); });
}

recmu_status recmu_translate(const recmu_workspace* ws, const char* term, int verify,
                             char** json_out) {
  return json_call(ws, json_out, [&](const recmu::Workspace& w) {
    return w.translate_json(str(term), verify != 0);
  });
}

recmu_status recmu_corpus_run(const char* dir, const char* filter, size_t fuel, char** json_out) {
  if (json_out == nullptr) return RECMU_ERR_USAGE;
  *json_out = nullptr;
  return guard([&] {
    *json_out = copy_out(
        recmu::corpus_json(str(dir), str(filter), fuel == 0 ? recmu::default_fuel() : fuel));
  });
}

}  // extern "C"
