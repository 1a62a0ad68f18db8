#include "expinterp/expinterp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "expinterp/error.hpp"
#include "expinterp/io.hpp"

struct ei_scenario {
  expinterp::Scenario value;
};

struct ei_report {
  expinterp::AnalysisReport value;
};

namespace {

thread_local std::string g_last_error;

ei_status fail(ei_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

ei_status map_error(const expinterp::Error& e) {
  using expinterp::ErrorCode;
  const std::string msg = std::string(expinterp::error_code_name(e.code())) + ": " + e.what();
  switch (e.code()) {
    case ErrorCode::SchemaError: return fail(EI_SCHEMA_ERROR, msg);
    case ErrorCode::PayloadMissing: return fail(EI_PAYLOAD_MISSING, msg);
    default: return fail(EI_INVALID_ARGUMENT, msg);
  }
}

ei_status copy_out(const std::string& text, char** out) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) return fail(EI_OUT_OF_MEMORY, "allocation failed");
  std::memcpy(buf, text.data(), text.size() + 1);
  *out = buf;
  return EI_OK;
}

template <class F>
ei_status guarded(F&& body) {
  try {
    return body();
  } catch (const expinterp::Error& e) {
    return map_error(e);
  } catch (const std::bad_alloc&) {
    return fail(EI_OUT_OF_MEMORY, "allocation failed");
  } catch (const std::exception& e) {
    return fail(EI_HARD_ERROR, e.what());
  }
}

}  // namespace

extern "C" {

ei_status ei_scenario_parse(const char* text, size_t len, ei_scenario** out) {
  if (!text || !out) return fail(EI_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new ei_scenario{expinterp::parse_scenario(std::string_view(text, len))};
    return EI_OK;
  });
}

void ei_scenario_free(ei_scenario* s) { delete s; }

ei_status ei_scenario_set_task(ei_scenario* s, const char* task) {
  if (!s || !task) return fail(EI_INVALID_ARGUMENT, "null argument");
  const auto t = expinterp::parse_task(task);
  if (!t) return fail(EI_INVALID_ARGUMENT, std::string("unknown task '") + task + "'");
  s->value.task = *t;
  return EI_OK;
}

ei_status ei_scenario_set_seed(ei_scenario* s, uint64_t seed) {
  if (!s) return fail(EI_INVALID_ARGUMENT, "null argument");
  s->value.params.seed = seed;
  return EI_OK;
}

ei_status ei_scenario_emit(const ei_scenario* s, char** out) {
  if (!s || !out) return fail(EI_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(expinterp::emit_scenario(s->value), out); });
}

ei_status ei_run(const ei_scenario* s, ei_report** out) {
  if (!s || !out) return fail(EI_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new ei_report{expinterp::run(s->value)};
    return EI_OK;
  });
}

void ei_report_free(ei_report* r) { delete r; }

int ei_report_has_hard_error(const ei_report* r) { return r && r->value.hard_error ? 1 : 0; }

ei_status ei_report_emit(const ei_report* r, ei_format format, char** out) {
  if (!r || !out) return fail(EI_INVALID_ARGUMENT, "null argument");
  const auto f = format == EI_FORMAT_MACHINE ? expinterp::Format::Machine : expinterp::Format::Human;
  return guarded([&] { return copy_out(expinterp::emit_report(r->value, f), out); });
}

ei_status ei_report_plotdata(const ei_report* r, const char* what, const ei_grid* grid, char** out) {
  if (!r || !what || !out) return fail(EI_INVALID_ARGUMENT, "null argument");
  const auto kind = expinterp::parse_plot_kind(what);
  if (!kind) return fail(EI_INVALID_ARGUMENT, std::string("unknown plot payload '") + what + "'");
  expinterp::Grid g;
  if (grid) g = {grid->re_min, grid->re_max, grid->im_min, grid->im_max, grid->nx, grid->ny};
  if (g.nx < 1 || g.ny < 1) return fail(EI_INVALID_ARGUMENT, "grid needs at least one sample per axis");
  return guarded([&] { return copy_out(expinterp::emit_plotdata(r->value, *kind, g), out); });
}

ei_status ei_verify(const ei_report* r, const char* coeffs, size_t len, ei_format format, char** out) {
  if (!r || !coeffs || !out) return fail(EI_INVALID_ARGUMENT, "null argument");
  const auto f = format == EI_FORMAT_MACHINE ? expinterp::Format::Machine : expinterp::Format::Human;
  return guarded([&] {
    const auto u = expinterp::parse_expsum(std::string_view(coeffs, len));
    return copy_out(expinterp::emit_verify(expinterp::verify_solution(r->value, u), f), out);
  });
}

const char* ei_last_error(void) { return g_last_error.c_str(); }

const char* ei_status_name(ei_status status) {
  switch (status) {
    case EI_OK: return "OK";
    case EI_SCHEMA_ERROR: return "SCHEMA_ERROR";
    case EI_HARD_ERROR: return "HARD_ERROR";
    case EI_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case EI_PAYLOAD_MISSING: return "PAYLOAD_MISSING";
    case EI_OUT_OF_MEMORY: return "OUT_OF_MEMORY";
  }
  return "UNKNOWN";
}

void ei_string_free(char* s) { std::free(s); }

}  // extern "C"
