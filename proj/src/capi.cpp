#include "xmod/xmod.h"

#include "xmod/error.hpp"
#include "xmod/report.hpp"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

struct xmod_instance {
  xmod::Instance inst;
};

namespace {

thread_local std::string last_error;

xmod_status set_error(xmod_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

/// Runs body and maps library exceptions onto status codes.
template <class F>
xmod_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const xmod::Error& e) {
    return set_error(e.code() == xmod::ErrorCode::ParseError ? XMOD_PARSE_ERROR : XMOD_VALIDATION_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(XMOD_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(XMOD_INTERNAL, e.what());
  } catch (...) {
    return set_error(XMOD_INTERNAL, "unknown exception");
  }
}

xmod_status check_options(const xmod_options* opts, xmod::RunOptions* out) {
  if (!opts) return XMOD_OK;
  if (!(opts->tolerance > 0.0)) return set_error(XMOD_INVALID_ARGUMENT, "tolerance must be positive");
  out->tolerance = opts->tolerance;
  out->seed = opts->seed;
  return XMOD_OK;
}

xmod_status emit(const xmod::Report& r, char** json_out) {
  *json_out = dup(r.json.dump(2) + "\n");
  if (!r.ok) last_error = "one or more checks failed";
  return r.ok ? XMOD_OK : XMOD_CHECK_FAILED;
}

xmod_status wrap(xmod::Instance inst, xmod_instance** out) {
  *out = new xmod_instance{std::move(inst)};
  return XMOD_OK;
}

}  // namespace

extern "C" {

xmod_options xmod_options_default(void) {
  const xmod::RunOptions d;
  return xmod_options{d.tolerance, d.seed};
}

xmod_status xmod_instance_from_json(const char* json, xmod_instance** out) {
  if (!out) return set_error(XMOD_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  if (!json) return set_error(XMOD_INVALID_ARGUMENT, "null input");
  return guarded([&] { return wrap(xmod::parse_instance(xmod::parse_json_text(json)), out); });
}

xmod_status xmod_instance_from_file(const char* path, xmod_instance** out) {
  if (!out) return set_error(XMOD_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  if (!path) return set_error(XMOD_INVALID_ARGUMENT, "null path");
  return guarded([&] { return wrap(xmod::parse_instance(xmod::read_json_file(path)), out); });
}

void xmod_instance_free(xmod_instance* inst) { delete inst; }

const char* xmod_instance_name(const xmod_instance* inst) { return inst ? inst->inst.name.c_str() : ""; }

size_t xmod_corpus_size(void) { return xmod::bundled_corpus_descriptors().size(); }

xmod_status xmod_corpus_instance(size_t index, xmod_instance** out) {
  if (!out) return set_error(XMOD_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  const auto& all = xmod::bundled_corpus_descriptors();
  if (index >= all.size()) return set_error(XMOD_INVALID_ARGUMENT, "corpus index out of range");
  return guarded([&] { return wrap(xmod::parse_instance(all[index]), out); });
}

xmod_status xmod_run(const char* command, const xmod_instance* inst, const xmod_options* opts, char** json_out) {
  if (!json_out) return set_error(XMOD_INVALID_ARGUMENT, "null output pointer");
  *json_out = nullptr;
  if (!command || !inst) return set_error(XMOD_INVALID_ARGUMENT, "null command or instance");
  xmod::RunOptions o;
  if (const xmod_status s = check_options(opts, &o)) return s;
  const std::string cmd = command;
  return guarded([&] {
    if (cmd == "validate") return emit(xmod::validate_report(inst->inst, o), json_out);
    if (cmd == "invariants") return emit(xmod::invariants_report(inst->inst, o), json_out);
    if (cmd == "crossed-product") return emit(xmod::crossed_product_report(inst->inst, o), json_out);
    if (cmd == "decompose") return emit(xmod::decompose_report(inst->inst, o), json_out);
    return set_error(XMOD_INVALID_ARGUMENT, "unknown command \"" + cmd + "\"");
  });
}

xmod_status xmod_verify(const char* suite, const xmod_instance* inst, const xmod_options* opts, char** json_out) {
  if (!json_out) return set_error(XMOD_INVALID_ARGUMENT, "null output pointer");
  *json_out = nullptr;
  const std::string name = suite ? suite : "all";
  bool known = false;
  for (const auto& s : xmod::suite_names()) known = known || s == name;
  if (!known) return set_error(XMOD_INVALID_ARGUMENT, "unknown suite \"" + name + "\"");
  xmod::RunOptions o;
  if (const xmod_status s = check_options(opts, &o)) return s;
  return guarded([&] {
    if (inst) return emit(xmod::verify_report(name, {inst->inst}, o), json_out);
    return emit(xmod::verify_report(name, xmod::bundled_corpus(), o), json_out);
  });
}

xmod_status xmod_corpus_report(const xmod_options* opts, char** json_out) {
  if (!json_out) return set_error(XMOD_INVALID_ARGUMENT, "null output pointer");
  *json_out = nullptr;
  xmod::RunOptions o;
  if (const xmod_status s = check_options(opts, &o)) return s;
  return guarded([&] { return emit(xmod::corpus_report(o), json_out); });
}

xmod_status xmod_render_human(const char* json, char** text_out) {
  if (!text_out) return set_error(XMOD_INVALID_ARGUMENT, "null output pointer");
  *text_out = nullptr;
  if (!json) return set_error(XMOD_INVALID_ARGUMENT, "null input");
  return guarded([&] {
    *text_out = dup(xmod::render_human(xmod::parse_json_text(json)));
    return XMOD_OK;
  });
}

const char* xmod_last_error(void) { return last_error.c_str(); }

void xmod_string_free(char* s) { std::free(s); }

const char* xmod_version(void) { return "0.1.0"; }

}  // extern "C"
