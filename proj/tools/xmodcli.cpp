#include "xmod/xmod.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

// Exit codes: 0 all checks pass, 1 a check failed, 2 parse or usage error,
// 3 validation error, 4 internal error.
int exit_code(xmod_status s) {
  switch (s) {
    case XMOD_OK: return 0;
    case XMOD_CHECK_FAILED: return 1;
    case XMOD_PARSE_ERROR:
    case XMOD_INVALID_ARGUMENT: return 2;
    case XMOD_VALIDATION_ERROR: return 3;
    default: return 4;
  }
}

struct InstanceDeleter {
  void operator()(xmod_instance* p) const { xmod_instance_free(p); }
};
using InstancePtr = std::unique_ptr<xmod_instance, InstanceDeleter>;

struct StringDeleter {
  void operator()(char* p) const { xmod_string_free(p); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

/// "corpus:NAME" selects a bundled instance; anything else is a file path.
xmod_status load(const std::string& input, InstancePtr* out) {
  xmod_instance* raw = nullptr;
  const std::string prefix = "corpus:";
  if (input.rfind(prefix, 0) != 0) {
    const xmod_status s = xmod_instance_from_file(input.c_str(), &raw);
    out->reset(raw);
    return s;
  }
  const std::string name = input.substr(prefix.size());
  for (size_t i = 0; i < xmod_corpus_size(); ++i) {
    if (const xmod_status s = xmod_corpus_instance(i, &raw)) return s;
    InstancePtr p(raw);
    if (name == xmod_instance_name(p.get())) {
      *out = std::move(p);
      return XMOD_OK;
    }
  }
  std::cerr << "error: no bundled instance named \"" << name << "\"\n";
  return XMOD_INVALID_ARGUMENT;
}

int fail(xmod_status s) {
  std::cerr << "error: " << xmod_last_error() << "\n";
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossed modules of finite groups, Fell bundles over them and their crossed products"};
  app.require_subcommand(1, 1);

  std::string input, output, format = "json", suite = "all";
  double tolerance = 1e-9;
  std::uint64_t seed = 42;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", input, "instance JSON file, or corpus:NAME for a bundled instance");
    if (needs_input) in->required();
    sub->add_option("--tolerance", tolerance, "numerical tolerance (> 0)")->capture_default_str();
    sub->add_option("--seed", seed, "seed for randomized steps")->capture_default_str();
    sub->add_option("--output", output, "write the report here instead of stdout");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "human"}))->capture_default_str();
  };

  const char* commands[][2] = {
      {"validate", "check an instance and every structure it declares"},
      {"invariants", "pi1, pi2 and the boundary's kernel, image and cokernel"},
      {"crossed-product", "crossed product of the instance's action"},
      {"decompose", "four-step decomposition of the crossed product"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), true);
  auto* verify = app.add_subcommand("verify", "run a verification suite on an instance or on the bundled corpus");
  add_common(verify, false);
  verify->add_option("--suite", suite, "fiber, torus, takesaki, roundtrip, partial, decomposition, equivalence, universal, axioms or all")
      ->check(CLI::IsMember({"fiber", "torus", "takesaki", "roundtrip", "partial", "decomposition", "equivalence",
                             "universal", "axioms", "all"}))
      ->capture_default_str();
  add_common(app.add_subcommand("corpus", "list the bundled instances"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (!(tolerance > 0.0)) {
    std::cerr << "error: --tolerance must be positive\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  xmod_options opts = xmod_options_default();
  opts.tolerance = tolerance;
  opts.seed = seed;

  InstancePtr inst;
  if (!input.empty())
    if (const xmod_status s = load(input, &inst)) return s == XMOD_INVALID_ARGUMENT ? 2 : fail(s);

  char* raw = nullptr;
  xmod_status status;
  if (command == "verify")
    status = xmod_verify(suite.c_str(), inst.get(), &opts, &raw);
  else if (command == "corpus")
    status = xmod_corpus_report(&opts, &raw);
  else
    status = xmod_run(command.c_str(), inst.get(), &opts, &raw);
  StringPtr report(raw);
  if (!report) return fail(status);

  std::string text = report.get();
  if (format == "human") {
    char* human = nullptr;
    if (const xmod_status s = xmod_render_human(report.get(), &human)) return fail(s);
    text = StringPtr(human).get();
  }
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!(f << text)) {
      std::cerr << "error: cannot write " << output << "\n";
      return 2;
    }
  }
  if (status == XMOD_CHECK_FAILED) std::cerr << "checks failed\n";
  return exit_code(status);
}
