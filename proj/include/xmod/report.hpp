#pragma once

#include "xmod/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace xmod {

struct RunOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
};

/// A JSON report ("schema": 1) and whether every check in it passed.
struct Report {
  Json json;
  bool ok = true;
};

Report validate_report(const Instance& inst, const RunOptions& opt);
Report invariants_report(const Instance& inst, const RunOptions& opt);
Report crossed_product_report(const Instance& inst, const RunOptions& opt);
Report decompose_report(const Instance& inst, const RunOptions& opt);

/// fiber, torus, takesaki, roundtrip, partial, decomposition, equivalence,
/// universal, axioms, all.
const std::vector<std::string>& suite_names();
/// Errors: ParseError for an unknown suite.
Report verify_report(const std::string& suite, const std::vector<Instance>& instances, const RunOptions& opt);
Report corpus_report(const RunOptions& opt);

/// Indented key: value text derived from a report.
std::string render_human(const Json& report);

}  // namespace xmod
