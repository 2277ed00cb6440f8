#include "xmod/report.hpp"

#include "xmod/duality.hpp"
#include "xmod/error.hpp"

#include <functional>
#include <optional>
#include <sstream>

namespace xmod {

namespace {

Json group_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"structure", describe(g)}, {"abelian", g.is_abelian()}};
}

Json cm_json(const CrossedModule& c) {
  return {{"summary", describe(c)},     {"G", group_json(c.G)},          {"H", group_json(c.H)},
          {"two_abelian", c.is_two_abelian()}, {"abelian", c.is_abelian()}, {"thin", c.is_thin()}};
}

Json dims_json(const DimensionVector& v) { return Json(v); }

Json header(const std::string& command, const RunOptions& opt) {
  return {{"schema", 1}, {"command", command}, {"tolerance", opt.tolerance}, {"seed", opt.seed}};
}

const StrictAction& need_action(const Instance& inst, const std::string& command) {
  if (!inst.action) fail(ErrorCode::ParseError, "/action: required by " + command);
  return *inst.action;
}

std::string action_kind(const Instance& inst) {
  const auto it = inst.descriptor.find("action");
  if (it == inst.descriptor.end() || !it->is_object()) return "";
  return it->value("kind", "explicit");
}

Json error_json(const Error& e) { return {{"ok", false}, {"error", e.what()}}; }

/// Representations checked for the universal property: the canonical one and
/// the projection onto each simple summand of the crossed product.
std::vector<std::pair<std::string, Representation>> corpus_representations(const FellBundleCM& cmb,
                                                                           const CrossedProduct& cp,
                                                                           std::uint64_t seed) {
  std::vector<std::pair<std::string, Representation>> reps;
  reps.emplace_back("canonical", canonical_representation(cmb));
  if (cp.degenerate) return reps;
  const WedderburnResult w = wedderburn(cp.algebra, seed);
  const StarAlgebra& B = cp.algebra;
  for (std::size_t b = 0; b < w.dims.size() && w.dims.size() > 1; ++b) {
    const Mat rest = orthonormal_span(B.left_mult(B.unit() - w.idempotents[b]));
    const QuotientAlgebra q = quotient_algebra(B, rest);
    reps.emplace_back("block " + std::to_string(b) + " (M" + std::to_string(w.dims[b]) + ")",
                      make_representation(cmb, q.algebra, q.projection.matrix * cp.projection.matrix));
  }
  return reps;
}

Json axioms_json(const std::string& which, const StarAlgebra& a, bool* ok) {
  const AxiomReport r = axiom_report(a);
  const double tol = check_tolerance(1.0);
  const bool good = r.associativity <= tol && r.involution <= tol && r.unit <= tol && r.min_trace_eigenvalue > 0.0;
  *ok = *ok && good;
  return {{"algebra", which},      {"dim", a.dim()},         {"associativity", r.associativity},
          {"involution", r.involution}, {"unit", r.unit}, {"min_trace_eigenvalue", r.min_trace_eigenvalue},
          {"ok", good}};
}

using SuiteFn = std::function<std::optional<Json>(const Instance&, const RunOptions&)>;

std::optional<Json> suite_fiber(const Instance& inst, const RunOptions&) {
  if (!inst.action || !inst.C.is_two_abelian()) return std::nullopt;
  const FiberCheck r = crossed_product_via_fiber_check(semidirect_bundle(*inst.action), 1e-8);
  return Json{{"op", "crossed_product_via_fiber_check"},
              {"ideal_dim", r.ideal_dim},
              {"fiber_ideal_dim", r.fiber_ideal_dim},
              {"residual", r.residual},
              {"ok", r.ok}};
}

std::optional<Json> suite_torus(const Instance& inst, const RunOptions& opt) {
  if (!inst.action || action_kind(inst) != "finite_torus") return std::nullopt;
  const int n = inst.C.G.order();
  const CrossedProduct cp = crossed_product(semidirect_bundle(*inst.action));
  const DimensionVector dims = wedderburn(cp.algebra, opt.seed).dims;
  return Json{{"op", "crossed_product"}, {"n", n}, {"dimension_vector", dims_json(dims)},
              {"expected", dims_json({n})}, {"ok", dims == DimensionVector{n}}};
}

std::optional<Json> suite_takesaki(const Instance& inst, const RunOptions&) {
  if (!inst.action || !inst.C.G.is_abelian()) return std::nullopt;
  const StrictAction& act = *inst.action;
  const CharacterGroup cg = character_group(act.C.G);
  const TakesakiTakai tt = takesaki_takai(act.A, act.C.G, act.alpha, cg.dual, cg.pairing);
  const bool ok = takesaki_takai_check(act);
  return Json{{"op", "takesaki_takai_check"},
              {"iterated", dims_json(tt.iterated_dims)},
              {"tensor", dims_json(tt.tensor_dims)},
              {"covariance_residual", tt.covariance_residual},
              {"ok", ok}};
}

std::optional<Json> suite_roundtrip(const Instance& inst, const RunOptions&) {
  if (!inst.action || !inst.C.is_abelian()) return std::nullopt;
  const RoundTrip r = duality_roundtrip(*inst.action, 1e-8);
  Json j{{"op", "duality_roundtrip_check"},
         {"algebra", dims_json(r.algebra_dims)},
         {"expected", dims_json(r.expected_dims)},
         {"unitary_residual", r.unitary_residual},
         {"action_residual", r.action_residual},
         {"ok", r.ok}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

std::optional<Json> suite_partial(const Instance& inst, const RunOptions&) {
  if (!inst.extension) return std::nullopt;
  const PartialCrossedCheck r = check_partial_crossed(inst.extension->action, inst.extension->ext);
  Json j{{"op", "verify_partial_crossed"},
         {"extension", inst.extension->kind},
         {"C1", describe(inst.extension->ext.C1)},
         {"C2", describe(inst.extension->ext.C2)},
         {"C3", describe(inst.extension->ext.C3)},
         {"direct", dims_json(r.direct)},
         {"iterated", dims_json(r.iterated)},
         {"middle_equivalent_to_C3", r.equivalent_to_c3},
         {"ok", r.ok}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

Json decomposition_json(const DecompositionReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json js{{"step", s.name}, {"input_dim", s.input_dim}, {"ideal_dim", s.ideal_dim},
            {"output_dim", s.output_dim}, {"dimension_vector", dims_json(s.dims)}, {"ok", s.ok}};
    if (!s.detail.empty()) js["detail"] = s.detail;
    steps.push_back(js);
  }
  return {{"op", "full_decomposition"}, {"steps", steps}, {"direct", dims_json(r.direct)},
          {"result", dims_json(r.result)}, {"seed", r.seed}, {"ok", r.ok}};
}

std::optional<Json> suite_decomposition(const Instance& inst, const RunOptions& opt) {
  if (!inst.action) return std::nullopt;
  return decomposition_json(full_decomposition(*inst.action, opt.seed));
}

std::optional<Json> suite_equivalence(const Instance& inst, const RunOptions& opt) {
  if (inst.equivalences.empty()) return std::nullopt;
  Json list = Json::array();
  bool ok = true;
  std::optional<FellBundleCM> cmb;
  DimensionVector original;
  if (inst.action) {
    cmb = semidirect_bundle(*inst.action);
    original = wedderburn(crossed_product(*cmb).algebra, opt.seed).dims;
  }
  for (const auto& e : inst.equivalences) {
    const PiComparison pc = compare_pi(e.hom);
    const bool certified = is_equivalence(e.hom);
    Json j{{"kind", e.kind},
           {"source", describe(e.hom.src)},
           {"target", describe(e.hom.dst)},
           {"op", "compare_pi"},
           {"certified", certified},
           {"pi1_iso", pc.pi1_iso},
           {"pi2_iso", pc.pi2_iso},
           {"module_compatible", pc.module_compatible}};
    bool good = certified && pc.ok();
    if (cmb) {
      DimensionVector other = original;
      if (e.quotient) other = wedderburn(crossed_product(descend_bundle(*cmb, *e.quotient).bundle).algebra, opt.seed).dims;
      if (e.enlargement) other = wedderburn(crossed_product(restrict_bundle(*cmb, *e.enlargement)).algebra, opt.seed).dims;
      j["crossed_product"] = dims_json(original);
      j["corresponding_crossed_product"] = dims_json(other);
      good = good && other == original;
    }
    j["ok"] = good;
    ok = ok && good;
    list.push_back(j);
  }
  return Json{{"op", "equivalence invariants"}, {"equivalences", list}, {"ok", ok}};
}

std::optional<Json> suite_universal(const Instance& inst, const RunOptions& opt) {
  if (!inst.action) return std::nullopt;
  const FellBundleCM cmb = semidirect_bundle(*inst.action);
  const CrossedProduct cp = crossed_product(cmb);
  Json list = Json::array();
  bool ok = true;
  for (const auto& [name, rep] : corpus_representations(cmb, cp, opt.seed)) {
    Json j{{"representation", name}, {"target_dim", rep.target.dim()}};
    try {
      const Factorization f = universal_factorization(cmb, rep);
      j["kernel_dim"] = f.kernel_dim;
      j["residual"] = f.residual;
      j["ok"] = f.kernel_dim == 0;
      ok = ok && f.kernel_dim == 0;
    } catch (const Error& e) {
      j["ok"] = false;
      j["error"] = e.what();
      ok = false;
    }
    list.push_back(j);
  }
  return Json{{"op", "universal_factorization"}, {"representations", list}, {"ok", ok}};
}

std::optional<Json> suite_axioms(const Instance& inst, const RunOptions&) {
  if (!inst.action) return std::nullopt;
  bool ok = true;
  const FellBundleCM cmb = semidirect_bundle(*inst.action);
  Json list = Json::array();
  list.push_back(axioms_json("A", inst.action->A, &ok));
  list.push_back(axioms_json("sections", cmb.bundle.total, &ok));
  const CrossedProduct cp = crossed_product(cmb);
  if (!cp.degenerate) list.push_back(axioms_json("crossed product", cp.algebra, &ok));
  return Json{{"op", "axiom_report"}, {"algebras", list}, {"ok", ok}};
}

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"fiber", suite_fiber},         {"torus", suite_torus},
      {"takesaki", suite_takesaki},   {"roundtrip", suite_roundtrip},
      {"partial", suite_partial},     {"decomposition", suite_decomposition},
      {"equivalence", suite_equivalence}, {"universal", suite_universal},
      {"axioms", suite_axioms},
  };
  return all;
}

void render(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar_list = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  auto scalar = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !scalar_list(v))) {
        os << pad << k << ":\n";
        render(os, v, indent + 1);
      } else {
        os << pad << k << ": " << (v.is_array() ? v.dump() : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        os << pad << "-\n";
        render(os, v, indent + 1);
      } else {
        os << pad << "- " << scalar(v) << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

Report validate_report(const Instance& inst, const RunOptions& opt) {
  const ScopedTolerance scope(opt.tolerance);
  Report r;
  r.json = header("validate", opt);
  r.json["instance"] = inst.name;
  r.json["crossed_module"] = cm_json(inst.C);
  if (inst.action) {
    bool ok = true;
    Json a = axioms_json("A", inst.action->A, &ok);
    a["op"] = "make_strict_action";
    r.json["action"] = a;
    r.ok = r.ok && ok;
  }
  if (inst.extension) {
    const auto& e = inst.extension->ext;
    r.json["extension"] = {{"kind", inst.extension->kind}, {"op", "make_strict_extension"},
                           {"C1", describe(e.C1)}, {"C2", describe(e.C2)}, {"C3", describe(e.C3)}};
  }
  Json eqs = Json::array();
  for (const auto& e : inst.equivalences) {
    const bool certified = is_equivalence(e.hom);
    eqs.push_back({{"kind", e.kind}, {"target", describe(e.hom.dst)}, {"op", "equivalence_certificate"}, {"ok", certified}});
    r.ok = r.ok && certified;
  }
  if (!eqs.empty()) r.json["equivalences"] = eqs;
  r.json["ok"] = r.ok;
  return r;
}

Report invariants_report(const Instance& inst, const RunOptions& opt) {
  const ScopedTolerance scope(opt.tolerance);
  Report r;
  r.json = header("invariants", opt);
  r.json["instance"] = inst.name;
  r.json["crossed_module"] = cm_json(inst.C);
  const Quotient p1 = pi1(inst.C);
  const Pi2 p2 = pi2(inst.C);
  bool trivial_action = true;
  for (const auto& a : p2.action)
    for (Elem x = 0; x < static_cast<Elem>(a.size()); ++x) trivial_action = trivial_action && a[x] == x;
  r.json["pi1"] = {{"op", "pi1"}, {"order", p1.group.order()},
                   {"structure", p1.group.order() == 1 ? "1" : describe(p1.group)}};
  r.json["pi2"] = {{"op", "pi2"}, {"order", p2.kernel.order()},
                   {"structure", p2.kernel.order() == 1 ? "0" : describe(p2.kernel.group)},
                   {"pi1_action_trivial", trivial_action}};
  r.json["boundary"] = {{"kernel_order", kernel(inst.C.boundary).order()},
                        {"image_order", image(inst.C.boundary).order()},
                        {"cokernel_order", p1.group.order()}};
  r.json["ok"] = true;
  return r;
}

Report crossed_product_report(const Instance& inst, const RunOptions& opt) {
  const ScopedTolerance scope(opt.tolerance);
  const StrictAction& act = need_action(inst, "crossed-product");
  Report r;
  r.json = header("crossed-product", opt);
  r.json["instance"] = inst.name;
  r.json["crossed_module"] = cm_json(inst.C);
  const FellBundleCM cmb = semidirect_bundle(act);
  const CrossedProduct cp = crossed_product(cmb);
  r.json["algebra_dim"] = act.A.dim();
  r.json["sections_dim"] = cp.sections.dim();
  r.json["ideal_dim"] = static_cast<int>(cp.ideal.cols());
  r.json["dim"] = cp.algebra.dim();
  r.json["degenerate"] = cp.degenerate;
  r.json["dimension_vector"] = dims_json(wedderburn(cp.algebra, opt.seed).dims);
  Json checks = Json::array();
  try {
    const Factorization f = universal_factorization(cmb, canonical_representation(cmb));
    checks.push_back({{"check", "universal property"}, {"op", "universal_factorization"},
                      {"kernel_dim", f.kernel_dim}, {"residual", f.residual}, {"ok", f.kernel_dim == 0}});
    r.ok = r.ok && f.kernel_dim == 0;
  } catch (const Error& e) {
    Json j = error_json(e);
    j["check"] = "universal property";
    checks.push_back(j);
    r.ok = false;
  }
  if (auto fiber = suite_fiber(inst, opt)) {
    (*fiber)["check"] = "fiber at the trivial character";
    checks.push_back(*fiber);
    r.ok = r.ok && (*fiber)["ok"].get<bool>();
  }
  r.json["checks"] = checks;
  r.json["ok"] = r.ok;
  return r;
}

Report decompose_report(const Instance& inst, const RunOptions& opt) {
  const ScopedTolerance scope(opt.tolerance);
  const StrictAction& act = need_action(inst, "decompose");
  Report r;
  r.json = header("decompose", opt);
  r.json["instance"] = inst.name;
  r.json["crossed_module"] = cm_json(inst.C);
  const Decomposition d = decompose(inst.C);
  r.json["pieces"] = {{"kernel", describe(d.C1)}, {"quotient", describe(d.C2)}, {"thin", describe(d.C3)},
                      {"cokernel", describe(d.C4)}};
  r.json["decomposition"] = decomposition_json(full_decomposition(act, opt.seed));
  r.ok = r.json["decomposition"]["ok"].get<bool>();
  if (auto partial = suite_partial(inst, opt)) {
    r.json["partial_crossed"] = *partial;
    r.ok = r.ok && (*partial)["ok"].get<bool>();
  }
  r.json["ok"] = r.ok;
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : suites()) v.push_back(s.first);
    v.push_back("all");
    return v;
  }();
  return names;
}

Report verify_report(const std::string& suite, const std::vector<Instance>& instances, const RunOptions& opt) {
  const ScopedTolerance scope(opt.tolerance);
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  for (const auto& s : suites())
    if (suite == "all" || suite == s.first) chosen.push_back(s);
  if (chosen.empty()) fail(ErrorCode::ParseError, "unknown suite \"" + suite + "\"");
  Report r;
  r.json = header("verify", opt);
  r.json["suite"] = suite;
  Json results = Json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& [name, fn] : chosen)
    for (const Instance& inst : instances) {
      Json entry{{"suite", name}, {"instance", inst.name}};
      try {
        const std::optional<Json> j = fn(inst, opt);
        if (!j) {
          ++skipped;
          continue;
        }
        entry.update(*j);
      } catch (const Error& e) {
        entry.update(error_json(e));
      }
      const bool ok = entry["ok"].get<bool>();
      ok ? ++passed : ++failed;
      r.ok = r.ok && ok;
      results.push_back(entry);
    }
  r.json["results"] = results;
  r.json["passed"] = passed;
  r.json["failed"] = failed;
  r.json["not_applicable"] = skipped;
  r.json["ok"] = r.ok;
  return r;
}

Report corpus_report(const RunOptions& opt) {
  const ScopedTolerance scope(opt.tolerance);
  Report r;
  r.json = header("corpus", opt);
  Json list = Json::array();
  for (const Json& d : bundled_corpus_descriptors()) {
    Json entry{{"name", d["name"]}, {"description", d.value("description", "")}};
    try {
      const Instance inst = parse_instance(d);
      entry["crossed_module"] = describe(inst.C);
      entry["algebra_dim"] = inst.action ? inst.action->A.dim() : 0;
      entry["extension"] = inst.extension ? inst.extension->kind : "";
      Json kinds = Json::array();
      for (const auto& e : inst.equivalences) kinds.push_back(e.kind);
      entry["equivalences"] = kinds;
      entry["valid"] = true;
    } catch (const Error& e) {
      entry["valid"] = false;
      entry["error"] = e.what();
      r.ok = false;
    }
    entry["descriptor"] = d;
    list.push_back(entry);
  }
  r.json["count"] = static_cast<int>(list.size());
  r.json["instances"] = list;
  r.json["ok"] = r.ok;
  return r;
}

std::string render_human(const Json& report) {
  std::ostringstream os;
  render(os, report, 0);
  return os.str();
}

}  // namespace xmod
