#include "xmod/io.hpp"

#include "xmod/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace xmod {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::ParseError, (where.empty() ? std::string("/") : where) + ": " + what);
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(where, "missing field \"" + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

int as_positive(const Json& j, const std::string& where) {
  const int n = as_int(j, where);
  if (n < 1) bad(where, "expected a positive integer");
  return n;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::vector<Elem> as_elems(const Json& j, const std::string& where) {
  std::vector<Elem> v;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i) v.push_back(as_int(j[i], at(where, i)));
  return v;
}

std::vector<Elem> as_elems_in(const Json& j, int bound, const std::string& where) {
  std::vector<Elem> v = as_elems(j, where);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < 0 || v[i] >= bound) bad(at(where, i), "element out of range [0, " + std::to_string(bound) + ")");
  return v;
}

Vec as_vector(const Json& j, const std::string& where) {
  Vec v(static_cast<Eigen::Index>(as_array(j, where).size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], at(where, i));
  return v;
}

Mat as_matrix(const Json& j, const std::string& where) {
  const auto rows = as_array(j, where).size();
  if (rows == 0) bad(where, "empty matrix");
  const auto cols = as_array(j[0], at(where, 0)).size();
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (as_array(j[r], at(where, r)).size() != cols) bad(at(where, r), "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c], at(at(where, r), c));
  }
  return m;
}

std::string kind_of(const Json& j, const std::string& where, const char* fallback) {
  if (!j.is_object()) bad(where, "expected an object");
  const auto it = j.find("kind");
  return it == j.end() ? std::string(fallback) : as_string(*it, at(where, "kind"));
}

bool same_cm(const CrossedModule& a, const CrossedModule& b) {
  return a.G == b.G && a.H == b.H && a.boundary.map() == b.boundary.map() && a.conj == b.conj;
}

/// c_g(h) = ∂^-1(g ∂(h) g^-1) for an injective boundary.
std::vector<Automorphism> conjugation_through(const FiniteGroup& G, const FiniteGroup& H, const GroupHom& d,
                                              const std::string& where) {
  if (!d.is_injective()) bad(where, "\"conjugation\" needs an injective boundary");
  std::vector<Elem> back(G.order(), -1);
  for (Elem h = 0; h < H.order(); ++h) back[d(h)] = h;
  std::vector<Automorphism> conj(G.order(), Automorphism(H.order()));
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem h = 0; h < H.order(); ++h) {
      const Elem x = back[G.mul(G.mul(g, d(h)), G.inv(g))];
      if (x < 0) fail(ErrorCode::NotNormal, "image of the boundary is not normal");
      conj[g][h] = x;
    }
  return conj;
}

StrictAction parse_action(const Json& j, const CrossedModule& C, const std::optional<StarAlgebra>& A,
                          const std::string& where) {
  const std::string kind = kind_of(j, where, "explicit");
  auto need_algebra = [&]() -> const StarAlgebra& {
    if (!A) bad(where, "action \"" + kind + "\" needs an \"algebra\"");
    return *A;
  };
  auto check_algebra = [&](const StrictAction& act) {
    if (A && A->dim() != act.A.dim())
      fail(ErrorCode::Mismatch, "algebra has dimension " + std::to_string(A->dim()) + ", action needs " +
                                    std::to_string(act.A.dim()));
    return act;
  };
  if (kind == "trivial") return trivial_strict_action(need_algebra(), C);
  if (kind == "scalar") {
    std::vector<Vec> u;
    const Json& chi = require(j, "character", where);
    if (as_array(chi, at(where, "character")).size() != static_cast<std::size_t>(C.H.order()))
      bad(at(where, "character"), "needs one value per element of H");
    for (std::size_t h = 0; h < chi.size(); ++h)
      u.push_back(Vec::Constant(1, parse_complex(chi[h], at(at(where, "character"), h))));
    return check_algebra(make_strict_action(complex_numbers(), C, std::vector<Mat>(C.G.order(), Mat::Identity(1, 1)), u));
  }
  if (kind == "finite_torus") {
    const StrictAction t = finite_torus_action(as_positive(require(j, "n", where), at(where, "n")));
    if (!same_cm(t.C, C)) fail(ErrorCode::Mismatch, "finite_torus needs the crossed module (Z/n, Z/n, id, trivial)");
    return check_algebra(t);
  }
  if (kind == "inner") {
    std::vector<Mat> V;
    const auto rit = j.find("representation");
    if (rit == j.end() || (rit->is_string() && rit->get<std::string>() == "regular")) {
      V = regular_representation(C.G);
    } else {
      const std::string w = at(where, "representation");
      if (as_array(*rit, w).size() != static_cast<std::size_t>(C.G.order())) bad(w, "needs one matrix per element of G");
      for (std::size_t g = 0; g < rit->size(); ++g) V.push_back(as_matrix((*rit)[g], at(w, g)));
    }
    std::vector<cplx> chi(C.H.order(), 1.0);
    if (const auto cit = j.find("character"); cit != j.end()) {
      const std::string w = at(where, "character");
      if (as_array(*cit, w).size() != chi.size()) bad(w, "needs one value per element of H");
      for (std::size_t h = 0; h < chi.size(); ++h) chi[h] = parse_complex((*cit)[h], at(w, h));
    }
    return check_algebra(inner_strict_action(C, V, chi));
  }
  if (kind == "translation") {
    const FiniteGroup L = parse_group(require(j, "target", where), at(where, "target"));
    const auto map = as_elems_in(require(j, "map", where), L.order(), at(where, "map"));
    return check_algebra(translation_action(C, make_hom(C.G, L, map)));
  }
  if (kind == "explicit") {
    const StarAlgebra& a = need_algebra();
    const std::string wa = at(where, "alpha"), wu = at(where, "u");
    const Json& ja = as_array(require(j, "alpha", where), wa);
    const Json& ju = as_array(require(j, "u", where), wu);
    std::vector<Mat> alpha;
    std::vector<Vec> u;
    for (std::size_t g = 0; g < ja.size(); ++g) alpha.push_back(as_matrix(ja[g], at(wa, g)));
    for (std::size_t h = 0; h < ju.size(); ++h) u.push_back(as_vector(ju[h], at(wu, h)));
    return make_strict_action(a, C, std::move(alpha), std::move(u));
  }
  bad(at(where, "kind"), "unknown action kind \"" + kind + "\"");
}

/// (N, 1) ↣ (G, 1) ↠ (G/N, 1) for a group crossed module.
StrictExtension normal_subgroup_extension(const CrossedModule& C, const Subgroup& N) {
  if (C.H.order() != 1) fail(ErrorCode::Mismatch, "normal_subgroup extension needs a crossed module (G, 1)");
  const Quotient q = quotient(C.G, N);
  const auto cn = group_crossed_module(N.group);
  const auto cq = group_crossed_module(q.group);
  return make_strict_extension(cn, C, cq, make_cm_hom(cn, C, N.inclusion, make_hom(cn.H, C.H, {0})),
                               make_cm_hom(C, cq, q.projection, make_hom(C.H, cq.H, {0})));
}

Instance::Extension parse_extension(const Json& j, const CrossedModule& C, const StrictAction& act,
                                    const std::string& where) {
  Instance::Extension e;
  e.kind = kind_of(j, where, "");
  if (e.kind == "kernel" || e.kind == "image" || e.kind == "trivial") {
    e.ext = e.kind == "kernel" ? kernel_extension(C) : e.kind == "image" ? image_extension(C) : trivial_extension(C);
    e.action = act;
  } else if (e.kind == "normal_subgroup") {
    const auto n = as_elems_in(require(j, "N", where), C.G.order(), at(where, "N"));
    e.ext = normal_subgroup_extension(C, make_subgroup(C.G, n));
    e.action = act;
  } else if (e.kind == "semidirect") {
    e.ext = semidirect_extension(C);
    const auto pit = j.find("pullback");
    const std::string pullback = pit == j.end() ? "group" : as_string(*pit, at(where, "pullback"));
    if (pullback == "projection") {
      e.action = pullback_action(act, e.ext.proj);
    } else if (pullback == "group") {
      // The G-part of the action with u = 1, through (g, h) ↦ g.
      const auto cg = group_crossed_module(C.G);
      const auto on_g = make_strict_action(act.A, cg, act.alpha, {act.A.unit()});
      std::vector<Elem> first(e.ext.C2.G.order());
      for (Elem x = 0; x < e.ext.C2.G.order(); ++x) first[x] = x / C.H.order();
      e.action = pullback_action(
          on_g, make_cm_hom(e.ext.C2, cg, make_hom(e.ext.C2.G, C.G, first), zero_hom(e.ext.C2.H, cg.H)));
    } else {
      bad(at(where, "pullback"), "expected \"group\" or \"projection\"");
    }
  } else {
    bad(at(where, "kind"), "unknown extension kind \"" + e.kind + "\"");
  }
  return e;
}

Instance::Equivalence parse_equivalence(const Json& j, const CrossedModule& C, const std::string& where) {
  Instance::Equivalence e;
  e.kind = kind_of(j, where, "");
  if (e.kind == "identity") {
    e.hom = identity_cm_hom(C);
  } else if (e.kind == "quotient") {
    const auto n = as_elems_in(require(j, "N", where), C.H.order(), at(where, "N"));
    e.quotient = quotient_equivalence(C, make_subgroup(C.H, n));
    e.hom = e.quotient->hom;
  } else if (e.kind == "enlarge") {
    const auto g1 = as_elems_in(require(j, "G1", where), C.G.order(), at(where, "G1"));
    e.enlargement = enlarge_equivalence(C, make_subgroup(C.G, g1));
    e.hom = e.enlargement->hom;
  } else {
    bad(at(where, "kind"), "unknown equivalence kind \"" + e.kind + "\"");
  }
  return e;
}

}  // namespace

cplx parse_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad(where, "expected a number or [re, im]");
}

FiniteGroup parse_group(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected a group descriptor object");
  static const char* kinds[] = {"cyclic", "symmetric", "table", "product", "semidirect", "trivial"};
  const char* found = nullptr;
  for (const char* k : kinds)
    if (j.contains(k)) {
      if (found) bad(where, std::string("both \"") + found + "\" and \"" + k + "\" given");
      found = k;
    }
  if (!found) bad(where, "expected one of cyclic, symmetric, table, product, semidirect, trivial");
  const std::string key = found;
  const std::string w = at(where, key);
  const Json& v = j[key];
  FiniteGroup g;
  if (key == "cyclic") {
    g = cyclic_group(as_positive(v, w));
  } else if (key == "symmetric") {
    const int n = as_positive(v, w);
    if (n > 5) bad(w, "symmetric groups above S5 are not supported");
    g = symmetric_group(n);
  } else if (key == "trivial") {
    g = trivial_group();
  } else if (key == "table") {
    std::vector<std::vector<Elem>> table;
    for (std::size_t i = 0; i < as_array(v, w).size(); ++i) table.push_back(as_elems(v[i], at(w, i)));
    g = make_group(table);
  } else if (key == "product") {
    std::vector<FiniteGroup> factors;
    for (std::size_t i = 0; i < as_array(v, w).size(); ++i) factors.push_back(parse_group(v[i], at(w, i)));
    if (factors.empty()) bad(w, "empty product");
    g = direct_product(factors);
  } else {
    const FiniteGroup base = parse_group(require(v, "G", w), at(w, "G"));
    const FiniteGroup fiber = parse_group(require(v, "H", w), at(w, "H"));
    const std::string wa = at(w, "action");
    const Json& ja = as_array(require(v, "action", w), wa);
    if (ja.size() != static_cast<std::size_t>(base.order())) bad(wa, "needs one automorphism per element of G");
    std::vector<Automorphism> act;
    for (std::size_t i = 0; i < ja.size(); ++i) act.push_back(as_elems_in(ja[i], fiber.order(), at(wa, i)));
    g = semidirect_product(base, fiber, act);
  }
  if (const auto it = j.find("name"); it != j.end()) g = g.with_name(as_string(*it, at(where, "name")));
  return g;
}

CrossedModule parse_crossed_module(const Json& j, const std::string& where) {
  const std::string kind = kind_of(j, where, "explicit");
  CrossedModule c;
  if (kind == "group") {
    c = group_crossed_module(parse_group(require(j, "G", where), at(where, "G")));
  } else if (kind == "kernel") {
    c = kernel_crossed_module(parse_group(require(j, "H", where), at(where, "H")));
  } else if (kind == "identity") {
    c = identity_crossed_module(parse_group(require(j, "G", where), at(where, "G")));
  } else if (kind == "normal_subgroup") {
    const FiniteGroup G = parse_group(require(j, "G", where), at(where, "G"));
    const auto n = as_elems_in(require(j, "N", where), G.order(), at(where, "N"));
    c = normal_subgroup_crossed_module(G, make_subgroup(G, n));
  } else if (kind == "explicit") {
    const FiniteGroup G = parse_group(require(j, "G", where), at(where, "G"));
    const FiniteGroup H = parse_group(require(j, "H", where), at(where, "H"));
    const std::string wb = at(where, "boundary");
    const auto b = as_elems_in(require(j, "boundary", where), G.order(), wb);
    if (b.size() != static_cast<std::size_t>(H.order())) bad(wb, "needs one entry per element of H");
    const GroupHom d = make_hom(H, G, b);
    std::vector<Automorphism> conj;
    const auto cit = j.find("conj");
    const std::string wc = at(where, "conj");
    if (cit == j.end() || (cit->is_string() && cit->get<std::string>() == "trivial")) {
      conj = trivial_action(G, H);
    } else if (cit->is_string() && cit->get<std::string>() == "conjugation") {
      conj = conjugation_through(G, H, d, wc);
    } else {
      if (as_array(*cit, wc).size() != static_cast<std::size_t>(G.order())) bad(wc, "needs one automorphism per element of G");
      for (std::size_t g = 0; g < cit->size(); ++g) {
        conj.push_back(as_elems_in((*cit)[g], H.order(), at(wc, g)));
        if (conj.back().size() != static_cast<std::size_t>(H.order())) bad(at(wc, g), "needs one entry per element of H");
      }
    }
    c = make_crossed_module(G, H, d, std::move(conj));
  } else {
    bad(at(where, "kind"), "unknown crossed module kind \"" + kind + "\"");
  }
  if (const auto it = j.find("name"); it != j.end()) c.name = as_string(*it, at(where, "name"));
  return c;
}

StarAlgebra parse_algebra(const Json& j, const std::string& where) {
  const std::string kind = kind_of(j, where, "explicit");
  if (kind == "complex") return complex_numbers();
  if (kind == "matrix") return matrix_algebra(as_positive(require(j, "n", where), at(where, "n")));
  if (kind == "functions") return functions_on(as_positive(require(j, "n", where), at(where, "n")));
  if (kind == "group_algebra") return group_algebra(parse_group(require(j, "group", where), at(where, "group")));
  if (kind == "tensor" || kind == "direct_sum") {
    const char* key = kind == "tensor" ? "factors" : "summands";
    const std::string w = at(where, key);
    const Json& parts = as_array(require(j, key, where), w);
    if (parts.size() < 2) bad(w, "needs at least two entries");
    StarAlgebra a = parse_algebra(parts[0], at(w, 0));
    for (std::size_t i = 1; i < parts.size(); ++i)
      a = kind == "tensor" ? tensor(a, parse_algebra(parts[i], at(w, i))) : direct_sum(a, parse_algebra(parts[i], at(w, i)));
    return a;
  }
  if (kind == "explicit") {
    const int d = as_positive(require(j, "dim", where), at(where, "dim"));
    std::vector<std::vector<Term>> products(static_cast<std::size_t>(d) * d);
    const std::string wm = at(where, "mul");
    const Json& mul = as_array(require(j, "mul", where), wm);
    for (std::size_t t = 0; t < mul.size(); ++t) {
      const std::string w = at(wm, t);
      const Json& e = as_array(mul[t], w);
      if (e.size() != 4 && e.size() != 5) bad(w, "expected [i, j, k, re] or [i, j, k, re, im]");
      int idx[3];
      for (int r = 0; r < 3; ++r) {
        idx[r] = as_int(e[r], at(w, r));
        if (idx[r] < 0 || idx[r] >= d) bad(at(w, r), "basis index out of range");
      }
      if (!e[3].is_number() || (e.size() == 5 && !e[4].is_number())) bad(w, "coefficients must be numbers");
      const double im = e.size() == 5 ? e[4].get<double>() : 0.0;
      products[static_cast<std::size_t>(idx[0]) * d + idx[1]].push_back({idx[2], cplx(e[3].get<double>(), im)});
    }
    const std::string ws = at(where, "star");
    const Mat s = as_matrix(require(j, "star", where), ws);
    if (s.rows() != d || s.cols() != d) bad(ws, "star must be dim x dim");
    std::optional<Vec> unit;
    if (const auto it = j.find("unit"); it != j.end()) {
      unit = as_vector(*it, at(where, "unit"));
      if (unit->size() != d) bad(at(where, "unit"), "unit must have dim entries");
    }
    std::string name;
    if (const auto it = j.find("name"); it != j.end()) name = as_string(*it, at(where, "name"));
    return make_algebra(d, std::move(products), s, unit, name);
  }
  bad(at(where, "kind"), "unknown algebra kind \"" + kind + "\"");
}

Instance parse_instance(const Json& j) {
  if (!j.is_object()) bad("", "expected an instance object");
  if (const auto it = j.find("schema"); it != j.end() && (!it->is_number_integer() || it->get<int>() != 1))
    bad("/schema", "unsupported schema version");
  static const char* known[] = {"schema", "name", "description", "crossed_module", "algebra",
                                "action", "extension", "equivalences"};
  for (const auto& [key, value] : j.items())
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      bad("/" + key, "unknown field");
  Instance inst;
  inst.descriptor = j;
  inst.name = as_string(require(j, "name", ""), "/name");
  inst.C = parse_crossed_module(require(j, "crossed_module", ""), "/crossed_module");
  std::optional<StarAlgebra> A;
  if (const auto it = j.find("algebra"); it != j.end()) A = parse_algebra(*it, "/algebra");
  if (const auto it = j.find("action"); it != j.end()) inst.action = parse_action(*it, inst.C, A, "/action");
  if (const auto it = j.find("extension"); it != j.end()) {
    if (!inst.action) bad("/extension", "an extension needs an \"action\"");
    inst.extension = parse_extension(*it, inst.C, *inst.action, "/extension");
  }
  if (const auto it = j.find("equivalences"); it != j.end())
    for (std::size_t i = 0; i < as_array(*it, "/equivalences").size(); ++i)
      inst.equivalences.push_back(parse_equivalence((*it)[i], inst.C, at("/equivalences", i)));
  return inst;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    // Report the line and column rather than a byte offset.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

std::vector<Instance> bundled_corpus() {
  std::vector<Instance> out;
  for (const Json& j : bundled_corpus_descriptors()) out.push_back(parse_instance(j));
  return out;
}

}  // namespace xmod
