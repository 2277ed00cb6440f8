#include "xmod/decomposition.hpp"

#include "xmod/error.hpp"

#include <Eigen/LU>

#include <optional>
#include <string>

namespace xmod {

namespace {

bool same_cm(const CrossedModule& a, const CrossedModule& b) {
  return a.G == b.G && a.H == b.H && a.boundary.map() == b.boundary.map() && a.conj == b.conj;
}

/// Inverse of an injective map on its image, -1 elsewhere.
std::vector<Elem> partial_inverse(const GroupHom& f) {
  std::vector<Elem> inv(f.dst().order(), -1);
  for (Elem x = 0; x < f.src().order(); ++x) inv[f(x)] = x;
  return inv;
}

DimensionVector dims_of(const StarAlgebra& a, std::uint64_t seed) { return wedderburn(a, seed).dims; }

}  // namespace

StrictAction restrict_strict_action(const StrictAction& act, const StrictExtension& ext) {
  if (!same_cm(act.C, ext.C2)) fail(ErrorCode::Mismatch, "action is not over the middle term of the extension");
  return pullback_action(act, ext.incl);
}

IntermediateAction partial_crossed(const StrictAction& act, const StrictExtension& ext) {
  IntermediateAction ia;
  ia.ext = ext;
  const StrictAction restricted = restrict_strict_action(act, ext);
  const FellBundleCM sb = semidirect_bundle(restricted);
  ia.base = crossed_product(sb);
  if (ia.base.degenerate) fail(ErrorCode::UnitFiberInvalid, "A x| C1 is zero");

  const CrossedModule& c1 = ext.C1;
  const CrossedModule& c2 = ext.C2;
  const FiniteGroup& G1 = c1.G;
  const FiniteGroup& G2 = c2.G;
  const FiniteGroup& H2 = c2.H;
  const GroupHom& phi1 = ext.incl.phi;
  const std::vector<Elem> phi1_inv = partial_inverse(phi1);
  const int d = act.A.dim();
  const int n1 = G1.order();
  const int nh = H2.order();

  // G2 acts on sections by α on coefficients and conjugation on degrees.
  const Mat& P = ia.base.projection.matrix;
  const Mat& Q = ia.base.lift;
  std::vector<Mat> gamma(G2.order());
  for (Elem g2 = 0; g2 < G2.order(); ++g2) {
    Mat prime = Mat::Zero(d * n1, d * n1);
    for (Elem g1 = 0; g1 < n1; ++g1) {
      const Elem conj = phi1_inv[G2.mul(G2.mul(g2, phi1(g1)), G2.inv(g2))];
      if (conj < 0) fail(ErrorCode::NotExtension, "G1 is not normal in G2");
      prime.block(conj * d, g1 * d, d, d) = act.alpha[g2];
    }
    ia.ideal_residual = std::max(ia.ideal_residual, max_abs(P * prime * ia.base.ideal));
    gamma[g2] = P * prime * Q;
  }

  // Pairs (g1, h2) with g1 acting on H2 through φ1, modulo the antidiagonal copy of H1.
  std::vector<Automorphism> on_h2(n1);
  for (Elem g1 = 0; g1 < n1; ++g1) on_h2[g1] = c2.conj[phi1(g1)];
  ia.pairs = semidirect_product(G1, H2, on_h2);
  std::vector<Elem> antidiagonal;
  for (Elem h = 0; h < c1.H.order(); ++h)
    antidiagonal.push_back(semidirect_pair(H2, G1.inv(c1.d(h)), ext.incl.psi(h)));
  ia.middle = quotient(ia.pairs, make_subgroup(ia.pairs, antidiagonal));
  const FiniteGroup& Hmid = ia.middle.group;
  const int nm = Hmid.order();

  std::vector<Elem> boundary(nm);
  std::vector<Automorphism> conj(G2.order(), Automorphism(nm));
  std::vector<Vec> U(nm);
  const StarAlgebra& sections = sb.bundle.total;
  for (Elem q = 0; q < nm; ++q) {
    const Elem rep = ia.middle.transversal[q];
    const Elem g1 = rep / nh, h2 = rep % nh;
    boundary[q] = G2.mul(phi1(g1), c2.d(h2));
    for (Elem g2 = 0; g2 < G2.order(); ++g2) {
      const Elem moved = phi1_inv[G2.mul(G2.mul(g2, phi1(g1)), G2.inv(g2))];
      conj[g2][q] = ia.middle.projection(semidirect_pair(H2, moved, c2.c(g2, h2)));
    }
    const Vec delta = sb.bundle.embed(g1, restricted.A.unit());
    const Vec unitary = sb.bundle.embed(0, act.u[h2]);
    U[q] = P * sections.multiply(delta, unitary);
  }
  const CrossedModule cmid = make_crossed_module(G2, Hmid, make_hom(Hmid, G2, boundary), std::move(conj),
                                                 "(" + G2.name() + ", " + Hmid.name() + ")");
  ia.action = make_strict_action(ia.base.algebra, cmid, std::move(gamma), std::move(U),
                                 ia.base.algebra.name() + " <- " + cmid.name);

  // Killing the G1-part leaves (G2/G1, H2/H1) ≅ C3.
  std::vector<Elem> g1_part;
  for (Elem g1 = 0; g1 < n1; ++g1) g1_part.push_back(ia.middle.projection(semidirect_pair(H2, g1, 0)));
  ia.to_quotient = quotient_equivalence(cmid, make_subgroup(Hmid, g1_part));
  const QuotientEquivalence& qe = ia.to_quotient;
  const CrossedModule& c3 = ext.C3;
  std::vector<Elem> phi(qe.qG.group.order()), psi(qe.qH.group.order());
  for (Elem t = 0; t < qe.qG.group.order(); ++t) phi[t] = ext.proj.phi(qe.qG.transversal[t]);
  for (Elem s = 0; s < qe.qH.group.order(); ++s)
    psi[s] = ext.proj.psi(ia.middle.transversal[qe.qH.transversal[s]] % nh);
  try {
    ia.quotient_to_c3 = make_cm_hom(qe.target, c3, make_hom(qe.target.G, c3.G, phi), make_hom(qe.target.H, c3.H, psi));
    ia.equivalent_to_c3 = is_equivalence(ia.quotient_to_c3);
  } catch (const Error&) {
    ia.equivalent_to_c3 = false;
  }
  return ia;
}

PartialCrossedCheck check_partial_crossed(const StrictAction& act, const StrictExtension& ext) {
  PartialCrossedCheck r;
  try {
    // A zero A x| C1 has a zero crossed product by anything.
    if (crossed_product(semidirect_bundle(restrict_strict_action(act, ext))).degenerate) {
      r.direct = dims_of(crossed_product(semidirect_bundle(act)).algebra, 42);
      r.ok = r.direct.empty();
      r.detail = "A x| C1 is zero, so the iterated crossed product is zero";
      return r;
    }
    const IntermediateAction ia = partial_crossed(act, ext);
    r.equivalent_to_c3 = ia.equivalent_to_c3;
    r.direct = dims_of(crossed_product(semidirect_bundle(act)).algebra, 42);
    r.iterated = dims_of(crossed_product(semidirect_bundle(ia.action)).algebra, 42);
    const double tol = check_tolerance(1.0);
    r.ok = r.direct == r.iterated && r.equivalent_to_c3 && ia.ideal_residual <= tol;
    if (!r.ok)
      r.detail = "direct " + to_string(r.direct) + ", iterated " + to_string(r.iterated) +
                 (r.equivalent_to_c3 ? "" : ", middle term not equivalent to C3") +
                 ", ideal residual " + std::to_string(ia.ideal_residual);
  } catch (const Error& e) {
    r.ok = false;
    r.detail = e.what();
  }
  return r;
}

StrictAction transport_action(const StrictAction& act, const Mat& theta) {
  make_star_hom(act.A, act.A, theta);
  const Mat inv = theta.fullPivLu().inverse();
  std::vector<Mat> alpha(act.alpha.size());
  for (std::size_t g = 0; g < alpha.size(); ++g) alpha[g] = theta * act.alpha[g] * inv;
  std::vector<Vec> u(act.u.size());
  for (std::size_t h = 0; h < u.size(); ++h) u[h] = theta * act.u[h];
  return make_strict_action(act.A, act.C, std::move(alpha), std::move(u), act.name);
}

double naturality_residual(const StrictAction& act, const Mat& theta, const StrictExtension& ext) {
  const IntermediateAction a = partial_crossed(act, ext);
  const IntermediateAction b = partial_crossed(transport_action(act, theta), ext);
  const int d = act.A.dim();
  const int n1 = ext.C1.G.order();
  Mat lifted = Mat::Zero(d * n1, d * n1);
  for (int g = 0; g < n1; ++g) lifted.block(g * d, g * d, d, d) = theta;
  const Mat& pb = b.base.projection.matrix;
  const Mat induced = pb * lifted * a.base.lift;
  double res = max_abs(pb * lifted * a.base.ideal);
  res = std::max(res, star_hom_residual(a.base.algebra, b.base.algebra, induced));
  for (std::size_t g = 0; g < a.action.alpha.size(); ++g)
    res = std::max(res, max_abs(induced * a.action.alpha[g] - b.action.alpha[g] * induced));
  for (std::size_t q = 0; q < a.action.u.size(); ++q)
    res = std::max(res, max_abs(induced * a.action.u[q] - b.action.u[q]));
  return res;
}

DecompositionReport full_decomposition(const StrictAction& act, std::uint64_t seed) {
  DecompositionReport rep;
  rep.seed = seed;
  const double tol = check_tolerance(1.0);
  auto run = [&](DecompositionStep step, auto&& body) {
    try {
      body(step);
    } catch (const Error& e) {
      step.ok = false;
      step.detail = e.what();
    }
    rep.steps.push_back(step);
    return step.ok;
  };

  try {
    rep.direct = dims_of(crossed_product(semidirect_bundle(act)).algebra, seed);
  } catch (const Error& e) {
    rep.steps.push_back({"direct", act.A.dim(), 0, 0, {}, false, e.what()});
    return rep;
  }

  const StrictExtension kernel = kernel_extension(act.C);
  if (crossed_product(semidirect_bundle(restrict_strict_action(act, kernel))).degenerate) {
    rep.steps.push_back({"fiber over the trivial character of ker", act.A.dim(), act.A.dim(), 0, {}, true,
                         "the fiber is zero, so every later step is zero"});
    rep.ok = rep.direct.empty();
    return rep;
  }

  std::optional<IntermediateAction> fiber, thin;
  bool ok = run({"fiber over the trivial character of ker", 0, 0, 0, {}, true, {}}, [&](DecompositionStep& s) {
    fiber = partial_crossed(act, kernel);
    const StarAlgebra& A = act.A;
    const int nk = fiber->ext.C1.H.order();
    Vec p = Vec::Zero(A.dim());
    for (Elem k = 0; k < nk; ++k) p += act.u[fiber->ext.incl.psi(k)];
    p /= static_cast<double>(nk);
    const Mat expected = orthonormal_span(A.left_mult(A.unit() - p));
    double res = 0.0;
    s.input_dim = A.dim();
    s.ideal_dim = static_cast<int>(fiber->base.ideal.cols());
    s.output_dim = fiber->base.algebra.dim();
    s.dims = dims_of(fiber->base.algebra, seed);
    s.ok = same_subspace(fiber->base.ideal, expected, tol, &res) && fiber->equivalent_to_c3;
    if (!s.ok) s.detail = "ideal differs from the fiber ideal, residual " + std::to_string(res);
  });
  ok = ok && run({"crossed product by the thin part", 0, 0, 0, {}, true, {}}, [&](DecompositionStep& s) {
    thin = partial_crossed(fiber->action, image_extension(fiber->action.C));
    s.input_dim = fiber->base.algebra.dim() * thin->ext.C1.G.order();
    s.ideal_dim = static_cast<int>(thin->base.ideal.cols());
    s.output_dim = thin->base.algebra.dim();
    s.dims = dims_of(thin->base.algebra, seed);
    s.ok = thin->equivalent_to_c3 && thin->ideal_residual <= tol && thin->action.C.boundary.is_injective();
    if (!s.ok) s.detail = "remaining crossed module is not (G, thin) over the cokernel";
  });
  std::optional<DescendedBundle> descended;
  ok = ok && run({"descend to the cokernel", 0, 0, 0, {}, true, {}}, [&](DecompositionStep& s) {
    const CrossedModule& c = thin->action.C;
    const QuotientEquivalence q = quotient_equivalence(c, whole_subgroup(c.H));
    descended = descend_bundle(semidirect_bundle(thin->action), q);
    s.input_dim = thin->base.algebra.dim();
    s.output_dim = descended->bundle.bundle.total.dim();
    s.dims = dims_of(descended->bundle.bundle.unit_fiber, seed);
    s.ok = descended->pullback_residual <= tol;
    if (!s.ok) s.detail = "pullback residual " + std::to_string(descended->pullback_residual);
  });
  ok = ok && run({"crossed product by the cokernel", 0, 0, 0, {}, true, {}}, [&](DecompositionStep& s) {
    const CrossedProduct cp = crossed_product(descended->bundle);
    s.input_dim = cp.sections.dim();
    s.ideal_dim = static_cast<int>(cp.ideal.cols());
    s.output_dim = cp.algebra.dim();
    s.dims = dims_of(cp.algebra, seed);
    rep.result = s.dims;
  });
  rep.ok = ok && rep.result == rep.direct;
  return rep;
}

}  // namespace xmod
