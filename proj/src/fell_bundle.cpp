#include "xmod/fell_bundle.hpp"

#include "xmod/error.hpp"

#include <algorithm>
#include <numeric>

namespace xmod {

namespace {

std::string str(long v) { return std::to_string(v); }

bool same_cm(const CrossedModule& a, const CrossedModule& b) {
  return a.G == b.G && a.H == b.H && a.boundary.map() == b.boundary.map() && a.conj == b.conj;
}

/// Σ_k x_k e_k e_j in total coordinates, straight from the product table.
Vec times_basis(const std::vector<std::vector<Term>>& products, int dim, const Vec& x, int j) {
  Vec r = Vec::Zero(dim);
  for (int k = 0; k < dim; ++k) {
    if (x(k) == cplx(0.0)) continue;
    for (const auto& t : products[static_cast<std::size_t>(k) * dim + j]) r(t.k) += x(k) * t.c;
  }
  return r;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
  return r;
}

FellBundle semidirect_fell_bundle(const StarAlgebra& A, const FiniteGroup& G, const std::vector<Mat>& alpha,
                                  const std::string& name) {
  const int d = A.dim(), n = G.order(), D = d * n;
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(D) * D);
  for (Elem f = 0; f < n; ++f)
    for (int i = 0; i < d; ++i) {
      // column j of m holds e_i α_f(e_j)
      const Mat m = A.left_basis(i) * alpha[f];
      for (Elem g = 0; g < n; ++g) {
        const int out = G.mul(f, g) * d;
        for (int j = 0; j < d; ++j) {
          auto& dst = p[static_cast<std::size_t>(f * d + i) * D + g * d + j];
          for (int k = 0; k < d; ++k)
            if (m(k, j) != cplx(0.0)) dst.push_back({out + k, m(k, j)});
        }
      }
    }
  Mat s = Mat::Zero(D, D);
  for (Elem g = 0; g < n; ++g) {
    const Elem gi = G.inv(g);
    s.block(static_cast<Eigen::Index>(gi) * d, static_cast<Eigen::Index>(g) * d, d, d) = alpha[gi] * A.star_matrix();
  }
  return make_fell_bundle(G, std::vector<int>(n, d), std::move(p), s, name);
}

}  // namespace

Elem FellBundle::degree(int index) const {
  auto it = std::upper_bound(offset.begin(), offset.end(), index);
  return static_cast<Elem>(it - offset.begin()) - 1;
}

Mat FellBundle::embedding(Elem g) const {
  Mat e = Mat::Zero(total.dim(), fiber_dim(g));
  for (int i = 0; i < fiber_dim(g); ++i) e(offset[g] + i, i) = 1.0;
  return e;
}

Vec FellBundle::embed(Elem g, const Vec& a) const {
  Vec x = Vec::Zero(total.dim());
  x.segment(offset[g], fiber_dim(g)) = a;
  return x;
}

double FellBundle::off_fiber(Elem g, const Vec& x) const {
  double r = 0.0;
  for (int k = 0; k < x.size(); ++k)
    if (k < offset[g] || k >= offset[g + 1]) r = std::max(r, std::abs(x(k)));
  return r;
}

FellBundle make_fell_bundle(const FiniteGroup& G, const std::vector<int>& fiber_dims,
                            std::vector<std::vector<Term>> products, const Mat& star, std::string name) {
  const int n = G.order();
  if (static_cast<int>(fiber_dims.size()) != n) fail(ErrorCode::BadShape, "need one fiber dimension per group element");
  FellBundle b;
  b.G = G;
  b.offset.assign(n + 1, 0);
  for (Elem g = 0; g < n; ++g) {
    if (fiber_dims[g] < 0) fail(ErrorCode::BadShape, "negative fiber dimension");
    b.offset[g + 1] = b.offset[g] + fiber_dims[g];
  }
  const int D = b.offset[n];
  if (products.size() != static_cast<std::size_t>(D) * D) fail(ErrorCode::BadShape, "product table has wrong size");
  if (star.rows() != D || star.cols() != D) fail(ErrorCode::BadShape, "star matrix has wrong shape");
  if (fiber_dims[0] == 0) fail(ErrorCode::UnitFiberInvalid, "unit fiber is zero");
  for (const auto& p : products)
    for (const auto& t : p)
      if (t.k < 0 || t.k >= D) fail(ErrorCode::BadShape, "structure constant index out of range");

  std::vector<Elem> deg(D);
  for (int i = 0; i < D; ++i) deg[i] = b.degree(i);
  double scale = 0.0;
  for (const auto& p : products)
    for (const auto& t : p) scale = std::max(scale, std::abs(t.c));
  const double noise = check_tolerance(scale);

  // Grading: drop numerical dust, reject anything larger.
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      auto& p = products[static_cast<std::size_t>(i) * D + j];
      const Elem want = G.mul(deg[i], deg[j]);
      std::vector<Term> kept;
      for (const auto& t : p) {
        if (deg[t.k] == want) {
          kept.push_back(t);
        } else if (std::abs(t.c) > noise) {
          fail(ErrorCode::GradingViolation, "product of basis " + str(i) + " (fiber " + str(deg[i]) + ") and " +
                                                str(j) + " (fiber " + str(deg[j]) + ") leaves fiber " + str(want));
        }
      }
      p = std::move(kept);
    }
  Mat s = star;
  const double star_noise = check_tolerance(max_abs(star));
  for (int j = 0; j < D; ++j)
    for (int k = 0; k < D; ++k)
      if (deg[k] != G.inv(deg[j])) {
        if (std::abs(s(k, j)) > star_noise)
          fail(ErrorCode::GradingViolation, "star of basis " + str(j) + " leaves fiber " + str(G.inv(deg[j])));
        s(k, j) = 0.0;
      }

  // Unit fiber.
  const int d1 = fiber_dims[0];
  {
    std::vector<std::vector<Term>> p1(static_cast<std::size_t>(d1) * d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) p1[static_cast<std::size_t>(i) * d1 + j] = products[static_cast<std::size_t>(i) * D + j];
    try {
      b.unit_fiber = make_algebra(d1, std::move(p1), s.topLeftCorner(d1, d1), std::nullopt,
                                  (name.empty() ? std::string("A") : name) + "_1");
    } catch (const Error& e) {
      fail(ErrorCode::UnitFiberInvalid, e.what());
    }
  }

  // Positivity: τ_1(a* b) on each fiber must be positive definite.
  for (Elem g = 1; g < n; ++g) {
    const int dg = fiber_dims[g];
    if (dg == 0) continue;
    Mat w(dg, dg);
    for (int c = 0; c < dg; ++c) {
      const Vec cstar = s.col(b.offset[g] + c);
      for (int e = 0; e < dg; ++e) {
        const Vec prod = times_basis(products, D, cstar, b.offset[g] + e);
        w(c, e) = b.unit_fiber.trace(prod.head(d1));
      }
    }
    if (max_abs(w - w.adjoint()) > check_tolerance(max_abs(w)))
      fail(ErrorCode::NotPositive, "fiber " + str(g) + ": a* b is not Hermitian under the unit-fiber trace");
    Eigen::SelfAdjointEigenSolver<Mat> es((w + w.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (lo <= tolerance() * std::max(1.0, hi))
      fail(ErrorCode::NotPositive, "fiber " + str(g) + ": a* a has trace " + std::to_string(lo));
  }

  Vec unit = Vec::Zero(D);
  unit.head(d1) = b.unit_fiber.unit();
  b.total = make_algebra(D, std::move(products), s, unit, name.empty() ? "C*(bundle)" : name);

  // Saturation: A_g A_{g^-1} spans the unit fiber.
  b.saturated = true;
  for (Elem g = 0; g < n && b.saturated; ++g) {
    const Elem gi = G.inv(g);
    const int dg = fiber_dims[g], dgi = fiber_dims[gi];
    if (dg == 0 || dgi == 0) {
      b.saturated = false;
      break;
    }
    Mat span(d1, static_cast<Eigen::Index>(dg) * dgi);
    for (int i = 0; i < dg; ++i) {
      const Mat left = b.total.left_basis(b.offset[g] + i);
      span.middleCols(static_cast<Eigen::Index>(i) * dgi, dgi) = left.block(0, b.offset[gi], d1, dgi);
    }
    if (rank_of(span) < d1) b.saturated = false;
  }
  return b;
}

FellBundle graded_bundle(const FiniteGroup& G, const StarAlgebra& a, const std::vector<Elem>& degree) {
  const int D = a.dim();
  if (static_cast<int>(degree.size()) != D) fail(ErrorCode::BadShape, "need one degree per basis element");
  std::vector<int> order(D);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return degree[x] < degree[y]; });
  std::vector<int> pos(D);
  for (int i = 0; i < D; ++i) pos[order[i]] = i;
  std::vector<int> dims(G.order(), 0);
  for (int i = 0; i < D; ++i) {
    if (degree[i] < 0 || degree[i] >= G.order()) fail(ErrorCode::BadShape, "degree out of range");
    ++dims[degree[i]];
  }
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(D) * D);
  Mat s(D, D);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) {
      auto& dst = p[static_cast<std::size_t>(i) * D + j];
      for (const auto& t : a.product(order[i], order[j])) dst.push_back({pos[t.k], t.c});
      s(i, j) = a.star_matrix()(order[i], order[j]);
    }
  }
  return make_fell_bundle(G, dims, std::move(p), s, a.name());
}

FellBundle constant_bundle(const FiniteGroup& G, const StarAlgebra& fiber) {
  const StarAlgebra t = tensor(fiber, group_algebra(G));
  std::vector<Elem> degree(t.dim());
  for (int i = 0; i < t.dim(); ++i) degree[i] = i % G.order();
  return graded_bundle(G, t, degree);
}

FellBundleCM make_cm_bundle(const CrossedModule& C, const FellBundle& bundle, std::vector<Vec> u) {
  if (!(C.G == bundle.G)) fail(ErrorCode::Mismatch, "bundle is not over the crossed module's G");
  const int nh = C.H.order(), D = bundle.total.dim();
  if (static_cast<int>(u.size()) != nh) fail(ErrorCode::BadShape, "need one unitary per element of H");
  const StarAlgebra& A = bundle.total;
  const Vec& one = A.unit();
  for (Elem h = 0; h < nh; ++h) {
    if (u[h].size() != D) fail(ErrorCode::BadShape, "unitary has wrong length");
    if (bundle.off_fiber(C.d(h), u[h]) > check_tolerance())
      fail(ErrorCode::GradingViolation, "u_" + str(h) + " is not in fiber " + str(C.d(h)));
  }
  for (Elem h = 0; h < nh; ++h) {
    const Vec us = A.star(u[h]);
    const double r = std::max(max_abs(A.multiply(us, u[h]) - one),
                              max_abs(A.multiply(u[h], us) - one));
    if (r > check_tolerance()) fail(ErrorCode::NotUnitary, "u_" + str(h) + " residual " + std::to_string(r));
  }
  for (Elem h1 = 0; h1 < nh; ++h1)
    for (Elem h2 = 0; h2 < nh; ++h2)
      if (max_abs(A.multiply(u[h1], u[h2]) - u[C.H.mul(h1, h2)]) > check_tolerance())
        fail(ErrorCode::NotHomomorphism, "u_" + str(h1) + " u_" + str(h2) + " != u_" + str(C.H.mul(h1, h2)));
  std::vector<Mat> left(nh), right(nh);
  for (Elem h = 0; h < nh; ++h) {
    left[h] = A.left_mult(u[h]);
    right[h] = A.right_mult(u[h]);
  }
  for (Elem g = 0; g < C.G.order(); ++g) {
    const int dg = bundle.fiber_dim(g);
    if (dg == 0) continue;
    for (Elem h = 0; h < nh; ++h) {
      const Mat diff = right[h].middleCols(bundle.offset[g], dg) - left[C.c(g, h)].middleCols(bundle.offset[g], dg);
      if (max_abs(diff) > check_tolerance())
        fail(ErrorCode::EquivarianceViolation, "a u_h != u_{c_g(h)} a for g=" + str(g) + ", h=" + str(h));
    }
  }
  return FellBundleCM{C, bundle, std::move(u)};
}

FellBundleCM trivial_cm_bundle(const CrossedModule& C, const StarAlgebra& fiber) {
  FellBundle b = constant_bundle(C.G, fiber);
  std::vector<Vec> u(C.H.order());
  for (Elem h = 0; h < C.H.order(); ++h) u[h] = b.embed(C.d(h), fiber.unit());
  return make_cm_bundle(C, b, std::move(u));
}

Mat inner_automorphism(const StarAlgebra& a, const Vec& v) { return a.left_mult(v) * a.right_mult(a.star(v)); }

StrictAction make_strict_action(const StarAlgebra& A, const CrossedModule& C, std::vector<Mat> alpha,
                                std::vector<Vec> u, std::string name) {
  const int d = A.dim(), ng = C.G.order(), nh = C.H.order();
  if (static_cast<int>(alpha.size()) != ng) fail(ErrorCode::BadShape, "need one automorphism per element of G");
  if (static_cast<int>(u.size()) != nh) fail(ErrorCode::BadShape, "need one unitary per element of H");
  for (const auto& m : alpha)
    if (m.rows() != d || m.cols() != d) fail(ErrorCode::BadShape, "automorphism matrix has wrong shape");
  for (const auto& v : u)
    if (v.size() != d) fail(ErrorCode::BadShape, "unitary has wrong length");
  double scale = 1.0;
  for (const auto& m : alpha) scale = std::max(scale, max_abs(m));
  const double tol = check_tolerance(scale);
  for (Elem g = 0; g < ng; ++g) {
    const double r = star_hom_residual(A, A, alpha[g]);
    if (r > check_tolerance(scale * scale))
      fail(ErrorCode::NotStrictAction, "alpha_" + str(g) + " is not a *-endomorphism (residual " + std::to_string(r) + ")");
    if (rank_of(alpha[g]) < d) fail(ErrorCode::NotStrictAction, "alpha_" + str(g) + " is not invertible");
  }
  if (max_abs(alpha[0] - Mat::Identity(d, d)) > tol) fail(ErrorCode::NotStrictAction, "alpha of the identity is not id");
  for (Elem g = 0; g < ng; ++g)
    for (Elem k = 0; k < ng; ++k)
      if (max_abs(alpha[g] * alpha[k] - alpha[C.G.mul(g, k)]) > check_tolerance(scale * scale))
        fail(ErrorCode::NotStrictAction, "alpha_" + str(g) + " alpha_" + str(k) + " != alpha_" + str(C.G.mul(g, k)));
  for (Elem h = 0; h < nh; ++h) {
    const Vec us = A.star(u[h]);
    const double r = std::max(max_abs(A.multiply(us, u[h]) - A.unit()),
                              max_abs(A.multiply(u[h], us) - A.unit()));
    if (r > tol) fail(ErrorCode::NotUnitary, "u_" + str(h) + " residual " + std::to_string(r));
  }
  for (Elem h1 = 0; h1 < nh; ++h1)
    for (Elem h2 = 0; h2 < nh; ++h2)
      if (max_abs(A.multiply(u[h1], u[h2]) - u[C.H.mul(h1, h2)]) > tol)
        fail(ErrorCode::NotStrictAction, "u_" + str(h1) + " u_" + str(h2) + " != u_" + str(C.H.mul(h1, h2)));
  for (Elem h = 0; h < nh; ++h)
    if (max_abs(alpha[C.d(h)] - inner_automorphism(A, u[h])) > tol)
      fail(ErrorCode::NotStrictAction, "alpha_{d(h)} != Ad(u_h) for h=" + str(h));
  for (Elem g = 0; g < ng; ++g)
    for (Elem h = 0; h < nh; ++h)
      if (max_abs(alpha[g] * u[h] - u[C.c(g, h)]) > tol)
        fail(ErrorCode::NotStrictAction, "alpha_g(u_h) != u_{c_g(h)} for g=" + str(g) + ", h=" + str(h));
  return StrictAction{A, C, std::move(alpha), std::move(u), name.empty() ? A.name() + " by " + describe(C) : std::move(name)};
}

StrictAction trivial_strict_action(const StarAlgebra& A, const CrossedModule& C) {
  return make_strict_action(A, C, std::vector<Mat>(C.G.order(), Mat::Identity(A.dim(), A.dim())),
                            std::vector<Vec>(C.H.order(), A.unit()));
}

std::vector<Mat> regular_representation(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<Mat> v(n, Mat::Zero(n, n));
  for (Elem g = 0; g < n; ++g)
    for (Elem x = 0; x < n; ++x) v[g](G.mul(g, x), x) = 1.0;
  return v;
}

StrictAction inner_strict_action(const CrossedModule& C, const std::vector<Mat>& V, const std::vector<cplx>& chi) {
  if (static_cast<int>(V.size()) != C.G.order() || static_cast<int>(chi.size()) != C.H.order())
    fail(ErrorCode::BadShape, "need one matrix per g and one scalar per h");
  const int n = static_cast<int>(V[0].rows());
  const StarAlgebra A = matrix_algebra(n);
  auto vec = [n](const Mat& x) {
    Vec v(n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) v(a * n + b) = x(a, b);
    return v;
  };
  std::vector<Mat> alpha(C.G.order(), Mat(n * n, n * n));
  for (Elem g = 0; g < C.G.order(); ++g) {
    if (V[g].rows() != n || V[g].cols() != n) fail(ErrorCode::BadShape, "representation matrices differ in size");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) alpha[g].col(a * n + b) = vec(V[g].col(a) * V[g].col(b).adjoint());
  }
  std::vector<Vec> u(C.H.order());
  for (Elem h = 0; h < C.H.order(); ++h) u[h] = chi[h] * vec(V[C.d(h)]);
  return make_strict_action(A, C, std::move(alpha), std::move(u));
}

StrictAction translation_action(const CrossedModule& C, const GroupHom& q) {
  if (!(q.src() == C.G)) fail(ErrorCode::Mismatch, "translation map must start at G");
  const FiniteGroup& L = q.dst();
  const int n = L.order();
  const StarAlgebra A = functions_on(n);
  std::vector<Mat> alpha(C.G.order(), Mat::Zero(n, n));
  for (Elem g = 0; g < C.G.order(); ++g)
    for (Elem y = 0; y < n; ++y) alpha[g](L.mul(q(g), y), y) = 1.0;
  return make_strict_action(A, C, std::move(alpha), std::vector<Vec>(C.H.order(), A.unit()));
}

StrictAction tensor_action(const StrictAction& a, const StrictAction& b) {
  if (!same_cm(a.C, b.C)) fail(ErrorCode::Mismatch, "tensor of actions of different crossed modules");
  std::vector<Mat> alpha(a.alpha.size());
  for (std::size_t g = 0; g < alpha.size(); ++g) alpha[g] = kron(a.alpha[g], b.alpha[g]);
  std::vector<Vec> u(a.u.size());
  for (std::size_t h = 0; h < u.size(); ++h) u[h] = kron(a.u[h], b.u[h]);
  return make_strict_action(tensor(a.A, b.A), a.C, std::move(alpha), std::move(u), a.name + " (x) " + b.name);
}

StrictAction pullback_action(const StrictAction& act, const CrossedModuleHom& f) {
  if (!same_cm(f.dst, act.C)) fail(ErrorCode::Mismatch, "hom does not land in the acting crossed module");
  std::vector<Mat> alpha(f.src.G.order());
  for (Elem g = 0; g < f.src.G.order(); ++g) alpha[g] = act.alpha[f.phi(g)];
  std::vector<Vec> u(f.src.H.order());
  for (Elem h = 0; h < f.src.H.order(); ++h) u[h] = act.u[f.psi(h)];
  return make_strict_action(act.A, f.src, std::move(alpha), std::move(u), act.name + " restricted");
}

StrictAction finite_torus_action(int n) {
  if (n < 1) fail(ErrorCode::BadShape, "torus size must be positive");
  const FiniteGroup z = cyclic_group(n);
  const CrossedModule C = make_crossed_module(z, z, identity_hom(z), trivial_action(z, z), "torus(" + str(n) + ")");
  Mat shift = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x) shift((x + 1) % n, x) = 1.0;
  std::vector<Mat> V(n);
  Mat p = Mat::Identity(n, n);
  const Mat back = shift.adjoint();
  for (int k = 0; k < n; ++k) {
    V[k] = p;
    p = p * back;
  }
  StrictAction act = inner_strict_action(C, V, std::vector<cplx>(n, 1.0));
  act.name = "finite-torus-" + str(n);
  return act;
}

StarAlgebra classical_crossed_product(const StarAlgebra& A, const FiniteGroup& G, const std::vector<Mat>& alpha) {
  return semidirect_fell_bundle(A, G, alpha, A.name() + " x| " + G.name()).total;
}

FellBundleCM semidirect_bundle(const StrictAction& act) {
  FellBundle b = semidirect_fell_bundle(act.A, act.C.G, act.alpha, act.A.name() + " x| " + act.C.G.name());
  std::vector<Vec> u(act.C.H.order());
  for (Elem h = 0; h < act.C.H.order(); ++h) u[h] = b.embed(act.C.d(h), act.A.star(act.u[h]));
  return make_cm_bundle(act.C, b, std::move(u));
}

CrossSectional cross_sectional(const FellBundle& bundle) {
  CrossSectional cs{bundle.total, {}};
  for (Elem g = 0; g < bundle.G.order(); ++g) cs.embeddings.push_back(bundle.embedding(g));
  return cs;
}

CrossedProduct crossed_product(const FellBundleCM& cmb) {
  const StarAlgebra& A = cmb.bundle.total;
  std::vector<Vec> gens;
  for (Elem h = 1; h < cmb.C.H.order(); ++h) gens.push_back(cmb.u[h] - A.unit());
  const Mat ideal = ideal_generated(A, gens);
  QuotientAlgebra q = quotient_algebra(A, ideal);
  CrossedProduct cp;
  cp.algebra = q.algebra.with_name(A.name() + " / I_u");
  cp.projection = StarHom{A, cp.algebra, q.projection.matrix};
  cp.ideal = q.ideal;
  cp.lift = q.complement;
  cp.sections = A;
  cp.degenerate = q.degenerate;
  return cp;
}

Representation make_representation(const FellBundleCM& cmb, const StarAlgebra& target, Mat map) {
  const StarAlgebra& A = cmb.bundle.total;
  if (map.rows() != target.dim() || map.cols() != A.dim()) fail(ErrorCode::BadShape, "representation matrix has wrong shape");
  const double tol = check_tolerance(std::max(1.0, max_abs(map)) * std::max(1.0, max_abs(map)));
  if (max_abs(map * A.unit() - target.unit()) > tol)
    fail(ErrorCode::NotRepresentation, "nondegenerate: unit fiber is not mapped unitally");
  const Mat sdiff = map * A.star_matrix() - target.star_matrix() * map.conjugate();
  if (max_abs(sdiff) > tol) {
    Eigen::Index r, c;
    sdiff.cwiseAbs().maxCoeff(&r, &c);
    fail(ErrorCode::NotRepresentation, "star: fails at basis element " + str(static_cast<long>(c)));
  }
  for (int i = 0; i < A.dim(); ++i) {
    const Mat diff = map * A.left_basis(i) - target.left_mult(map.col(i)) * map;
    if (max_abs(diff) > tol) {
      Eigen::Index r, c;
      diff.cwiseAbs().maxCoeff(&r, &c);
      fail(ErrorCode::NotRepresentation, "multiplicative: fails at pair (" + str(i) + "," + str(static_cast<long>(c)) + ")");
    }
  }
  for (Elem h = 0; h < cmb.C.H.order(); ++h)
    if (max_abs(map * cmb.u[h] - target.unit()) > tol)
      fail(ErrorCode::NotRepresentation, "u_h -> 1: fails at h=" + str(h));
  return Representation{cmb, target, std::move(map)};
}

Representation canonical_representation(const FellBundleCM& cmb) {
  const CrossedProduct cp = crossed_product(cmb);
  return make_representation(cmb, cp.algebra, cp.projection.matrix);
}

Factorization universal_factorization(const FellBundleCM& cmb, const Representation& rep) {
  const CrossedProduct cp = crossed_product(cmb);
  const Mat& p = cp.projection.matrix;
  Factorization f;
  // Unknown f with f p = rep, i.e. p^H f^H = rep^H.
  f.kernel_dim = cp.algebra.dim() - rank_of(p);
  if (f.kernel_dim > 0) fail(ErrorCode::NotUnique, "constraint kernel has dimension " + str(f.kernel_dim));
  Mat fm(rep.target.dim(), cp.algebra.dim());
  if (cp.algebra.dim() > 0) {
    const Mat pa = p.adjoint();
    fm = Eigen::CompleteOrthogonalDecomposition<Mat>(pa).solve(rep.map.adjoint()).adjoint();
  }
  f.residual = max_abs(fm * p - rep.map);
  if (f.residual > check_tolerance(max_abs(rep.map)))
    fail(ErrorCode::NoFactorization, "representation does not vanish on I_u (residual " + std::to_string(f.residual) + ")");
  try {
    f.hom = make_star_hom(cp.algebra, rep.target, fm);
  } catch (const Error& e) {
    fail(ErrorCode::NoFactorization, e.what());
  }
  return f;
}

DescendedBundle descend_bundle(const FellBundleCM& cmb, const QuotientEquivalence& q,
                               std::optional<std::vector<Elem>> transversal) {
  const CrossedModule& C = cmb.C;
  const FellBundle& b = cmb.bundle;
  const StarAlgebra& A = b.total;
  const FiniteGroup& G = C.G;
  const FiniteGroup& G2 = q.target.G;
  const int n2 = G2.order();
  const GroupHom& pg = q.qG.projection;
  std::vector<Elem> t = transversal ? *transversal : q.qG.transversal;
  if (static_cast<int>(t.size()) != n2) fail(ErrorCode::BadShape, "transversal needs one element per coset");
  for (Elem c = 0; c < n2; ++c)
    if (t[c] < 0 || t[c] >= G.order() || pg(t[c]) != c) fail(ErrorCode::BadShape, "transversal element not in its coset");

  std::vector<Elem> lift(G.order(), -1);
  for (Elem x : q.N.elements) lift[C.d(x)] = x;
  // Right multiplication by u_n* moves fiber t ∂(n) to fiber t.
  std::vector<Mat> fix(C.H.order());
  for (Elem x : q.N.elements) fix[x] = A.right_mult(A.star(cmb.u[x]));
  auto correction = [&](Elem g) {
    const Elem n = lift[G.mul(G.inv(t[pg(g)]), g)];
    if (n < 0) fail(ErrorCode::Mismatch, "coset representative not reached by the boundary of N");
    return n;
  };
  auto transport = [&](Elem g, const Vec& x) -> Vec {
    const Vec y = fix[correction(g)] * x;
    const Elem tg = t[pg(g)];
    return y.segment(b.offset[tg], b.fiber_dim(tg));
  };

  std::vector<int> dims(n2), off(n2 + 1, 0);
  for (Elem c = 0; c < n2; ++c) {
    dims[c] = b.fiber_dim(t[c]);
    off[c + 1] = off[c] + dims[c];
  }
  const int D2 = off[n2];
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(D2) * D2);
  for (Elem c1 = 0; c1 < n2; ++c1)
    for (int i = 0; i < dims[c1]; ++i) {
      const Mat left = A.left_basis(b.offset[t[c1]] + i);
      for (Elem c2 = 0; c2 < n2; ++c2) {
        const Elem c12 = G2.mul(c1, c2);
        const Elem g12 = G.mul(t[c1], t[c2]);
        for (int j = 0; j < dims[c2]; ++j) {
          const Vec y = transport(g12, left.col(b.offset[t[c2]] + j));
          auto& dst = p[static_cast<std::size_t>(off[c1] + i) * D2 + off[c2] + j];
          for (int k = 0; k < y.size(); ++k)
            if (std::abs(y(k)) > 1e-14) dst.push_back({off[c12] + k, y(k)});
        }
      }
    }
  Mat s = Mat::Zero(D2, D2);
  for (Elem c = 0; c < n2; ++c)
    for (int i = 0; i < dims[c]; ++i) {
      const Vec y = transport(G.inv(t[c]), A.star_matrix().col(b.offset[t[c]] + i));
      s.block(off[G2.inv(c)], off[c] + i, y.size(), 1) = y;
    }
  const FellBundle b2 = make_fell_bundle(G2, dims, std::move(p), s, A.name() + " descended");

  auto to_total2 = [&](Elem g, const Vec& x) { return b2.embed(pg(g), transport(g, x)); };
  std::vector<Vec> u2(q.target.H.order());
  for (Elem hb = 0; hb < q.target.H.order(); ++hb) {
    const Elem h = q.qH.transversal[hb];
    u2[hb] = to_total2(C.d(h), cmb.u[h]);
  }
  DescendedBundle out{make_cm_bundle(q.target, b2, std::move(u2)), t, 0.0};

  // The pull-back of the new bundle along the projection is the old one.
  const StarAlgebra& A2 = out.bundle.bundle.total;
  Mat phi = Mat::Zero(D2, A.dim());
  for (int i = 0; i < A.dim(); ++i) phi.col(i) = to_total2(b.degree(i), unit_vector(A.dim(), i));
  double res = max_abs(phi * A.star_matrix() - A2.star_matrix() * phi.conjugate());
  for (int i = 0; i < A.dim(); ++i)
    res = std::max(res, max_abs(phi * A.left_basis(i) - A2.left_mult(phi.col(i)) * phi));
  for (Elem h = 0; h < C.H.order(); ++h)
    res = std::max(res, max_abs(phi * cmb.u[h] - out.bundle.u[q.hom.psi(h)]));
  out.pullback_residual = res;
  return out;
}

FellBundleCM restrict_bundle(const FellBundleCM& cmb, const Enlargement& e) {
  const FellBundle& b = cmb.bundle;
  const StarAlgebra& A = b.total;
  const FiniteGroup& G1 = e.small.G;
  const GroupHom& phi = e.hom.phi;
  std::vector<int> dims(G1.order()), old;
  std::vector<int> pos(A.dim(), -1);
  for (Elem g = 0; g < G1.order(); ++g) {
    const Elem x = phi(g);
    dims[g] = b.fiber_dim(x);
    for (int i = 0; i < dims[g]; ++i) {
      pos[b.offset[x] + i] = static_cast<int>(old.size());
      old.push_back(b.offset[x] + i);
    }
  }
  const int D1 = static_cast<int>(old.size());
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(D1) * D1);
  Mat s(D1, D1);
  for (int i = 0; i < D1; ++i)
    for (int j = 0; j < D1; ++j) {
      auto& dst = p[static_cast<std::size_t>(i) * D1 + j];
      for (const auto& t : A.product(old[i], old[j])) dst.push_back({pos[t.k], t.c});
      s(i, j) = A.star_matrix()(old[i], old[j]);
    }
  const FellBundle b1 = make_fell_bundle(G1, dims, std::move(p), s, A.name() + " restricted");
  std::vector<Vec> u(e.small.H.order());
  for (Elem h = 0; h < e.small.H.order(); ++h) {
    u[h] = Vec(D1);
    const Vec& big = cmb.u[e.hom.psi(h)];
    for (int i = 0; i < D1; ++i) u[h](i) = big(old[i]);
  }
  return make_cm_bundle(e.small, b1, std::move(u));
}

}  // namespace xmod
