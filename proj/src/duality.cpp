#include "xmod/duality.hpp"

#include "xmod/error.hpp"

#include <string>

namespace xmod {

namespace {

std::string str(long v) { return std::to_string(v); }

/// Commutator residual of x with every basis element.
double commutator_residual(const StarAlgebra& a, const Vec& x) { return max_abs(a.left_mult(x) - a.right_mult(x)); }

/// Matrix of E_{x,y} ↦ E_{gx,gy} on M_n (basis x*n + y).
Mat conjugation_by_translation(const FiniteGroup& K, Elem g) {
  const int n = K.order();
  Mat p = Mat::Zero(n * n, n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) p(K.mul(g, x) * n + K.mul(g, y), x * n + y) = 1.0;
  return p;
}

/// a ⊗ b as a matrix on the tensor basis i*db + j.
Mat kron(const Mat& a, const Mat& b) {
  Mat k = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != cplx(0.0)) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

/// Diagonal action on a crossed product basis: block k scaled by weight(k).
template <class F>
Mat block_diagonal(int blocks, int block_dim, F weight) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(blocks) * block_dim, static_cast<Eigen::Index>(blocks) * block_dim);
  for (int k = 0; k < blocks; ++k) {
    const cplx w = weight(k);
    for (int i = 0; i < block_dim; ++i) m(static_cast<Eigen::Index>(k) * block_dim + i, static_cast<Eigen::Index>(k) * block_dim + i) = w;
  }
  return m;
}

/// max_k |T m_k - (alpha_k ⊗ Ad λ_k) T|.
double covariance(const Mat& t, const std::vector<Mat>& acting, const std::vector<Mat>& alpha, const FiniteGroup& K) {
  double worst = 0.0;
  for (Elem k = 0; k < K.order(); ++k)
    worst = std::max(worst, max_abs(t * acting[k] - kron(alpha[k], conjugation_by_translation(K, k)) * t));
  return worst;
}

void require_abelian(const CrossedModule& C) {
  if (!C.is_abelian()) fail(ErrorCode::NotAbelianCM, "crossed module " + C.name + " is not Abelian");
}

}  // namespace

CentralStructure central_structure(const FellBundleCM& cmb) {
  if (!cmb.C.is_two_abelian()) fail(ErrorCode::NotTwoAbelian, "the G-action on H is not trivial");
  const StarAlgebra& a = cmb.bundle.total;
  const FiniteGroup& H = cmb.C.H;
  Mat m(a.dim(), H.order());
  for (Elem h = 0; h < H.order(); ++h) {
    m.col(h) = cmb.u[h];
    const double r = commutator_residual(a, cmb.u[h]);
    if (r > check_tolerance()) fail(ErrorCode::NotCentral, "u_" + str(h) + " has commutator residual " + std::to_string(r));
  }
  return CentralStructure{a, H, character_group(H), make_star_hom(group_algebra(H), a, std::move(m))};
}

Vec central_idempotent(const CentralStructure& cs, Elem chi) {
  const int n = cs.H.order();
  Vec f(n);
  for (Elem h = 0; h < n; ++h) f(h) = std::conj(cs.chars.value(chi, h)) / static_cast<double>(n);
  return cs.hom(f);
}

QuotientAlgebra fiber_at(const CentralStructure& cs, Elem chi) {
  if (chi < 0 || chi >= cs.chars.dual.order()) fail(ErrorCode::BadShape, "character index out of range");
  std::vector<Vec> gens;
  for (Elem h = 1; h < cs.H.order(); ++h)
    gens.push_back(cs.hom.matrix.col(h) - cs.chars.value(chi, h) * cs.algebra.unit());
  return quotient_algebra(cs.algebra, ideal_generated(cs.algebra, gens));
}

FiberCheck crossed_product_via_fiber_check(const FellBundleCM& cmb, double tol) {
  FiberCheck r;
  const CrossedProduct cp = crossed_product(cmb);
  const CentralStructure cs = central_structure(cmb);
  const int d = cs.algebra.dim();
  const int m = cs.chars.dual.order();
  Mat span(d, static_cast<Eigen::Index>(d) * std::max(0, m - 1));
  for (Elem chi = 1; chi < m; ++chi)
    span.middleCols(static_cast<Eigen::Index>(chi - 1) * d, d) = cs.algebra.left_mult(central_idempotent(cs, chi));
  const Mat fiber_ideal = orthonormal_span(span);
  r.ideal_dim = static_cast<int>(cp.ideal.cols());
  r.fiber_ideal_dim = static_cast<int>(fiber_ideal.cols());
  const bool same = same_subspace(cp.ideal, fiber_ideal, tol, &r.residual);
  r.ok = same && r.ideal_dim == r.fiber_ideal_dim && r.residual < tol;
  return r;
}

GroupoidAction make_groupoid_action(const StarAlgebra& B, const CrossedModule& C, std::vector<Mat> beta,
                                    const Mat& struct_map) {
  require_abelian(C);
  GroupoidAction ga;
  ga.B = B;
  ga.C = C;
  ga.dual = dual_crossed_module(C);
  const FiniteGroup& Ghat = ga.dual.dual.H;
  const FiniteGroup& Hhat = ga.dual.dual.G;
  const int d = B.dim();
  if (static_cast<int>(beta.size()) != Ghat.order()) fail(ErrorCode::BadShape, "need one automorphism per character of G");
  for (const auto& b : beta)
    if (b.rows() != d || b.cols() != d) fail(ErrorCode::BadShape, "automorphism matrix has wrong shape");
  const double tol = check_tolerance(static_cast<double>(d));
  if (max_abs(beta[0] - Mat::Identity(d, d)) > tol) fail(ErrorCode::NotStrictAction, "trivial character does not act trivially");
  for (Elem x = 0; x < Ghat.order(); ++x) {
    try {
      make_star_hom(B, B, beta[x]);
    } catch (const Error& e) {
      fail(ErrorCode::NotStrictAction, "character " + str(x) + " does not act by a *-automorphism: " + e.what());
    }
    for (Elem y = 0; y < Ghat.order(); ++y)
      if (max_abs(beta[Ghat.mul(x, y)] - beta[x] * beta[y]) > tol)
        fail(ErrorCode::NotStrictAction, "action law fails at (" + str(x) + "," + str(y) + ")");
  }
  ga.struct_map = make_star_hom(functions_on(Hhat.order()), B, struct_map);
  for (Elem hh = 0; hh < Hhat.order(); ++hh) {
    const double r = commutator_residual(B, struct_map.col(hh));
    if (r > tol) fail(ErrorCode::NotCentral, "struct map at character " + str(hh) + " is not central");
  }
  // β_ĝ(1_ĥ) = 1_{ĥ ∂̂(ĝ)^-1}
  for (Elem x = 0; x < Ghat.order(); ++x) {
    const Elem shift = Hhat.inv(ga.dual.dual.d(x));
    for (Elem hh = 0; hh < Hhat.order(); ++hh)
      if (max_abs(beta[x] * struct_map.col(hh) - struct_map.col(Hhat.mul(hh, shift))) > tol)
        fail(ErrorCode::EquivarianceViolation,
             "character " + str(x) + " does not translate the structure map at " + str(hh));
  }
  ga.beta = std::move(beta);
  return ga;
}

GroupoidAction forward_functor(const StrictAction& act) {
  require_abelian(act.C);
  const DualCrossedModule dual = dual_crossed_module(act.C);
  const FiniteGroup& G = act.C.G;
  const FiniteGroup& H = act.C.H;
  const int d = act.A.dim();
  const StarAlgebra B = classical_crossed_product(act.A, G, act.alpha);
  std::vector<Mat> beta;
  for (Elem x = 0; x < dual.chars_G.dual.order(); ++x)
    beta.push_back(block_diagonal(G.order(), d, [&](int g) { return dual.chars_G.value(x, g); }));
  // struct_map(1_ĥ) = |H|^-1 Σ_h conj ĥ(h) u_h* δ_{∂h}
  const int m = dual.chars_H.dual.order();
  Mat s = Mat::Zero(B.dim(), m);
  for (Elem h = 0; h < H.order(); ++h) {
    Vec w = Vec::Zero(B.dim());
    w.segment(static_cast<Eigen::Index>(act.C.d(h)) * d, d) = act.A.star(act.u[h]);
    for (Elem hh = 0; hh < m; ++hh) s.col(hh) += std::conj(dual.chars_H.value(hh, h)) / static_cast<double>(H.order()) * w;
  }
  return make_groupoid_action(B, act.C, std::move(beta), s);
}

StrictAction backward_functor(const GroupoidAction& ga) {
  const FiniteGroup& G = ga.C.G;
  const FiniteGroup& H = ga.C.H;
  const CharacterGroup& cg = ga.dual.chars_G;
  const CharacterGroup& ch = ga.dual.chars_H;
  const int d = ga.B.dim();
  const StarAlgebra D = classical_crossed_product(ga.B, cg.dual, ga.beta);
  std::vector<Mat> alpha;
  for (Elem g = 0; g < G.order(); ++g)
    alpha.push_back(block_diagonal(cg.dual.order(), d, [&](int x) { return cg.value(x, g); }));
  std::vector<Vec> u;
  for (Elem h = 0; h < H.order(); ++h) {
    Vec v(ch.dual.order());
    for (Elem hh = 0; hh < ch.dual.order(); ++hh) v(hh) = std::conj(ch.value(hh, h));
    Vec U = Vec::Zero(D.dim());
    U.head(d) = ga.struct_map(v);
    u.push_back(std::move(U));
  }
  return make_strict_action(D, ga.C, std::move(alpha), std::move(u), "dual(" + ga.B.name() + ")");
}

TakesakiTakai takesaki_takai(const StarAlgebra& A, const FiniteGroup& K, const std::vector<Mat>& alpha,
                             const FiniteGroup& Khat, const Mat& pairing) {
  const int d = A.dim(), n = K.order();
  if (pairing.rows() != Khat.order() || pairing.cols() != n) fail(ErrorCode::BadShape, "pairing has wrong shape");
  TakesakiTakai tt;
  const StarAlgebra B = classical_crossed_product(A, K, alpha);
  std::vector<Mat> beta;
  for (Elem x = 0; x < Khat.order(); ++x) beta.push_back(block_diagonal(n, d, [&](int k) { return pairing(x, k); }));
  tt.iterated = classical_crossed_product(B, Khat, beta);
  tt.tensor = tensor(A, matrix_algebra(n));
  // e_i δ_k δ_χ ↦ Σ_y conj<χ, yk> α_y(e_i) ⊗ E_{y, yk}
  const int n2 = n * n;
  Mat t = Mat::Zero(tt.tensor.dim(), tt.iterated.dim());
  for (Elem x = 0; x < Khat.order(); ++x)
    for (Elem k = 0; k < n; ++k)
      for (int i = 0; i < d; ++i) {
        const Eigen::Index col = (static_cast<Eigen::Index>(x) * n + k) * d + i;
        for (Elem y = 0; y < n; ++y) {
          const Elem yk = K.mul(y, k);
          const cplx w = std::conj(pairing(x, yk));
          for (int j = 0; j < d; ++j)
            if (alpha[y](j, i) != cplx(0.0)) t(static_cast<Eigen::Index>(j) * n2 + y * n + yk, col) += w * alpha[y](j, i);
        }
      }
  tt.map = make_star_hom(tt.iterated, tt.tensor, std::move(t));
  std::vector<Mat> acting;
  for (Elem k = 0; k < n; ++k)
    acting.push_back(block_diagonal(Khat.order() * n, d, [&](int block) { return pairing(block / n, k); }));
  tt.covariance_residual = covariance(tt.map.matrix, acting, alpha, K);
  tt.iterated_dims = wedderburn(tt.iterated).dims;
  tt.tensor_dims = wedderburn(tt.tensor).dims;
  return tt;
}

bool takesaki_takai_check(const StrictAction& act) {
  const CharacterGroup cg = character_group(act.C.G);
  const TakesakiTakai tt = takesaki_takai(act.A, act.C.G, act.alpha, cg.dual, cg.pairing);
  return tt.iterated_dims == tt.tensor_dims && rank_of(tt.map.matrix) == tt.tensor.dim() &&
         tt.covariance_residual < 1e-8;
}

RoundTrip duality_roundtrip(const StrictAction& act, double tol) {
  RoundTrip r;
  const GroupoidAction ga = forward_functor(act);
  const StrictAction back = backward_functor(ga);
  const FiniteGroup& G = act.C.G;
  const int n = G.order(), d = act.A.dim();
  const TakesakiTakai tt = takesaki_takai(act.A, G, act.alpha, ga.dual.chars_G.dual, ga.dual.chars_G.pairing);
  // T must be a *-isomorphism out of the algebra the functors produced.
  const Mat& t = tt.map.matrix;
  if (back.A.dim() != tt.iterated.dim() || star_hom_residual(back.A, tt.tensor, t) > check_tolerance(1.0)) {
    r.detail = "identification map is not a *-homomorphism on the round-trip algebra";
    return r;
  }
  r.algebra_dims = wedderburn(back.A).dims;
  r.expected_dims = tt.tensor_dims;
  // u_h ⊗ λ_{∂h}, λ_g e_x = e_{gx}
  for (Elem h = 0; h < act.C.H.order(); ++h) {
    Mat lambda = Mat::Zero(n, n);
    for (Elem x = 0; x < n; ++x) lambda(G.mul(act.C.d(h), x), x) = 1.0;
    Vec lam = Eigen::Map<const Vec>(Mat(lambda.transpose()).data(), n * n);  // row-major E_{x,y} at x*n + y
    Vec expected(d * n * n);
    for (int i = 0; i < d; ++i) expected.segment(static_cast<Eigen::Index>(i) * n * n, n * n) = act.u[h](i) * lam;
    r.unitary_residual = std::max(r.unitary_residual, max_abs(t * back.u[h] - expected));
  }
  r.action_residual = covariance(t, back.alpha, act.alpha, G);
  const bool bijective = rank_of(t) == tt.tensor.dim();
  r.ok = bijective && r.algebra_dims == r.expected_dims && r.unitary_residual < tol && r.action_residual < tol;
  if (!r.ok)
    r.detail = "dims " + to_string(r.algebra_dims) + " vs " + to_string(r.expected_dims) + ", unitary residual " +
               std::to_string(r.unitary_residual) + ", action residual " + std::to_string(r.action_residual);
  return r;
}

DualOfDual dual_of_dual(const GroupoidAction& ga, double tol) {
  DualOfDual r;
  const StrictAction back = backward_functor(ga);
  const GroupoidAction again = forward_functor(back);
  const CharacterGroup& cg = ga.dual.chars_G;
  const FiniteGroup& Ghat = cg.dual;
  const int m = Ghat.order();
  const TakesakiTakai tt = takesaki_takai(ga.B, Ghat, ga.beta, ga.C.G, cg.pairing.transpose());
  const Mat& t = tt.map.matrix;
  if (again.B.dim() != tt.iterated.dim() || star_hom_residual(again.B, tt.tensor, t) > check_tolerance(1.0)) {
    r.detail = "identification map is not a *-homomorphism on the doubled algebra";
    return r;
  }
  r.algebra_dims = wedderburn(again.B).dims;
  r.expected_dims = tt.tensor_dims;
  // struct_map'(f) = struct_map(f) ⊗ 1
  Vec one = Vec::Zero(m * m);
  for (Elem x = 0; x < m; ++x) one(x * m + x) = 1.0;
  const Mat expected = kron(ga.struct_map.matrix, one);
  r.struct_residual = max_abs(t * again.struct_map.matrix - expected);
  r.action_residual = covariance(t, again.beta, ga.beta, Ghat);
  const bool bijective = rank_of(t) == tt.tensor.dim();
  r.ok = bijective && r.algebra_dims == r.expected_dims && r.struct_residual < tol && r.action_residual < tol;
  if (!r.ok)
    r.detail = "dims " + to_string(r.algebra_dims) + " vs " + to_string(r.expected_dims) + ", struct residual " +
               std::to_string(r.struct_residual) + ", action residual " + std::to_string(r.action_residual);
  return r;
}

}  // namespace xmod
