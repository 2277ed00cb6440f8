#include "oracles.hpp"

#include "xmod/error.hpp"
#include "xmod/fell_bundle.hpp"

#include <gtest/gtest.h>

using namespace xmod;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::Mismatch;
}

DimensionVector dims(const StarAlgebra& a) { return wedderburn(a).dims; }

/// Z/2-graded bundle with even fiber C^2 = span(p1, p2) and odd fiber spanned by a,
/// a* = a, a a = p1, p2 a = 0. Not saturated: a a* never reaches p2.
FellBundle odd_line_bundle() {
  std::vector<std::vector<Term>> p(9);
  auto at = [&](int i, int j) -> std::vector<Term>& { return p[static_cast<std::size_t>(i) * 3 + j]; };
  at(0, 0) = {{0, 1.0}};
  at(1, 1) = {{1, 1.0}};
  at(0, 2) = {{2, 1.0}};
  at(2, 0) = {{2, 1.0}};
  at(2, 2) = {{0, 1.0}};
  return make_fell_bundle(cyclic_group(2), {2, 1}, p, Mat::Identity(3, 3));
}

CrossedModule cm(const FiniteGroup& G, const FiniteGroup& H, std::vector<Elem> bd) {
  return make_crossed_module(G, H, make_hom(H, G, std::move(bd)), trivial_action(G, H));
}

/// Translation action of Z/n on functions on Z/n, H trivial.
StrictAction translation(int n) {
  const auto z = cyclic_group(n);
  return translation_action(group_crossed_module(z), identity_hom(z));
}

/// (G, G, id, conjugation) acting on M_|G| by the regular representation.
StrictAction group_like(const FiniteGroup& G) {
  const auto C = identity_crossed_module(G);
  return inner_strict_action(C, regular_representation(G), std::vector<cplx>(G.order(), 1.0));
}

}  // namespace

TEST(FellBundle, ConstantBundleIsGroupAlgebra) {
  const auto G = cyclic_group(2);
  const auto b = constant_bundle(G, complex_numbers());
  EXPECT_TRUE(b.saturated);
  EXPECT_EQ(b.total.dim(), 2);
  const auto g = group_algebra(G);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      ASSERT_EQ(b.total.product(i, j).size(), 1u);
      EXPECT_EQ(b.total.product(i, j)[0].k, g.product(i, j)[0].k);
    }
  const auto s3 = symmetric_group(3);
  EXPECT_EQ(dims(cross_sectional(constant_bundle(s3, complex_numbers())).algebra), (DimensionVector{1, 1, 2}));
  EXPECT_EQ(dims(constant_bundle(s3, matrix_algebra(2)).total), (DimensionVector{2, 2, 4}));
}

TEST(FellBundle, LineBundlesAndSaturation) {
  const auto b = odd_line_bundle();
  EXPECT_FALSE(b.saturated);
  EXPECT_EQ(b.fiber_dim(0), 2);
  EXPECT_EQ(b.fiber_dim(1), 1);
  EXPECT_EQ(dims(b.total), (DimensionVector{1, 1, 1}));
  // Zero off-unit fiber: the cross-sectional algebra is the unit fiber.
  std::vector<std::vector<Term>> p(4);
  p[0] = {{0, 1.0}};
  p[3] = {{1, 1.0}};
  const auto z = make_fell_bundle(cyclic_group(2), {2, 0}, p, Mat::Identity(2, 2));
  EXPECT_FALSE(z.saturated);
  EXPECT_EQ(dims(cross_sectional(z).algebra), (DimensionVector{1, 1}));
  EXPECT_EQ(cross_sectional(z).algebra.dim(), z.unit_fiber.dim());
}

TEST(FellBundle, DimensionIsSumOfFibers) {
  for (const auto& b : {constant_bundle(cyclic_group(3), matrix_algebra(2)), odd_line_bundle(),
                        semidirect_bundle(finite_torus_action(3)).bundle}) {
    int sum = 0;
    for (Elem g = 0; g < b.G.order(); ++g) sum += b.fiber_dim(g);
    EXPECT_EQ(cross_sectional(b).algebra.dim(), sum);
    EXPECT_EQ(cross_sectional(b).embeddings.size(), static_cast<std::size_t>(b.G.order()));
  }
}

TEST(FellBundle, ValidationErrors) {
  const auto z2 = cyclic_group(2);
  {
    // e_odd e_odd lands in the odd fiber.
    std::vector<std::vector<Term>> p(4);
    p[0] = {{0, 1.0}};
    p[1] = {{1, 1.0}};
    p[2] = {{1, 1.0}};
    p[3] = {{1, 1.0}};
    EXPECT_EQ(code_of([&] { make_fell_bundle(z2, {1, 1}, p, Mat::Identity(2, 2)); }), ErrorCode::GradingViolation);
  }
  {
    // a* = a with a a = -1: the odd fiber has negative square.
    std::vector<std::vector<Term>> p(4);
    p[0] = {{0, 1.0}};
    p[1] = {{1, 1.0}};
    p[2] = {{1, 1.0}};
    p[3] = {{0, -1.0}};
    EXPECT_EQ(code_of([&] { make_fell_bundle(z2, {1, 1}, p, Mat::Identity(2, 2)); }), ErrorCode::NotPositive);
  }
  {
    // Unit fiber C[x]/x^2.
    std::vector<std::vector<Term>> p(4);
    p[0] = {{0, 1.0}};
    p[1] = {{1, 1.0}};
    p[2] = {{1, 1.0}};
    EXPECT_EQ(code_of([&] { make_fell_bundle(cyclic_group(1), {2}, p, Mat::Identity(2, 2)); }),
              ErrorCode::UnitFiberInvalid);
  }
  EXPECT_EQ(code_of([&] { make_fell_bundle(z2, {1}, {}, Mat(1, 1)); }), ErrorCode::BadShape);
}

TEST(FellBundleCM, TrivialAndConstant) {
  const auto G = symmetric_group(3);
  // Trivial H: any bundle with empty u.
  const auto cmb = make_cm_bundle(group_crossed_module(G), constant_bundle(G, complex_numbers()),
                                  {constant_bundle(G, complex_numbers()).total.unit()});
  EXPECT_EQ(cmb.u.size(), 1u);
  // u_h = 1 in fiber ∂(h) on the constant bundle of a crossed module.
  const auto z4 = cyclic_group(4);
  const auto c = cm(z4, cyclic_group(2), {0, 2});
  const auto t = trivial_cm_bundle(c, matrix_algebra(2));
  EXPECT_EQ(t.bundle.total.dim(), 16);
  const auto id = trivial_cm_bundle(identity_crossed_module(G), complex_numbers());
  EXPECT_EQ(dims(crossed_product(id).algebra), (DimensionVector{1}));
}

TEST(FellBundleCM, ValidationErrors) {
  const auto z2 = cyclic_group(2);
  const auto c = cm(z2, z2, {0, 0});
  const auto b = constant_bundle(z2, matrix_algebra(2));
  // Fiber 0 holds M2 ⊗ δ_0 as the first four basis vectors.
  auto in0 = [&](const Mat& m) {
    Vec v = Vec::Zero(8);
    for (int a = 0; a < 2; ++a)
      for (int bb = 0; bb < 2; ++bb) v(a * 2 + bb) = m(a, bb);
    return v;
  };
  const Vec one = in0(Mat::Identity(2, 2));
  EXPECT_EQ(code_of([&] { make_cm_bundle(c, b, {one, 2.0 * one}); }), ErrorCode::NotUnitary);
  // i·1 is unitary but squares to -1.
  EXPECT_EQ(code_of([&] { make_cm_bundle(c, b, {one, cplx(0, 1) * one}); }), ErrorCode::NotHomomorphism);
  Mat dgl = Mat::Identity(2, 2);
  dgl(1, 1) = -1.0;
  EXPECT_EQ(code_of([&] { make_cm_bundle(c, b, {one, in0(dgl)}); }), ErrorCode::EquivarianceViolation);
  EXPECT_EQ(code_of([&] { make_cm_bundle(c, b, {one, b.embed(1, Vec::Ones(4))}); }), ErrorCode::GradingViolation);
  EXPECT_EQ(code_of([&] { make_cm_bundle(c, b, {one}); }), ErrorCode::BadShape);
}

TEST(StrictAction, Validation) {
  const auto z2 = cyclic_group(2);
  const auto c2 = functions_on(2);
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto C = group_crossed_module(z2);
  EXPECT_NO_THROW(make_strict_action(c2, C, {Mat::Identity(2, 2), swap}, {c2.unit()}));
  Mat scale = 2.0 * Mat::Identity(2, 2);
  EXPECT_EQ(code_of([&] { make_strict_action(c2, C, {Mat::Identity(2, 2), scale}, {c2.unit()}); }),
            ErrorCode::NotStrictAction);
  // α_{∂h} must equal Ad(u_h).
  const auto thin = cm(z2, z2, {0, 1});
  EXPECT_EQ(code_of([&] { make_strict_action(c2, thin, {Mat::Identity(2, 2), swap}, {c2.unit(), c2.unit()}); }),
            ErrorCode::NotStrictAction);
  Vec half = 0.5 * c2.unit();
  EXPECT_EQ(code_of([&] { make_strict_action(c2, cm(z2, z2, {0, 0}), {Mat::Identity(2, 2), swap}, {c2.unit(), half}); }),
            ErrorCode::NotUnitary);
  // Builders produce valid actions.
  EXPECT_NO_THROW(finite_torus_action(4));
  EXPECT_NO_THROW(group_like(symmetric_group(3)));
  EXPECT_NO_THROW(tensor_action(translation(2), trivial_strict_action(matrix_algebra(2), group_crossed_module(z2))));
}

TEST(SemidirectBundle, Examples) {
  const auto one = trivial_strict_action(complex_numbers(), group_crossed_module(trivial_group()));
  EXPECT_EQ(semidirect_bundle(one).bundle.total.dim(), 1);
  // Swap on C^2 gives M2.
  const auto sb = semidirect_bundle(translation(2));
  EXPECT_TRUE(sb.bundle.saturated);
  EXPECT_EQ(dims(cross_sectional(sb.bundle).algebra), (DimensionVector{2}));
  for (int n : {2, 3, 4}) {
    const auto t = semidirect_bundle(finite_torus_action(n));
    EXPECT_TRUE(t.bundle.saturated);
    EXPECT_EQ(t.bundle.total.dim(), n * n * n);
  }
}

TEST(SemidirectBundle, MatchesRegularCovariantRepresentation) {
  // Independent oracle: A ⋊ G as operators on A ⊗ ℓ²(G).
  std::vector<StrictAction> acts = {translation(2), translation(3), group_like(cyclic_group(2)), group_like(cyclic_group(3)),
                                    finite_torus_action(2), finite_torus_action(3)};
  acts.push_back(tensor_action(translation(2), trivial_strict_action(matrix_algebra(2), translation(2).C)));
  for (const auto& act : acts) {
    const auto classical = classical_crossed_product(act.A, act.C.G, act.alpha);
    const auto ref = oracle::regular_crossed_product(act.A, act.C.G, act.alpha);
    EXPECT_EQ(classical.dim(), ref.dim()) << act.name;
    EXPECT_EQ(dims(classical), oracle::dimension_vector(ref)) << act.name;
    EXPECT_EQ(dims(semidirect_bundle(act).bundle.total), dims(classical)) << act.name;
  }
}

TEST(CrossedProduct, TrivialHIsCrossSectional) {
  const auto sb = semidirect_bundle(translation(3));
  const auto cp = crossed_product(sb);
  EXPECT_EQ(cp.algebra.dim(), sb.bundle.total.dim());
  EXPECT_EQ(cp.ideal.cols(), 0);
}

TEST(CrossedProduct, FiniteTorusIsMatrixAlgebra) {
  for (int n : {2, 3, 4}) {
    const auto b = semidirect_bundle(finite_torus_action(n));
    const auto cp = crossed_product(b);
    // Oracle: brute-force ideal span and eigenvalue-multiplicity block sizes.
    std::vector<Vec> gens;
    for (Elem h = 1; h < n; ++h) gens.push_back(b.u[h] - b.bundle.total.unit());
    const Mat ideal = oracle::brute_ideal(b.bundle.total, gens);
    EXPECT_TRUE(same_subspace(ideal, cp.ideal, 1e-8));
    const auto expected = oracle::dimension_vector(cp.algebra);
    EXPECT_EQ(dims(cp.algebra), expected);
    EXPECT_EQ(expected, (DimensionVector{n}));
  }
}

TEST(CrossedProduct, GroupLikeIsFullMatrixAlgebra) {
  for (const auto& G : {cyclic_group(3), symmetric_group(3)}) {
    const auto cp = crossed_product(semidirect_bundle(group_like(G)));
    EXPECT_EQ(dims(cp.algebra), (DimensionVector{G.order()}));
    // π1 of (G, G, id) is trivial.
    EXPECT_EQ(pi1(identity_crossed_module(G)).group.order(), 1);
  }
}

TEST(Representation, Validation) {
  const auto b = semidirect_bundle(finite_torus_action(2));
  EXPECT_NO_THROW(canonical_representation(b));
  const auto m2 = matrix_algebra(2);
  EXPECT_EQ(code_of([&] { make_representation(b, m2, Mat::Zero(4, 8)); }), ErrorCode::NotRepresentation);
  EXPECT_EQ(code_of([&] { make_representation(b, m2, Mat::Zero(3, 8)); }), ErrorCode::BadShape);
}

namespace {

/// ρ(a δ_g) = a V_g on M_n for the clock-and-shift torus: V_{∂h} = u_h.
Representation torus_representation(int n) {
  const auto act = finite_torus_action(n);
  const auto b = semidirect_bundle(act);
  const auto& A = act.A;
  const int d = A.dim();
  Mat map(d, d * n);
  for (Elem g = 0; g < n; ++g) {
    const Mat right = A.right_mult(act.u[g]);
    map.middleCols(static_cast<Eigen::Index>(g) * d, d) = right;
  }
  return make_representation(b, A, map);
}

}  // namespace

TEST(UniversalProperty, Factorizations) {
  const auto b = semidirect_bundle(finite_torus_action(3));
  // Canonical projection factors through the identity.
  const auto can = canonical_representation(b);
  const auto f = universal_factorization(b, can);
  EXPECT_EQ(f.kernel_dim, 0);
  EXPECT_LT(max_abs(f.hom.matrix - Mat::Identity(f.hom.matrix.rows(), f.hom.matrix.cols())), 1e-9);
  // Torus representation on M_n factors through an isomorphism.
  for (int n : {2, 3, 4}) {
    const auto rep = torus_representation(n);
    const auto g = universal_factorization(rep.bundle, rep);
    EXPECT_EQ(g.kernel_dim, 0);
    EXPECT_EQ(rank_of(g.hom.matrix), n * n);
    EXPECT_EQ(dims(g.hom.src), dims(rep.target));
  }
  // A character of C[Z/2] as representation of the group bundle.
  const auto sb = semidirect_bundle(trivial_strict_action(complex_numbers(), group_crossed_module(cyclic_group(2))));
  Mat chi(1, 2);
  chi << 1, -1;
  const auto rep = make_representation(sb, complex_numbers(), chi);
  const auto h = universal_factorization(sb, rep);
  EXPECT_LT(max_abs(h.hom.matrix * crossed_product(sb).projection.matrix - chi), 1e-12);
}

TEST(UniversalProperty, RejectsNonFactoring) {
  // A representation that ignores u_h ↦ 1 is rejected before factorization.
  const auto act = finite_torus_action(2);
  const auto b = semidirect_bundle(act);
  Mat map = Mat::Zero(4, 8);
  map.leftCols(4) = Mat::Identity(4, 4);
  map.rightCols(4) = act.A.right_mult(act.u[1]) * -1.0;
  EXPECT_EQ(code_of([&] { make_representation(b, act.A, map); }), ErrorCode::NotRepresentation);
  Representation fake{b, act.A, map};
  EXPECT_EQ(code_of([&] { universal_factorization(b, fake); }), ErrorCode::NoFactorization);
}

TEST(Descend, Examples) {
  const auto z4 = cyclic_group(4);
  const auto C = make_crossed_module(z4, z4, identity_hom(z4), trivial_action(z4, z4));
  const auto cmb = trivial_cm_bundle(C, complex_numbers());
  // N trivial: same bundle shape.
  const auto q0 = quotient_equivalence(C, trivial_subgroup(z4));
  const auto d0 = descend_bundle(cmb, q0);
  EXPECT_EQ(d0.bundle.bundle.total.dim(), cmb.bundle.total.dim());
  EXPECT_LT(d0.pullback_residual, 1e-10);
  // N = {0,2}: bundle over Z/2.
  const auto q = quotient_equivalence(C, make_subgroup(z4, {0, 2}));
  const auto d = descend_bundle(cmb, q);
  EXPECT_EQ(d.bundle.bundle.G.order(), 2);
  EXPECT_LT(d.pullback_residual, 1e-10);
  EXPECT_EQ(dims(crossed_product(d.bundle).algebra), dims(crossed_product(cmb).algebra));
  // Thin crossed module, N = H: an ordinary algebra equal to the crossed product.
  const auto t = semidirect_bundle(finite_torus_action(3));
  const auto qt = quotient_equivalence(t.C, whole_subgroup(t.C.H));
  const auto dt = descend_bundle(t, qt);
  EXPECT_EQ(dt.bundle.bundle.G.order(), 1);
  EXPECT_EQ(dims(dt.bundle.bundle.total), dims(crossed_product(t).algebra));
  EXPECT_LT(dt.pullback_residual, 1e-9);
}

TEST(Descend, TransversalIndependence) {
  const auto t = semidirect_bundle(finite_torus_action(4));
  const auto q = quotient_equivalence(t.C, make_subgroup(t.C.H, {0, 2}));
  const auto a = descend_bundle(t, q);
  std::vector<Elem> other = q.qG.transversal;
  for (auto& x : other) x = t.C.G.mul(x, 2);
  const auto b = descend_bundle(t, q, other);
  EXPECT_NE(a.transversal, b.transversal);
  EXPECT_EQ(dims(crossed_product(a.bundle).algebra), dims(crossed_product(b.bundle).algebra));
  EXPECT_EQ(dims(crossed_product(a.bundle).algebra), dims(crossed_product(t).algebra));
  EXPECT_LT(b.pullback_residual, 1e-9);
}

TEST(Restrict, Examples) {
  const auto t = semidirect_bundle(finite_torus_action(4));
  const auto whole = enlarge_equivalence(t.C, whole_subgroup(t.C.G));
  const auto same = restrict_bundle(t, whole);
  EXPECT_EQ(same.bundle.total.dim(), t.bundle.total.dim());
  // ∂ is onto, so any subgroup of G gives an equivalence.
  const auto e = enlarge_equivalence(t.C, make_subgroup(t.C.G, {0, 2}));
  ASSERT_TRUE(is_equivalence(e.hom));
  const auto r = restrict_bundle(t, e);
  EXPECT_TRUE(r.bundle.saturated);
  EXPECT_EQ(dims(crossed_product(r).algebra), dims(crossed_product(t).algebra));
  const auto r1 = restrict_bundle(t, enlarge_equivalence(t.C, trivial_subgroup(t.C.G)));
  EXPECT_EQ(dims(crossed_product(r1).algebra), (DimensionVector{4}));
}
