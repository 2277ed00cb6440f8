#include "xmod/error.hpp"
#include "xmod/star_algebra.hpp"

#include <gtest/gtest.h>

#include <Eigen/QR>

#include <random>

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

/// C[x]/(x^2) with x* = x: associative, unital, not C*.
StarAlgebra dual_numbers() {
  std::vector<std::vector<Term>> p(4);
  p[0] = {{0, 1.0}};
  p[1] = {{1, 1.0}};
  p[2] = {{1, 1.0}};
  return make_algebra(2, p, Mat::Identity(2, 2));
}

/// The same algebra in a basis b_i = Σ_j u_ji e_j for unitary u.
StarAlgebra change_basis(const StarAlgebra& a, const Mat& u) {
  const int d = a.dim();
  const Mat ui = u.adjoint();
  std::vector<Mat> left(d);
  for (int i = 0; i < d; ++i) left[i] = ui * a.left_mult(u.col(i)) * u;
  return make_algebra(d, products_from_left(left, 0.0), ui * a.star_matrix() * u.conjugate(), ui * a.unit());
}

Mat random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<Mat> qr(m);
  return qr.householderQ() * Mat::Identity(n, n);
}

}  // namespace

TEST(StarAlgebra, BasicDimensionVectors) {
  EXPECT_EQ(wedderburn(complex_numbers()).dims, (DimensionVector{1}));
  EXPECT_EQ(wedderburn(matrix_algebra(2)).dims, (DimensionVector{2}));
  EXPECT_EQ(wedderburn(matrix_algebra(3)).dims, (DimensionVector{3}));
  EXPECT_EQ(wedderburn(functions_on(3)).dims, (DimensionVector{1, 1, 1}));
  EXPECT_EQ(wedderburn(direct_sum(matrix_algebra(2), complex_numbers())).dims, (DimensionVector{1, 2}));
  EXPECT_EQ(wedderburn(tensor(matrix_algebra(2), matrix_algebra(3))).dims, (DimensionVector{6}));
  EXPECT_EQ(wedderburn(tensor(functions_on(2), matrix_algebra(2))).dims, (DimensionVector{2, 2}));
}

TEST(StarAlgebra, GroupAlgebras) {
  // Block sizes are the irreducible degrees: squares sum to |G|, count = classes.
  EXPECT_EQ(wedderburn(group_algebra(cyclic_group(4))).dims, (DimensionVector{1, 1, 1, 1}));
  const auto s3 = group_algebra(symmetric_group(3));
  EXPECT_EQ(wedderburn(s3).dims, (DimensionVector{1, 1, 2}));
  EXPECT_EQ(center(s3).cols(), 3);
  EXPECT_EQ(wedderburn(group_algebra(symmetric_group(4))).dims, (DimensionVector{1, 1, 2, 3, 3}));
  EXPECT_EQ(center(group_algebra(direct_product({cyclic_group(2), cyclic_group(3)}))).cols(), 6);
}

TEST(StarAlgebra, TraceFunctional) {
  const auto m2 = matrix_algebra(2);
  // Left regular trace on M_n is n times the matrix trace.
  EXPECT_NEAR(std::abs(m2.trace(m2.unit()) - cplx(4.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m2.trace(unit_vector(4, 1))), 0.0, 1e-12);
  const auto g = group_algebra(cyclic_group(5));
  EXPECT_NEAR(std::abs(g.trace(unit_vector(5, 0)) - cplx(5.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(g.trace(unit_vector(5, 3))), 0.0, 1e-12);
}

TEST(StarAlgebra, ValidationErrors) {
  EXPECT_EQ(code_of([] { dual_numbers(); }), ErrorCode::NotCStar);
  EXPECT_EQ(code_of([] { make_algebra(2, std::vector<std::vector<Term>>(3), Mat::Identity(2, 2)); }),
            ErrorCode::BadShape);
  {
    // e0 e0 = e1, everything else zero: (e0 e0) e0 = 0 = e0 (e0 e0) associative but no unit.
    std::vector<std::vector<Term>> p(4);
    p[0] = {{1, 1.0}};
    EXPECT_EQ(code_of([&] { make_algebra(2, p, Mat::Identity(2, 2)); }), ErrorCode::NoUnit);
  }
  {
    std::vector<std::vector<Term>> p(4);
    p[0] = {{0, 1.0}};
    p[1] = {{1, 1.0}};
    p[3] = {{0, 1.0}};
    // e1 e0 = 0 but e0 e1 = e1: (e1 e0) e1 = 0, e1 (e0 e1) = e1 e1 = e0.
    EXPECT_EQ(code_of([&] { make_algebra(2, p, Mat::Identity(2, 2)); }), ErrorCode::NotAssociative);
  }
  {
    // Entrywise conjugation on M2 is not anti-multiplicative.
    const auto m2 = matrix_algebra(2);
    std::vector<std::vector<Term>> p(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p[i * 4 + j] = m2.product(i, j);
    EXPECT_EQ(code_of([&] { make_algebra(4, p, Mat::Identity(4, 4)); }), ErrorCode::BadInvolution);
  }
  {
    Vec bad = Vec::Zero(1);
    EXPECT_EQ(code_of([&] { make_algebra(1, {{{0, 1.0}}}, Mat::Identity(1, 1), bad); }), ErrorCode::NoUnit);
  }
}

TEST(StarAlgebra, UnitIsSolved) {
  const auto g = group_algebra(symmetric_group(3));
  std::vector<std::vector<Term>> p(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) p[i * 6 + j] = g.product(i, j);
  const auto a = make_algebra(6, p, g.star_matrix());
  EXPECT_LT((a.unit() - unit_vector(6, 0)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(StarAlgebra, AxiomReportOnBuiltins) {
  for (const auto& a : {matrix_algebra(3), group_algebra(symmetric_group(3)),
                        tensor(group_algebra(cyclic_group(3)), matrix_algebra(2))}) {
    const auto r = axiom_report(a);
    EXPECT_LT(r.associativity, 1e-12) << a.name();
    EXPECT_LT(r.involution, 1e-12) << a.name();
    EXPECT_LT(r.unit, 1e-12) << a.name();
    EXPECT_GT(r.min_trace_eigenvalue, 0.5) << a.name();
  }
}

TEST(StarAlgebra, DenseAssociativityPathAgrees) {
  // A random unitary basis change makes the constants dense.
  const auto a = group_algebra(symmetric_group(3));
  const auto b = change_basis(a, random_unitary(6, 7));
  EXPECT_GT(b.density(), 3.0);
  EXPECT_LT(axiom_report(b).associativity, 1e-10);
  EXPECT_EQ(wedderburn(b).dims, (DimensionVector{1, 1, 2}));
}

TEST(StarAlgebra, BasisChangeInvariance) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto a = direct_sum(matrix_algebra(2), functions_on(2));
    const auto b = change_basis(a, random_unitary(a.dim(), seed));
    EXPECT_EQ(wedderburn(b, seed).dims, (DimensionVector{1, 1, 2}));
    EXPECT_EQ(center(b).cols(), 3);
  }
}

TEST(StarAlgebra, MinimalIdempotentsOfCyclicGroup) {
  // For C[Z/n] the minimal idempotents are (1/n) Σ_g conj(χ(g)) δ_g over characters χ.
  const int n = 4;
  const auto a = group_algebra(cyclic_group(n));
  const auto w = wedderburn(a, 3);
  ASSERT_EQ(w.idempotents.size(), 4u);
  std::vector<bool> hit(n, false);
  for (const auto& p : w.idempotents)
    for (int k = 0; k < n; ++k) {
      Vec q(n);
      for (int g = 0; g < n; ++g) q(g) = std::conj(root_of_unity(static_cast<std::int64_t>(k) * g, n)) / double(n);
      if ((p - q).cwiseAbs().maxCoeff() < 1e-9) hit[k] = true;
    }
  for (int k = 0; k < n; ++k) EXPECT_TRUE(hit[k]) << k;
}

TEST(StarAlgebra, SeedsAgree) {
  const auto a = group_algebra(symmetric_group(3));
  for (std::uint64_t seed : {0ull, 1ull, 99ull, 123456789ull}) EXPECT_EQ(wedderburn(a, seed).dims, (DimensionVector{1, 1, 2}));
}

TEST(StarAlgebra, Ideals) {
  const auto c2 = functions_on(2);
  const Mat i0 = ideal_generated(c2, {unit_vector(2, 0)});
  EXPECT_EQ(i0.cols(), 1);
  EXPECT_TRUE(is_ideal(c2, i0));
  EXPECT_EQ(ideal_generated(c2, {Vec::Ones(2)}).cols(), 2);
  // M_n is simple: any nonzero element generates everything.
  EXPECT_EQ(ideal_generated(matrix_algebra(3), {unit_vector(9, 5)}).cols(), 9);
  // The augmentation ideal of C[Z/3] has codimension one.
  Vec x = unit_vector(3, 1) - unit_vector(3, 0);
  EXPECT_EQ(ideal_generated(group_algebra(cyclic_group(3)), {x}).cols(), 2);
  Mat not_ideal(4, 1);
  not_ideal.col(0) = unit_vector(4, 0);
  EXPECT_FALSE(is_ideal(matrix_algebra(2), not_ideal));
}

TEST(StarAlgebra, Quotients) {
  const auto c2 = functions_on(2);
  const auto zero = quotient_algebra(c2, Mat(2, 0));
  EXPECT_EQ(zero.algebra.dim(), 2);
  EXPECT_FALSE(zero.degenerate);
  const auto all = quotient_algebra(c2, Mat::Identity(2, 2));
  EXPECT_TRUE(all.degenerate);
  EXPECT_EQ(all.algebra.dim(), 0);
  Mat first(2, 1);
  first.col(0) = unit_vector(2, 0);
  const auto q = quotient_algebra(c2, first);
  EXPECT_EQ(wedderburn(q.algebra).dims, (DimensionVector{1}));
  EXPECT_LT(std::abs(std::abs(q.projection(unit_vector(2, 1))(0)) - 1.0), 1e-12);
  EXPECT_LT(q.projection(unit_vector(2, 0)).norm(), 1e-12);
  Mat bad(4, 1);
  bad.col(0) = unit_vector(4, 1);
  EXPECT_EQ(code_of([&] { quotient_algebra(matrix_algebra(2), bad); }), ErrorCode::NotIdeal);

  // C[S3] modulo the augmentation ideal is C.
  const auto s3 = group_algebra(symmetric_group(3));
  std::vector<Vec> gens;
  for (int g = 1; g < 6; ++g) gens.push_back(unit_vector(6, g) - unit_vector(6, 0));
  const auto aug = quotient_algebra(s3, ideal_generated(s3, gens));
  EXPECT_EQ(wedderburn(aug.algebra).dims, (DimensionVector{1}));
}

TEST(StarAlgebra, Isomorphism) {
  EXPECT_TRUE(is_isomorphic(group_algebra(cyclic_group(4)), functions_on(4)));
  EXPECT_TRUE(is_isomorphic(group_algebra(direct_product({cyclic_group(2), cyclic_group(2)})),
                            group_algebra(cyclic_group(4))));
  EXPECT_FALSE(is_isomorphic(group_algebra(cyclic_group(4)), matrix_algebra(2)));
  EXPECT_FALSE(is_isomorphic(group_algebra(symmetric_group(3)), functions_on(6)));
  EXPECT_TRUE(is_isomorphic(tensor(matrix_algebra(2), matrix_algebra(2)), matrix_algebra(4)));
}

TEST(StarAlgebra, Homomorphisms) {
  // Fourier transform C[Z/2] → C^2: δ_g ↦ (1, (-1)^g).
  const auto g = group_algebra(cyclic_group(2));
  const auto f = functions_on(2);
  Mat m(2, 2);
  m << 1, 1, 1, -1;
  const auto h = make_star_hom(g, f, m);
  EXPECT_LT(star_hom_residual(g, f, m), 1e-12);
  // Diagonal embedding C → M2.
  Mat diag = Mat::Zero(4, 1);
  diag(0, 0) = diag(3, 0) = 1.0;
  const auto e = make_star_hom(complex_numbers(), matrix_algebra(2), diag);
  // Evaluation at a point C^2 → C composes with Fourier to the trivial character.
  Mat ev(1, 2);
  ev << 0, 1;
  const auto pt = make_star_hom(f, complex_numbers(), ev);
  const auto comp = compose(pt, h);
  EXPECT_LT((comp.matrix - (Mat(1, 2) << 1, -1).finished()).cwiseAbs().maxCoeff(), 1e-12);
  const auto back = compose(e, comp);
  EXPECT_EQ(back.matrix.rows(), 4);

  EXPECT_EQ(code_of([&] { make_star_hom(g, f, Mat::Identity(2, 2)); }), ErrorCode::NotStarHom);
  Mat not_star(2, 2);
  not_star << 1, cplx(0, 1), 1, cplx(0, -1);
  EXPECT_EQ(code_of([&] { make_star_hom(group_algebra(cyclic_group(2)), f, not_star); }), ErrorCode::NotStarHom);
  EXPECT_EQ(code_of([&] { make_star_hom(g, f, Mat::Identity(3, 2)); }), ErrorCode::BadShape);
}

TEST(StarAlgebra, DimensionVectorRules) {
  // Direct sum concatenates, tensor multiplies pairwise.
  const auto a = group_algebra(symmetric_group(3));
  const auto b = direct_sum(complex_numbers(), matrix_algebra(2));
  EXPECT_EQ(wedderburn(direct_sum(a, b)).dims, (DimensionVector{1, 1, 1, 2, 2}));
  EXPECT_EQ(wedderburn(tensor(a, b)).dims, (DimensionVector{1, 1, 2, 2, 2, 4}));
  EXPECT_EQ(to_string(DimensionVector{1, 1, 2}), "[1,1,2]");
  EXPECT_EQ(to_string(DimensionVector{}), "[]");
}

TEST(StarAlgebra, ValidatedCounter) {
  const auto before = validated_algebra_count();
  matrix_algebra(2);
  EXPECT_EQ(validated_algebra_count(), before + 1);
}
