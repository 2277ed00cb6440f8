#pragma once

// Brute-force reference computations used to cross-check the library.
// They share no code with the algorithms they check beyond the algebra
// container and basic numerics.

#include "xmod/fell_bundle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using xmod::cplx;
using xmod::Mat;
using xmod::Vec;

/// Orthonormal basis of span(m) by column-pivoted QR.
inline Mat span_of(const Mat& m, double tol = 1e-9) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(tol);
  const auto r = qr.rank();
  return qr.householderQ() * Mat::Identity(m.rows(), r);
}

/// Algebra spanned by a *-closed unital family of square matrices, with the
/// structure constants read off by least squares in the orthonormalised span.
inline xmod::StarAlgebra matrix_span_algebra(const std::vector<Mat>& gens) {
  const Eigen::Index n = gens.front().rows();
  Mat flat(n * n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) flat.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vec>(gens[i].data(), n * n);
  const Mat q = span_of(flat);
  const int d = static_cast<int>(q.cols());
  auto as_mat = [&](const Vec& v) { return Mat(Eigen::Map<const Mat>(v.data(), n, n)); };
  auto coords = [&](const Mat& m) { return Vec(q.adjoint() * Eigen::Map<const Vec>(m.data(), n * n)); };
  std::vector<Mat> left(d, Mat(d, d));
  Mat star(d, d);
  for (int i = 0; i < d; ++i) {
    const Mat bi = as_mat(q.col(i));
    for (int j = 0; j < d; ++j) left[i].col(j) = coords(bi * as_mat(q.col(j)));
    // star(x) = S conj(x): column i is the coordinate vector of b_i^*.
    star.col(i) = coords(bi.adjoint());
  }
  return xmod::make_algebra(d, xmod::products_from_left(left, 1e-13), star, coords(Mat::Identity(n, n)), "span");
}

/// A ⋊ G through its regular covariant representation on A ⊗ ℓ²(G):
/// π(a) = Σ_x α_{x^-1}(a) ⊗ E_xx acting by left multiplication, λ_g = 1 ⊗ (x ↦ gx).
inline xmod::StarAlgebra regular_crossed_product(const xmod::StarAlgebra& A, const xmod::FiniteGroup& G,
                                                 const std::vector<Mat>& alpha) {
  const int d = A.dim(), n = G.order();
  std::vector<Mat> gens;
  for (int i = 0; i < d; ++i) {
    Mat m = Mat::Zero(d * n, d * n);
    for (int x = 0; x < n; ++x) {
      const Vec a = alpha[G.inv(x)] * xmod::unit_vector(d, i);
      m.block(x * d, x * d, d, d) = A.left_mult(a);
    }
    for (int g = 0; g < n; ++g) {
      Mat lam = Mat::Zero(d * n, d * n);
      for (int x = 0; x < n; ++x) lam.block(G.mul(g, x) * d, x * d, d, d) = Mat::Identity(d, d);
      gens.push_back(m * lam);
    }
  }
  return matrix_span_algebra(gens);
}

/// Brute-force two-sided ideal: span of x s y over all basis pairs x, y.
inline Mat brute_ideal(const xmod::StarAlgebra& a, const std::vector<Vec>& gens) {
  const int d = a.dim();
  if (gens.empty()) return Mat(d, 0);
  Mat all(d, static_cast<Eigen::Index>(gens.size()) * d * d);
  Eigen::Index c = 0;
  for (const auto& s : gens)
    for (int x = 0; x < d; ++x) {
      const Vec xs = a.multiply(xmod::unit_vector(d, x), s);
      const Mat right = a.left_mult(xs);  // y ↦ xs y
      all.middleCols(c, d) = right;
      c += d;
    }
  return span_of(all);
}

/// Dimension vector from eigenvalue multiplicities of left multiplication by a
/// random self-adjoint central element: block M_n contributes n² copies.
inline std::vector<int> dimension_vector(const xmod::StarAlgebra& a, unsigned seed = 7) {
  const int d = a.dim();
  if (d == 0) return {};
  // Centre: kernel of x ↦ (e_i x - x e_i)_i, by QR of the stacked system.
  Mat sys(static_cast<Eigen::Index>(d) * d, d);
  for (int i = 0; i < d; ++i) sys.middleRows(static_cast<Eigen::Index>(i) * d, d) = a.left_basis(i) - a.right_basis(i);
  Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-9 * std::max(1.0, sv(0))) ++rank;
  const Mat z = svd.matrixV().rightCols(d - rank);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vec w = Vec::Zero(d);
  for (Eigen::Index k = 0; k < z.cols(); ++k) w += cplx(uni(rng), uni(rng)) * z.col(k);
  const Vec h = w + a.star(w);
  Eigen::ComplexEigenSolver<Mat> es(a.left_mult(h), false);
  std::vector<double> ev;
  for (int i = 0; i < d; ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  std::vector<int> dims;
  int run = 1;
  for (int i = 1; i <= d; ++i) {
    if (i < d && std::abs(ev[i] - ev[i - 1]) < 1e-6 * std::max(1.0, std::abs(ev[i]))) {
      ++run;
      continue;
    }
    const int n = static_cast<int>(std::lround(std::sqrt(run)));
    dims.push_back(n * n == run ? n : -run);
    run = 1;
  }
  std::sort(dims.begin(), dims.end());
  return dims;
}

/// A ⋊ C by brute force: A ⋊ G in its regular covariant representation,
/// divided by the two-sided ideal generated by π(u_h) - λ_{∂h}. The quotient
/// is realised as the Hilbert-Schmidt complement of the ideal, which is the
/// complementary ideal of a semisimple *-algebra of matrices.
inline std::vector<int> crossed_product_dims(const xmod::StrictAction& act, unsigned seed = 7) {
  const xmod::StarAlgebra& A = act.A;
  const xmod::FiniteGroup& G = act.C.G;
  const int d = A.dim(), n = G.order(), N = d * n;
  auto pi = [&](const Vec& a) {
    Mat m = Mat::Zero(N, N);
    for (int x = 0; x < n; ++x) m.block(x * d, x * d, d, d) = A.left_mult(act.alpha[G.inv(x)] * a);
    return m;
  };
  auto lambda = [&](int g) {
    Mat m = Mat::Zero(N, N);
    for (int x = 0; x < n; ++x) m.block(G.mul(g, x) * d, x * d, d, d) = Mat::Identity(d, d);
    return m;
  };
  auto flat = [&](const Mat& m) { return Vec(Eigen::Map<const Vec>(m.data(), N * N)); };
  auto unflat = [&](const Vec& v) { return Mat(Eigen::Map<const Mat>(v.data(), N, N)); };

  std::vector<Mat> span;
  for (int i = 0; i < d; ++i)
    for (int g = 0; g < n; ++g) span.push_back(pi(xmod::unit_vector(d, i)) * lambda(g));
  Mat all(N * N, static_cast<Eigen::Index>(span.size()));
  for (std::size_t k = 0; k < span.size(); ++k) all.col(static_cast<Eigen::Index>(k)) = flat(span[k]);
  const Mat b = span_of(all);

  // Left ideal generated by the relations, then its right multiples.
  std::vector<Vec> left;
  for (int h = 0; h < act.C.H.order(); ++h) {
    const Mat r = pi(act.u[h]) - lambda(act.C.d(h));
    for (const Mat& x : span) left.push_back(flat(x * r));
  }
  Mat lm(N * N, static_cast<Eigen::Index>(left.size()));
  for (std::size_t k = 0; k < left.size(); ++k) lm.col(static_cast<Eigen::Index>(k)) = left[k];
  const Mat l = span_of(lm);
  // Work in orthonormal coordinates of A ⋊ G from here on.
  const Eigen::Index k = static_cast<Eigen::Index>(span.size());
  Mat im(b.cols(), l.cols() * k);
  for (Eigen::Index c = 0; c < l.cols(); ++c)
    for (Eigen::Index j = 0; j < k; ++j) im.col(c * k + j) = b.adjoint() * flat(unflat(l.col(c)) * span[j]);
  const Mat ideal = span_of(im);
  const Mat rest = span_of(Mat::Identity(b.cols(), b.cols()) - ideal * ideal.adjoint());
  if (rest.cols() == 0) return {};
  std::vector<Mat> gens;
  for (Eigen::Index c = 0; c < rest.cols(); ++c) gens.push_back(unflat(b * rest.col(c)));
  return dimension_vector(matrix_span_algebra(gens), seed);
}

}  // namespace oracle
