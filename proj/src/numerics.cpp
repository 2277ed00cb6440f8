#include "xmod/numerics.hpp"

#include "xmod/error.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

namespace xmod {

namespace {
std::atomic<double> g_tolerance{1e-9};

// Singular values with a left span basis u (rows x min) and a full right
// basis v (cols x cols). QR first so the Jacobi SVD only sees a square factor;
// BDCSVD in Eigen 3.4.0 can return NaN on exactly rank-deficient input.
struct Factor {
  Eigen::VectorXd sv;
  Mat u;
  Mat v;
};

Factor factor(const Mat& m, bool values_only = false) {
  const Eigen::Index r = m.rows(), c = m.cols();
  Factor f;
  if (values_only) {
    const bool tall = r >= c;
    Eigen::HouseholderQR<Mat> qr(tall ? m : Mat(m.adjoint()));
    const Eigen::Index k = std::min(r, c);
    const Mat tri = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    f.sv = Eigen::JacobiSVD<Mat>(tri).singularValues();
    return f;
  }
  if (r >= c) {
    Eigen::HouseholderQR<Mat> qr(m);
    const Mat tri = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Mat> svd(tri, Eigen::ComputeFullU | Eigen::ComputeFullV);
    f.sv = svd.singularValues();
    f.u = qr.householderQ() * (Mat(r, c) << svd.matrixU(), Mat::Zero(r - c, c)).finished();
    f.v = svd.matrixV();
  } else {
    Eigen::HouseholderQR<Mat> qr(m.adjoint());
    const Mat tri = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Mat> svd(tri.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    f.sv = svd.singularValues();
    f.u = svd.matrixU();
    const Mat q = qr.householderQ() * Mat::Identity(c, c);
    f.v.resize(c, c);
    f.v.leftCols(r) = q.leftCols(r) * svd.matrixV();
    f.v.rightCols(c - r) = q.rightCols(c - r);
  }
  return f;
}

double rank_threshold(const Eigen::VectorXd& sv) {
  double top = sv.size() > 0 ? sv(0) : 0.0;
  return tolerance() * std::max(1.0, top);
}
}  // namespace

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

double check_tolerance(double scale) { return 100.0 * tolerance() * std::max(1.0, scale); }

void set_tolerance(double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::BadShape, "tolerance must be positive");
  g_tolerance.store(eps, std::memory_order_relaxed);
}

cplx root_of_unity(std::int64_t num, std::int64_t den) {
  std::int64_t r = ((num % den) + den) % den;
  // 8 * r / den exact -> snap to {1, (1+i)/sqrt2, i, ...}
  if ((8 * r) % den == 0) {
    switch ((8 * r) / den) {
      case 0: return {1.0, 0.0};
      case 2: return {0.0, 1.0};
      case 4: return {-1.0, 0.0};
      case 6: return {0.0, -1.0};
      default: break;
    }
  }
  double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

static int numerical_rank(const Eigen::VectorXd& sv) {
  const double thr = rank_threshold(sv);
  int r = 0;
  while (r < sv.size() && sv(r) > thr) ++r;
  return r;
}

Mat orthonormal_span(const Mat& m) {
  if (m.cols() == 0 || m.rows() == 0) return Mat(m.rows(), 0);
  const Factor f = factor(m);
  return f.u.leftCols(numerical_rank(f.sv));
}

Mat null_space(const Mat& m) {
  const int n = static_cast<int>(m.cols());
  if (n == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(n, n);
  const Factor f = factor(m);
  return f.v.rightCols(n - numerical_rank(f.sv));
}

int rank_of(const Mat& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  return numerical_rank(factor(m, true).sv);
}

Mat orthogonal_complement(const Mat& basis, int n) {
  if (basis.cols() == 0) return Mat::Identity(n, n);
  Mat proj = Mat::Identity(n, n) - basis * basis.adjoint();
  Mat c = orthonormal_span(proj);
  return c.leftCols(std::min<Eigen::Index>(c.cols(), n - basis.cols()));
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool same_subspace(const Mat& a, const Mat& b, double tol, double* residual) {
  double res = 0.0;
  if (a.cols() != b.cols()) {
    if (residual) *residual = INFINITY;
    return false;
  }
  if (a.cols() > 0) {
    res = std::max(max_abs(a - b * (b.adjoint() * a)), max_abs(b - a * (a.adjoint() * b)));
  }
  if (residual) *residual = res;
  return res < tol;
}

Vec unit_vector(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace xmod
