#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace xmod {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Global tolerance for rank and zero decisions. Default 1e-9.
double tolerance();
void set_tolerance(double eps);

/// Threshold for identity checks on computed quantities of the given
/// magnitude: 100 * tolerance() * max(1, scale).
double check_tolerance(double scale = 1.0);

/// Restores the previous tolerance on scope exit.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double eps) : saved_(tolerance()) { set_tolerance(eps); }
  ~ScopedTolerance() { set_tolerance(saved_); }
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double saved_;
};

/// exp(2 pi i * num / den), exact on the eight obvious angles.
cplx root_of_unity(std::int64_t num, std::int64_t den);

/// Orthonormal basis (columns) of the column span of m. Rank is decided by
/// singular values against tolerance() * max(1, largest singular value).
Mat orthonormal_span(const Mat& m);

/// Orthonormal basis of the null space of m.
Mat null_space(const Mat& m);

/// Numerical rank with the same rule as orthonormal_span.
int rank_of(const Mat& m);

/// Orthonormal basis of the orthogonal complement of span(basis) in C^n;
/// basis must have orthonormal columns.
Mat orthogonal_complement(const Mat& basis, int n);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Mat& m);

/// True when span(a) == span(b); both orthonormal. Residuals go to *residual.
bool same_subspace(const Mat& a, const Mat& b, double tol, double* residual = nullptr);

/// Unit vector e_i in C^n.
Vec unit_vector(int n, int i);

}  // namespace xmod
