#include "xmod/star_algebra.hpp"

#include "xmod/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace xmod {

namespace {

std::atomic<std::uint64_t> g_validated{0};

std::string str(long v) { return std::to_string(v); }

double max_constant(const std::vector<std::vector<Term>>& products) {
  double m = 0.0;
  for (const auto& p : products)
    for (const auto& t : p) m = std::max(m, std::abs(t.c));
  return m;
}

// Dense T with T[m, k*d + n] = coefficient of e_n in e_m e_k.
Mat product_tensor(const StarAlgebra& a) {
  const int d = a.dim();
  Mat t = Mat::Zero(d, static_cast<Eigen::Index>(d) * d);
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < d; ++k)
      for (const auto& term : a.product(m, k)) t(m, static_cast<Eigen::Index>(k) * d + term.k) += term.c;
  return t;
}

double associativity_residual_sparse(const StarAlgebra& a) {
  const int d = a.dim();
  Vec acc = Vec::Zero(d);
  std::vector<int> touched;
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        touched.clear();
        for (const auto& t1 : a.product(i, j))
          for (const auto& t2 : a.product(t1.k, k)) {
            acc(t2.k) += t1.c * t2.c;
            touched.push_back(t2.k);
          }
        for (const auto& t1 : a.product(j, k))
          for (const auto& t2 : a.product(i, t1.k)) {
            acc(t2.k) -= t1.c * t2.c;
            touched.push_back(t2.k);
          }
        for (int n : touched) {
          worst = std::max(worst, std::abs(acc(n)));
          acc(n) = 0.0;
        }
      }
  return worst;
}

double associativity_residual_dense(const StarAlgebra& a) {
  const int d = a.dim();
  const Mat t = product_tensor(a);
  // m_rows[(j*d + k), n] = coefficient of e_n in e_j e_k.
  Mat m_rows = Mat::Zero(static_cast<Eigen::Index>(d) * d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (const auto& term : a.product(j, k)) m_rows(static_cast<Eigen::Index>(j) * d + k, term.k) += term.c;
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    // lhs[j, k*d + n] = ((e_i e_j) e_k)_n
    const Mat mi = m_rows.middleRows(static_cast<Eigen::Index>(i) * d, d);
    const Mat lhs = mi * t;
    // rhs[(j,k), n] = (e_i (e_j e_k))_n
    const Mat li = a.left_basis(i);
    const Mat rhs = m_rows * li.transpose();
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int n = 0; n < d; ++n)
          worst = std::max(worst, std::abs(lhs(j, static_cast<Eigen::Index>(k) * d + n) -
                                           rhs(static_cast<Eigen::Index>(j) * d + k, n)));
  }
  return worst;
}

// Sparse cost grows like dim^3 density^2, the blocked dense path like dim^5
// at GEMM speed.
bool prefer_dense(const StarAlgebra& a) {
  const double rho = a.density();
  return rho > 3.0 && rho * rho * 8.0 > static_cast<double>(a.dim()) * a.dim();
}

double involution_residual_dense(const StarAlgebra& a) {
  const int d = a.dim();
  const Mat& s = a.star_matrix();
  double worst = max_abs(s * s.conjugate() - Mat::Identity(d, d));
  for (int j = 0; j < d; ++j) {
    const Mat lhs = s * a.right_basis(j).conjugate();  // column i: (e_i e_j)*
    const Mat rhs = a.left_mult(s.col(j)) * s;         // column i: e_j* e_i*
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

double involution_residual(const StarAlgebra& a) {
  const int d = a.dim();
  const Mat& s = a.star_matrix();
  const auto nnz = (s.array() != cplx(0.0)).count();
  if (nnz > 2 * static_cast<Eigen::Index>(d)) return involution_residual_dense(a);
  double worst = max_abs(s * s.conjugate() - Mat::Identity(d, d));
  // Sparse columns of S: e_j* = Σ s_kj e_k.
  std::vector<std::vector<Term>> cols(d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      if (s(k, j) != cplx(0.0)) cols[j].push_back({k, s(k, j)});
  Vec acc = Vec::Zero(d);
  std::vector<int> touched;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      touched.clear();
      // (e_i e_j)* = S conj(e_i e_j)
      for (const auto& t : a.product(i, j))
        for (const auto& c : cols[t.k]) {
          acc(c.k) += std::conj(t.c) * c.c;
          touched.push_back(c.k);
        }
      // minus e_j* e_i*
      for (const auto& x : cols[j])
        for (const auto& y : cols[i])
          for (const auto& t : a.product(x.k, y.k)) {
            acc(t.k) -= x.c * y.c * t.c;
            touched.push_back(t.k);
          }
      for (int n : touched) {
        worst = std::max(worst, std::abs(acc(n)));
        acc(n) = 0.0;
      }
    }
  return worst;
}

Mat trace_form(const StarAlgebra& a) {
  const int d = a.dim();
  Mat w = Mat::Zero(d, d);
  const Vec& t = a.trace_functional();
  for (int c = 0; c < d; ++c)
    for (int b = 0; b < d; ++b)
      for (const auto& term : a.product(c, b)) w(c, b) += term.c * t(term.k);
  return a.star_matrix().transpose() * w;
}

Vec solve_unit(int d, const std::vector<std::vector<Term>>& products) {
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  Mat sys = Mat::Zero(2 * dd, d);
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < d; ++j) {
      for (const auto& t : products[static_cast<std::size_t>(a) * d + j]) sys(static_cast<Eigen::Index>(j) * d + t.k, a) += t.c;
      for (const auto& t : products[static_cast<std::size_t>(j) * d + a])
        sys(dd + static_cast<Eigen::Index>(j) * d + t.k, a) += t.c;
    }
  Vec rhs = Vec::Zero(2 * dd);
  for (int j = 0; j < d; ++j) {
    rhs(static_cast<Eigen::Index>(j) * d + j) = 1.0;
    rhs(dd + static_cast<Eigen::Index>(j) * d + j) = 1.0;
  }
  Vec u = Eigen::CompleteOrthogonalDecomposition<Mat>(sys).solve(rhs);
  if (max_abs(sys * u - rhs) > check_tolerance()) fail(ErrorCode::NoUnit, "no two-sided unit exists");
  return u;
}

}  // namespace

StarAlgebra::StarAlgebra() : d_(std::make_shared<const Data>()) {}

StarAlgebra StarAlgebra::with_name(std::string name) const {
  auto d = std::make_shared<Data>(*d_);
  d->name = std::move(name);
  return StarAlgebra(std::move(d));
}

Vec StarAlgebra::multiply(const Vec& x, const Vec& y) const {
  const int d = dim();
  Vec r = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (x(i) == cplx(0.0)) continue;
    for (int j = 0; j < d; ++j) {
      if (y(j) == cplx(0.0)) continue;
      const cplx xy = x(i) * y(j);
      for (const auto& t : product(i, j)) r(t.k) += xy * t.c;
    }
  }
  return r;
}

Mat StarAlgebra::left_mult(const Vec& a) const {
  const int d = dim();
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (a(i) == cplx(0.0)) continue;
    for (int j = 0; j < d; ++j)
      for (const auto& t : product(i, j)) m(t.k, j) += a(i) * t.c;
  }
  return m;
}

Mat StarAlgebra::right_mult(const Vec& a) const {
  const int d = dim();
  Mat m = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    if (a(j) == cplx(0.0)) continue;
    for (int i = 0; i < d; ++i)
      for (const auto& t : product(i, j)) m(t.k, i) += a(j) * t.c;
  }
  return m;
}

double StarAlgebra::density() const {
  if (dim() == 0) return 0.0;
  std::size_t n = 0;
  for (const auto& p : d_->products) n += p.size();
  return static_cast<double>(n) / static_cast<double>(d_->products.size());
}

std::vector<std::vector<Term>> products_from_left(const std::vector<Mat>& left, double cutoff) {
  const int d = static_cast<int>(left.size());
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (std::abs(left[i](k, j)) > cutoff) p[static_cast<std::size_t>(i) * d + j].push_back({k, left[i](k, j)});
  return p;
}

AxiomReport axiom_report(const StarAlgebra& a) {
  AxiomReport r;
  if (a.dim() == 0) return r;
  r.associativity = prefer_dense(a) ? associativity_residual_dense(a) : associativity_residual_sparse(a);
  r.involution = involution_residual(a);
  const int d = a.dim();
  r.unit = std::max(max_abs(a.left_mult(a.unit()) - Mat::Identity(d, d)),
                    max_abs(a.right_mult(a.unit()) - Mat::Identity(d, d)));
  const Mat g = trace_form(a);
  Eigen::SelfAdjointEigenSolver<Mat> es((g + g.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  r.min_trace_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

StarAlgebra make_algebra(int dim, std::vector<std::vector<Term>> products, Mat star, std::optional<Vec> unit,
                         std::string name) {
  if (dim < 0) fail(ErrorCode::BadShape, "negative dimension");
  if (products.size() != static_cast<std::size_t>(dim) * dim)
    fail(ErrorCode::BadShape, "expected " + str(static_cast<long>(dim) * dim) + " products");
  if (star.rows() != dim || star.cols() != dim) fail(ErrorCode::BadShape, "star matrix must be dim x dim");
  for (const auto& p : products)
    for (const auto& t : p)
      if (t.k < 0 || t.k >= dim) fail(ErrorCode::BadShape, "structure constant index out of range");
  if (unit && unit->size() != dim) fail(ErrorCode::BadShape, "unit has wrong length");

  auto data = std::make_shared<StarAlgebra::Data>();
  data->dim = dim;
  // Merge duplicate indices so each product lists every k at most once.
  for (auto& p : products) {
    std::sort(p.begin(), p.end(), [](const Term& x, const Term& y) { return x.k < y.k; });
    std::vector<Term> merged;
    for (const auto& t : p) {
      if (!merged.empty() && merged.back().k == t.k)
        merged.back().c += t.c;
      else
        merged.push_back(t);
    }
    p = std::move(merged);
  }
  data->products = std::move(products);
  data->star = std::move(star);
  data->unit = Vec::Zero(dim);
  data->trace = Vec::Zero(dim);
  data->name = name.empty() ? "A" + str(dim) : std::move(name);
  for (int m = 0; m < dim; ++m)
    for (int k = 0; k < dim; ++k)
      for (const auto& t : data->products[static_cast<std::size_t>(m) * dim + k])
        if (t.k == k) data->trace(m) += t.c;
  if (dim == 0) {
    ++g_validated;
    return StarAlgebra(std::move(data));
  }
  const double scale = max_constant(data->products);
  StarAlgebra probe{std::shared_ptr<const StarAlgebra::Data>(data)};
  const double assoc =
      prefer_dense(probe) ? associativity_residual_dense(probe) : associativity_residual_sparse(probe);
  if (assoc > check_tolerance(scale * scale))
    fail(ErrorCode::NotAssociative, "residual " + std::to_string(assoc));
  const double inv = involution_residual(probe);
  if (inv > check_tolerance(scale * (1.0 + max_abs(data->star))))
    fail(ErrorCode::BadInvolution, "residual " + std::to_string(inv));
  data->unit = unit ? *unit : solve_unit(dim, data->products);
  const double ures = std::max(max_abs(probe.left_mult(data->unit) - Mat::Identity(dim, dim)),
                               max_abs(probe.right_mult(data->unit) - Mat::Identity(dim, dim)));
  if (ures > check_tolerance(scale)) fail(ErrorCode::NoUnit, "given unit has residual " + std::to_string(ures));
  const Mat g = trace_form(probe);
  if (max_abs(g - g.adjoint()) > check_tolerance(max_abs(g)))
    fail(ErrorCode::NotCStar, "trace form is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es((g + g.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (lo <= tolerance() * std::max(1.0, hi))
    fail(ErrorCode::NotCStar, "trace form eigenvalue " + std::to_string(lo));
  ++g_validated;
  return probe;
}

std::uint64_t validated_algebra_count() { return g_validated.load(); }

StarAlgebra complex_numbers() { return matrix_algebra(1).with_name("C"); }

StarAlgebra matrix_algebra(int n) {
  if (n <= 0) fail(ErrorCode::BadShape, "matrix size must be positive");
  const int d = n * n;
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(d) * d);
  Mat s = Mat::Zero(d, d);
  Vec u = Vec::Zero(d);
  for (int a = 0; a < n; ++a) {
    u(a * n + a) = 1.0;
    for (int b = 0; b < n; ++b) {
      s(b * n + a, a * n + b) = 1.0;
      for (int c = 0; c < n; ++c) p[static_cast<std::size_t>(a * n + b) * d + (b * n + c)].push_back({a * n + c, 1.0});
    }
  }
  return make_algebra(d, std::move(p), std::move(s), u, n == 1 ? "C" : "M" + str(n));
}

StarAlgebra functions_on(int n) {
  if (n <= 0) fail(ErrorCode::BadShape, "point count must be positive");
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) p[static_cast<std::size_t>(x) * n + x].push_back({x, 1.0});
  return make_algebra(n, std::move(p), Mat::Identity(n, n), Vec::Ones(n), "C(" + str(n) + ")");
}

StarAlgebra group_algebra(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(n) * n);
  Mat s = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    s(g.inv(a), a) = 1.0;
    for (int b = 0; b < n; ++b) p[static_cast<std::size_t>(a) * n + b].push_back({g.mul(a, b), 1.0});
  }
  return make_algebra(n, std::move(p), std::move(s), unit_vector(n, 0), "C[" + g.name() + "]");
}

StarAlgebra direct_sum(const StarAlgebra& a, const StarAlgebra& b) {
  const int da = a.dim(), db = b.dim(), d = da + db;
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) p[static_cast<std::size_t>(i) * d + j] = a.product(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      auto& dst = p[static_cast<std::size_t>(da + i) * d + da + j];
      for (const auto& t : b.product(i, j)) dst.push_back({da + t.k, t.c});
    }
  Mat s = Mat::Zero(d, d);
  s.topLeftCorner(da, da) = a.star_matrix();
  s.bottomRightCorner(db, db) = b.star_matrix();
  Vec u(d);
  u << a.unit(), b.unit();
  return make_algebra(d, std::move(p), std::move(s), u, a.name() + " + " + b.name());
}

StarAlgebra tensor(const StarAlgebra& a, const StarAlgebra& b) {
  const int da = a.dim(), db = b.dim(), d = da * db;
  std::vector<std::vector<Term>> p(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k)
      for (int j = 0; j < db; ++j)
        for (int l = 0; l < db; ++l) {
          auto& dst = p[static_cast<std::size_t>(i * db + j) * d + (k * db + l)];
          for (const auto& ta : a.product(i, k))
            for (const auto& tb : b.product(j, l)) dst.push_back({ta.k * db + tb.k, ta.c * tb.c});
        }
  Mat s = Mat::Zero(d, d);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k) {
      if (a.star_matrix()(i, k) == cplx(0.0)) continue;
      s.block(static_cast<Eigen::Index>(i) * db, static_cast<Eigen::Index>(k) * db, db, db) =
          a.star_matrix()(i, k) * b.star_matrix();
    }
  Vec u(d);
  for (int i = 0; i < da; ++i) u.segment(static_cast<Eigen::Index>(i) * db, db) = a.unit()(i) * b.unit();
  return make_algebra(d, std::move(p), std::move(s), u, a.name() + " (x) " + b.name());
}

Mat center(const StarAlgebra& a) {
  const int d = a.dim();
  if (d == 0) return Mat(0, 0);
  // The commutant of one random element contains the centre and is small;
  // the centre is then cut out of it by every basis commutator.
  std::mt19937_64 rng(0xce17e);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec r(d);
  for (int i = 0; i < d; ++i) r(i) = cplx(normal(rng), normal(rng));
  // Only a superset is needed here, so a loose LU kernel is enough.
  const Mat lr = a.left_mult(r);
  Eigen::FullPivLU<Mat> lu(lr - a.right_mult(r));
  // Eigen's threshold is relative to the largest pivot; make it absolute.
  const double floor = 1e-8 * std::max(1.0, max_abs(lr));
  const Mat z = lu.maxPivot() <= floor ? Mat(Mat::Identity(d, d)) : [&] {
    lu.setThreshold(floor / lu.maxPivot());
    return orthonormal_span(lu.kernel());
  }();
  const Eigen::Index k = z.cols();
  if (k == 0) return z;
  // Row block i: z ↦ e_i z - z e_i.
  Mat sys = Mat::Zero(static_cast<Eigen::Index>(d) * d, k);
  for (int i = 0; i < d; ++i) {
    auto block = sys.middleRows(static_cast<Eigen::Index>(i) * d, d);
    for (int l = 0; l < d; ++l) {
      for (const auto& t : a.product(i, l)) block.row(t.k) += t.c * z.row(l);
      for (const auto& t : a.product(l, i)) block.row(t.k) -= t.c * z.row(l);
    }
  }
  return z * null_space(sys);
}

WedderburnResult wedderburn(const StarAlgebra& a, std::uint64_t seed) {
  WedderburnResult r;
  r.seed = seed;
  if (a.dim() == 0) return r;
  const Mat z = center(a);
  const int k = static_cast<int>(z.cols());
  const double loose = std::max(1e-6, 1e3 * tolerance());
  std::uint64_t s = seed;
  for (int attempt = 1; attempt <= 5; ++attempt, s = s * 6364136223846793005ULL + 1442695040888963407ULL) {
    r.attempts = attempt;
    r.seed = s;
    std::mt19937_64 rng(s);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec coeff(k);
    for (int i = 0; i < k; ++i) coeff(i) = cplx(normal(rng), normal(rng));
    const Vec w = z * coeff;
    const Vec h = w + a.star(w);
    const Mat m = z.adjoint() * a.left_mult(h) * z;
    Eigen::ComplexEigenSolver<Mat> es(m, true);
    const Vec lambda = es.eigenvalues();
    double scale = 1.0, gap = INFINITY;
    for (int i = 0; i < k; ++i) scale = std::max(scale, std::abs(lambda(i)));
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) gap = std::min(gap, std::abs(lambda(i) - lambda(j)));
    if (k > 1 && gap < 1e-6 * scale) continue;
    std::vector<std::pair<int, Vec>> blocks;
    Vec sum = Vec::Zero(a.dim());
    for (int i = 0; i < k; ++i) {
      const Vec e = z * es.eigenvectors().col(i);
      const Vec e2 = a.multiply(e, e);
      const cplx c = e.dot(e2) / e.dot(e);
      if (std::abs(c) < loose) fail(ErrorCode::NonIntegerBlock, "central eigenvector is nilpotent");
      const Vec p = e / c;
      const double idem = (a.multiply(p, p) - p).cwiseAbs().maxCoeff();
      const cplx tr = a.trace(p);
      const double n = std::round(std::sqrt(std::max(0.0, tr.real())));
      if (idem > loose * std::max(1.0, p.cwiseAbs().maxCoeff()) || std::abs(tr - cplx(n * n)) > loose * std::max(1.0, n * n) ||
          n < 1)
        fail(ErrorCode::NonIntegerBlock, "block trace " + std::to_string(tr.real()));
      sum += p;
      blocks.emplace_back(static_cast<int>(n), p);
    }
    if ((sum - a.unit()).cwiseAbs().maxCoeff() > loose)
      fail(ErrorCode::NonIntegerBlock, "central idempotents do not sum to the unit");
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& b : blocks) {
      r.dims.push_back(b.first);
      r.idempotents.push_back(std::move(b.second));
    }
    int total = 0;
    for (int n : r.dims) total += n * n;
    if (total != a.dim()) fail(ErrorCode::NonIntegerBlock, "block sizes do not add up to the dimension");
    return r;
  }
  fail(ErrorCode::NonIntegerBlock, "spectral gap too small after 5 attempts");
}

namespace {

// Deterministic closure under basis multiplications and star; cubic in
// the dimension per sweep, kept as the fallback path.
Mat ideal_closure(const StarAlgebra& a, Mat span) {
  const int d = a.dim();
  for (int iter = 0; iter <= d && span.cols() > 0; ++iter) {
    const Eigen::Index r = span.cols();
    Mat all(d, r * (2 * d + 2));
    all.leftCols(r) = span;
    all.middleCols(r, r) = a.star_matrix() * span.conjugate();
    for (int i = 0; i < d; ++i) {
      all.middleCols(r * (2 + 2 * i), r) = a.left_basis(i) * span;
      all.middleCols(r * (3 + 2 * i), r) = a.right_basis(i) * span;
    }
    Mat next = orthonormal_span(all);
    if (next.cols() == r) return next;
    span = std::move(next);
  }
  return span;
}

Vec random_element(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal;
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(normal(rng), normal(rng));
  return v;
}

}  // namespace

Mat ideal_generated(const StarAlgebra& a, const std::vector<Vec>& gens) {
  const int d = a.dim();
  if (d == 0 || gens.empty()) return Mat(d, 0);
  Mat g(d, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) g.col(static_cast<Eigen::Index>(i)) = gens[i];
  const Mat seeds = orthonormal_span(g);
  if (seeds.cols() == 0) return seeds;
  // A S A is the span of x s y over random x, y and random combinations s of
  // the generators and their adjoints; rank grows until the span is reached.
  std::mt19937_64 rng(0x1dea1);
  std::normal_distribution<double> normal;
  Mat basis(d, d);
  Eigen::Index r = 0;
  const double cut = std::max(1e-7, 100.0 * tolerance());
  for (int misses = 0; misses < 3 && r < d;) {
    Vec s = Vec::Zero(d);
    for (Eigen::Index j = 0; j < seeds.cols(); ++j) {
      s += cplx(normal(rng), normal(rng)) * seeds.col(j);
      s += cplx(normal(rng), normal(rng)) * a.star(seeds.col(j));
    }
    Vec z = a.multiply(a.multiply(random_element(rng, d), s), random_element(rng, d));
    const double norm = z.norm();
    if (norm == 0.0) {
      ++misses;
      continue;
    }
    z /= norm;
    for (int pass = 0; pass < 2; ++pass) z -= basis.leftCols(r) * (basis.leftCols(r).adjoint() * z);
    const double rest = z.norm();
    if (rest < cut) {
      ++misses;
      continue;
    }
    basis.col(r++) = z / rest;
    misses = 0;
  }
  Mat result = basis.leftCols(r);
  if (!is_ideal(a, result)) result = ideal_closure(a, seeds);
  return result;
}

bool is_ideal(const StarAlgebra& a, const Mat& ideal, double* residual) {
  const int d = a.dim();
  double res = 0.0;
  if (ideal.cols() > 0 && ideal.cols() < d) {
    // Components outside the span of q* and e_j q for each basis vector q.
    const Mat comp = orthogonal_complement(ideal, d).adjoint();
    res = max_abs(comp * (a.star_matrix() * ideal.conjugate()));
    // A *-closed left ideal is two-sided, so only e_j Q is checked.
    Mat left(d, ideal.cols());
    for (int j = 0; j < d; ++j) {
      left.setZero();
      for (int i = 0; i < d; ++i)
        for (const auto& t : a.product(j, i)) left.row(t.k) += t.c * ideal.row(i);
      res = std::max(res, max_abs(comp * left));
    }
  }
  if (residual) *residual = res;
  return res < check_tolerance();
}

namespace {
/// Worst |m(e_i e_j) - m(e_i) m(e_j)| with its witness pair. Sparse columns
/// of m are multiplied pairwise; dense ones go through left-multiplication matrices.
double multiplicativity_residual(const StarAlgebra& src, const StarAlgebra& dst, const Mat& m, int* wi, int* wj) {
  const int ds = src.dim(), dd = dst.dim();
  double worst = 0.0;
  auto note = [&](double r, int i, int j) {
    if (r > worst) {
      worst = r;
      if (wi) *wi = i;
      if (wj) *wj = j;
    }
  };
  std::vector<std::vector<Term>> cols(ds);
  std::size_t nnz = 0;
  for (int j = 0; j < ds; ++j)
    for (int k = 0; k < dd; ++k)
      if (m(k, j) != cplx(0.0)) cols[j].push_back({k, m(k, j)});
  for (const auto& c : cols) nnz += c.size();
  if (nnz <= 4 * static_cast<std::size_t>(ds)) {
    Vec acc = Vec::Zero(dd);
    std::vector<int> touched;
    for (int i = 0; i < ds; ++i)
      for (int j = 0; j < ds; ++j) {
        touched.clear();
        for (const auto& t : src.product(i, j))
          for (const auto& c : cols[t.k]) {
            acc(c.k) += t.c * c.c;
            touched.push_back(c.k);
          }
        for (const auto& x : cols[i])
          for (const auto& y : cols[j])
            for (const auto& t : dst.product(x.k, y.k)) {
              acc(t.k) -= x.c * y.c * t.c;
              touched.push_back(t.k);
            }
        double r = 0.0;
        for (int n : touched) {
          r = std::max(r, std::abs(acc(n)));
          acc(n) = 0.0;
        }
        note(r, i, j);
      }
    return worst;
  }
  for (int i = 0; i < ds; ++i) {
    // column j: m(e_i e_j) - m(e_i) m(e_j)
    Mat diff = -(dst.left_mult(m.col(i)) * m);
    for (int j = 0; j < ds; ++j)
      for (const auto& t : src.product(i, j)) diff.col(j) += t.c * m.col(t.k);
    Eigen::Index r = 0, c = 0;
    const double v = ds > 0 && dd > 0 ? diff.cwiseAbs().maxCoeff(&r, &c) : 0.0;
    note(v, i, static_cast<int>(c));
  }
  return worst;
}
}  // namespace

double star_hom_residual(const StarAlgebra& src, const StarAlgebra& dst, const Mat& m) {
  double res = max_abs(m * src.unit() - dst.unit());
  res = std::max(res, max_abs(m * src.star_matrix() - dst.star_matrix() * m.conjugate()));
  res = std::max(res, multiplicativity_residual(src, dst, m, nullptr, nullptr));
  return res;
}

StarHom make_star_hom(const StarAlgebra& src, const StarAlgebra& dst, Mat m) {
  if (m.rows() != dst.dim() || m.cols() != src.dim()) fail(ErrorCode::BadShape, "hom matrix has wrong shape");
  const double scale = std::max(1.0, max_abs(m));
  const double tol = check_tolerance(scale * scale);
  if (max_abs(m * src.unit() - dst.unit()) > tol) fail(ErrorCode::NotStarHom, "not unital");
  int wi = 0, wj = 0;
  if (multiplicativity_residual(src, dst, m, &wi, &wj) > tol)
    fail(ErrorCode::NotStarHom, "not multiplicative at basis pair (" + str(wi) + "," + str(wj) + ")");
  const Mat sdiff = m * src.star_matrix() - dst.star_matrix() * m.conjugate();
  if (max_abs(sdiff) > tol) {
    Eigen::Index r, c;
    sdiff.cwiseAbs().maxCoeff(&r, &c);
    fail(ErrorCode::NotStarHom, "does not preserve star at basis element " + str(static_cast<long>(c)));
  }
  return StarHom{src, dst, std::move(m)};
}

StarHom compose(const StarHom& second, const StarHom& first) {
  if (second.src.dim() != first.dst.dim()) fail(ErrorCode::Mismatch, "composition of incompatible *-homs");
  return StarHom{first.src, second.dst, second.matrix * first.matrix};
}

QuotientAlgebra quotient_algebra(const StarAlgebra& a, const Mat& ideal) {
  const int d = a.dim();
  if (ideal.rows() != d) fail(ErrorCode::BadShape, "ideal basis has wrong length");
  QuotientAlgebra q;
  q.ideal = orthonormal_span(ideal);
  double res = 0.0;
  if (!is_ideal(a, q.ideal, &res)) fail(ErrorCode::NotIdeal, "closure residual " + std::to_string(res));
  const Mat comp = orthogonal_complement(q.ideal, d);
  const int m = static_cast<int>(comp.cols());
  q.degenerate = m == 0;
  // Prefer the classes of original basis elements as the quotient basis:
  // structure constants stay sparse when the relations are monomial.
  Mat proj = comp.adjoint();
  q.complement = comp;
  if (m > 0) {
    Eigen::ColPivHouseholderQR<Mat> qr(proj);
    const auto& r = qr.matrixR();
    if (std::abs(r(m - 1, m - 1)) >= 1e-3 * std::abs(r(0, 0))) {
      Mat lift = Mat::Zero(d, m);
      for (int j = 0; j < m; ++j) lift(qr.colsPermutation().indices()(j), j) = 1.0;
      proj = (proj * lift).partialPivLu().solve(proj);
      for (Eigen::Index i = 0; i < proj.size(); ++i)
        if (std::abs(proj(i)) < 1e-13) proj(i) = 0.0;
      q.complement = std::move(lift);
    }
  }
  std::vector<std::vector<Term>> products(static_cast<std::size_t>(m) * m);
  const double cutoff = 1e-13;
  Mat s(m, m);
  for (int i = 0; i < m; ++i) {
    const Vec li = q.complement.col(i);
    Vec col = Vec::Zero(m);
    for (int j = 0; j < m; ++j) {
      const Vec x = a.multiply(li, q.complement.col(j));
      const Vec y = proj * x;
      for (int k = 0; k < m; ++k)
        if (std::abs(y(k)) > cutoff) products[static_cast<std::size_t>(i) * m + j].push_back({k, y(k)});
    }
    s.col(i) = proj * a.star(li);
  }
  const Vec u = proj * a.unit();
  q.algebra = make_algebra(m, std::move(products), s, u, a.name() + "/I");
  q.projection = make_star_hom(a, q.algebra, proj);
  return q;
}

bool is_isomorphic(const StarAlgebra& a, const StarAlgebra& b, std::uint64_t seed) {
  if (a.dim() != b.dim()) return false;
  return wedderburn(a, seed).dims == wedderburn(b, seed).dims;
}

std::string to_string(const DimensionVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

}  // namespace xmod
