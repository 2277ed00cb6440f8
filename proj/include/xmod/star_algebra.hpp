#pragma once

#include "xmod/group.hpp"
#include "xmod/numerics.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace xmod {

/// One structure constant: coefficient c of basis element k.
struct Term {
  int k;
  cplx c;
};

/// A finite-dimensional complex *-algebra given by sparse structure constants.
///
/// e_i e_j = Σ_k c_ijk e_k. The involution is conjugate-linear:
/// star(x) = S · conj(x), so column j of S is e_j*. A zero-dimensional
/// algebra is allowed and flagged by degenerate().
class StarAlgebra {
 public:
  /// The zero algebra.
  StarAlgebra();

  int dim() const { return d_->dim; }
  bool degenerate() const { return d_->dim == 0; }
  const std::string& name() const { return d_->name; }
  StarAlgebra with_name(std::string name) const;

  const std::vector<Term>& product(int i, int j) const {
    return d_->products[static_cast<std::size_t>(i) * d_->dim + j];
  }
  const Mat& star_matrix() const { return d_->star; }
  const Vec& unit() const { return d_->unit; }

  Vec multiply(const Vec& x, const Vec& y) const;
  Vec star(const Vec& x) const { return d_->star * x.conjugate(); }
  /// Matrix of x ↦ a x.
  Mat left_mult(const Vec& a) const;
  /// Matrix of x ↦ x a.
  Mat right_mult(const Vec& a) const;
  Mat left_basis(int i) const { return left_mult(unit_vector(dim(), i)); }
  Mat right_basis(int i) const { return right_mult(unit_vector(dim(), i)); }
  /// t with τ(x) = t·x, τ(x) = trace of x ↦ x acting on the left.
  const Vec& trace_functional() const { return d_->trace; }
  cplx trace(const Vec& x) const { return d_->trace.transpose() * x; }
  /// Mean number of terms per basis product.
  double density() const;

 private:
  struct Data {
    int dim = 0;
    std::vector<std::vector<Term>> products;
    Mat star;
    Vec unit;
    Vec trace;
    std::string name = "0";
  };
  explicit StarAlgebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;

  friend StarAlgebra make_algebra(int, std::vector<std::vector<Term>>, Mat, std::optional<Vec>, std::string);
};

/// Validates associativity, the involution, the unit (solved for when
/// omitted) and C*-validity: the form τ(a* b) must be positive definite.
/// Errors: BadShape, NotAssociative, BadInvolution, NoUnit, NotCStar.
StarAlgebra make_algebra(int dim, std::vector<std::vector<Term>> products, Mat star,
                         std::optional<Vec> unit = std::nullopt, std::string name = {});

/// Builds products from dense left multiplication matrices: column j of
/// left[i] holds the coefficients of e_i e_j. Entries below cutoff are dropped.
std::vector<std::vector<Term>> products_from_left(const std::vector<Mat>& left, double cutoff = 1e-14);

/// Number of algebras that passed make_algebra since process start.
std::uint64_t validated_algebra_count();

StarAlgebra complex_numbers();
/// M_n with matrix units E_ab at index a*n + b.
StarAlgebra matrix_algebra(int n);
/// Functions on n points with pointwise operations.
StarAlgebra functions_on(int n);
/// Basis δ_g, δ_g δ_h = δ_{gh}, δ_g* = δ_{g^-1}.
StarAlgebra group_algebra(const FiniteGroup& g);
StarAlgebra direct_sum(const StarAlgebra& a, const StarAlgebra& b);
/// Basis a_i ⊗ b_j at index i*dim(b) + j.
StarAlgebra tensor(const StarAlgebra& a, const StarAlgebra& b);

/// Orthonormal basis (columns) of the center.
Mat center(const StarAlgebra& a);

using DimensionVector = std::vector<int>;

struct WedderburnResult {
  DimensionVector dims;
  /// Minimal central idempotents, ordered like dims.
  std::vector<Vec> idempotents;
  std::uint64_t seed = 0;
  int attempts = 0;
};

/// Minimal central idempotents from the spectrum of a seeded random
/// Hermitian central element; block sizes from τ(p) = n². Retries with a
/// new seed up to 5 times on a small spectral gap. Errors: NonIntegerBlock.
WedderburnResult wedderburn(const StarAlgebra& a, std::uint64_t seed = 42);

/// Smallest subspace containing gens closed under left and right
/// multiplication by basis elements and under star (orthonormal columns).
Mat ideal_generated(const StarAlgebra& a, const std::vector<Vec>& gens);

/// True when span(ideal) is a *-closed two-sided ideal; residual returned.
bool is_ideal(const StarAlgebra& a, const Mat& ideal, double* residual = nullptr);

/// A validated *-homomorphism; matrix is dim(dst) × dim(src).
struct StarHom {
  StarAlgebra src;
  StarAlgebra dst;
  Mat matrix;

  Vec operator()(const Vec& x) const { return matrix * x; }
};

/// Errors: BadShape, NotStarHom (names the failing law and witness pair).
StarHom make_star_hom(const StarAlgebra& src, const StarAlgebra& dst, Mat matrix);
/// Residual of the multiplicative, star and unit laws (no throw).
double star_hom_residual(const StarAlgebra& src, const StarAlgebra& dst, const Mat& matrix);
StarHom compose(const StarHom& second, const StarHom& first);

struct QuotientAlgebra {
  StarAlgebra algebra;
  StarHom projection;
  /// Orthonormal basis of the ideal in the original coordinates.
  Mat ideal;
  /// Lift of the quotient basis: projection * complement = 1. Columns are
  /// original basis vectors when that choice is well conditioned, otherwise
  /// an orthonormal basis of the complement of the ideal.
  Mat complement;
  bool degenerate = false;
};

/// Quotient on the orthogonal complement of the ideal. Errors: NotIdeal.
QuotientAlgebra quotient_algebra(const StarAlgebra& a, const Mat& ideal);

/// Equal dimension vectors.
bool is_isomorphic(const StarAlgebra& a, const StarAlgebra& b, std::uint64_t seed = 42);

/// Largest associativity and involution residuals, checked over all basis triples.
struct AxiomReport {
  double associativity = 0.0;
  double involution = 0.0;
  double unit = 0.0;
  double min_trace_eigenvalue = 0.0;
};
AxiomReport axiom_report(const StarAlgebra& a);

std::string to_string(const DimensionVector& v);

}  // namespace xmod
