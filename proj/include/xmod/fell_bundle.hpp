#pragma once

#include "xmod/crossed_module.hpp"
#include "xmod/star_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xmod {

/// A Fell bundle over a finite group, stored as its total graded algebra.
///
/// Fiber g occupies basis indices [offset[g], offset[g+1]) of total; the
/// product of total is the convolution product, so total is also the
/// cross-sectional algebra.
struct FellBundle {
  FiniteGroup G;
  std::vector<int> offset;
  StarAlgebra total;
  StarAlgebra unit_fiber;
  bool saturated = false;

  int fiber_dim(Elem g) const { return offset[g + 1] - offset[g]; }
  /// Fiber containing a total basis index.
  Elem degree(int index) const;
  /// total.dim() × fiber_dim(g) inclusion.
  Mat embedding(Elem g) const;
  /// Total coordinates of a fiber element.
  Vec embed(Elem g, const Vec& a) const;
  /// Largest coefficient of x outside fiber g.
  double off_fiber(Elem g, const Vec& x) const;
};

/// products and star are over the total basis. Errors: BadShape,
/// GradingViolation, UnitFiberInvalid, NotPositive (plus algebra errors
/// from the total space).
FellBundle make_fell_bundle(const FiniteGroup& G, const std::vector<int>& fiber_dims,
                            std::vector<std::vector<Term>> products, const Mat& star, std::string name = {});

/// Bundle from an algebra with a grading of its basis; the basis is
/// reordered fiber by fiber (stable within each fiber).
FellBundle graded_bundle(const FiniteGroup& G, const StarAlgebra& a, const std::vector<Elem>& degree);

/// B ⊗ C[G] graded by the group factor; u_h = 1 gives the trivial bundle over a crossed module.
FellBundle constant_bundle(const FiniteGroup& G, const StarAlgebra& fiber);

/// A Fell bundle over a crossed module: u[h] ∈ fiber ∂(h), in total coordinates.
struct FellBundleCM {
  CrossedModule C;
  FellBundle bundle;
  std::vector<Vec> u;
};

/// Errors: Mismatch, GradingViolation, NotUnitary, NotHomomorphism, EquivarianceViolation.
FellBundleCM make_cm_bundle(const CrossedModule& C, const FellBundle& bundle, std::vector<Vec> u);
/// u_h = 1 placed in fiber ∂(h) of the constant bundle.
FellBundleCM trivial_cm_bundle(const CrossedModule& C, const StarAlgebra& fiber);

/// A strict action: α_g as dim × dim matrices, u_h as elements of A.
struct StrictAction {
  StarAlgebra A;
  CrossedModule C;
  std::vector<Mat> alpha;
  std::vector<Vec> u;
  std::string name;
};

/// Errors: BadShape, NotStrictAction (names the law and witness), NotUnitary.
StrictAction make_strict_action(const StarAlgebra& A, const CrossedModule& C, std::vector<Mat> alpha,
                                std::vector<Vec> u, std::string name = {});

/// Matrix of x ↦ v x v* on a.
Mat inner_automorphism(const StarAlgebra& a, const Vec& v);

/// α = id and u = 1.
StrictAction trivial_strict_action(const StarAlgebra& A, const CrossedModule& C);
/// On M_n: α_g = Ad(V_g) and u_h = chi[h] V_{∂(h)}, for a unitary representation V
/// of G and a character chi of H invariant under c.
StrictAction inner_strict_action(const CrossedModule& C, const std::vector<Mat>& V, const std::vector<cplx>& chi);
/// Permutation matrices of the left regular representation of G.
std::vector<Mat> regular_representation(const FiniteGroup& G);
/// Functions on L with g acting by translation through q: G → L; u = 1.
/// Needs q ∘ ∂ trivial.
StrictAction translation_action(const CrossedModule& C, const GroupHom& q);
/// A ⊗ B with α ⊗ β and u ⊗ v.
StrictAction tensor_action(const StrictAction& a, const StrictAction& b);
/// The same action precomposed with a crossed module hom C' → C.
StrictAction pullback_action(const StrictAction& act, const CrossedModuleHom& f);

/// Gauge action of (Z/n, Z/n, id, trivial) on the clock and shift algebra M_n:
/// α_k = Ad(V^{-k}), u_k = V^{-k} for the cyclic shift V.
StrictAction finite_torus_action(int n);

/// The classical crossed product of a G-action (basis e_i δ_g at g*dim + i).
StarAlgebra classical_crossed_product(const StarAlgebra& A, const FiniteGroup& G, const std::vector<Mat>& alpha);

/// Fibers A × {g}, (a,f)(b,g) = (a α_f(b), fg), (a,g)* = (α_{g^-1}(a*), g^-1),
/// and unitaries (u_h*, ∂(h)).
FellBundleCM semidirect_bundle(const StrictAction& act);

struct CrossSectional {
  StarAlgebra algebra;
  /// Per-fiber embeddings into the algebra.
  std::vector<Mat> embeddings;
};
CrossSectional cross_sectional(const FellBundle& bundle);

struct CrossedProduct {
  StarAlgebra algebra;
  StarHom projection;  ///< from the cross-sectional algebra
  Mat ideal;           ///< orthonormal basis in section coordinates
  Mat lift;            ///< right inverse of projection
  StarAlgebra sections;
  bool degenerate = false;
};

/// Quotient of the cross-sectional algebra by the ideal generated by u_h - 1.
CrossedProduct crossed_product(const FellBundleCM& cmb);

/// A representation given on the total basis: target.dim() × total.dim().
struct Representation {
  FellBundleCM bundle;
  StarAlgebra target;
  Mat map;
};

/// Errors: BadShape, NotRepresentation ("star", "multiplicative",
/// "nondegenerate", "u_h -> 1" with witness).
Representation make_representation(const FellBundleCM& cmb, const StarAlgebra& target, Mat map);
/// Projection to the crossed product, viewed as a representation.
Representation canonical_representation(const FellBundleCM& cmb);

struct Factorization {
  StarHom hom;
  int kernel_dim = 0;
  double residual = 0.0;
};

/// The unique f with f ∘ projection = rep. Errors: NoFactorization, NotUnique.
Factorization universal_factorization(const FellBundleCM& cmb, const Representation& rep);

struct DescendedBundle {
  FellBundleCM bundle;
  std::vector<Elem> transversal;
  /// Residual of the graded *-isomorphism between the original and the pull-back.
  double pullback_residual = 0.0;
};

/// Bundle over the quotient crossed module: fiber at a coset is the fiber at
/// its transversal element, with products corrected by u_n* for n ∈ N.
/// An explicit transversal (indexed by cosets) may replace the minimal one.
DescendedBundle descend_bundle(const FellBundleCM& cmb, const QuotientEquivalence& q,
                               std::optional<std::vector<Elem>> transversal = std::nullopt);

/// Fibers over the subgroup G1 and unitaries over H1.
FellBundleCM restrict_bundle(const FellBundleCM& cmb, const Enlargement& e);

}  // namespace xmod
