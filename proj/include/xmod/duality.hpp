#pragma once

#include "xmod/fell_bundle.hpp"

namespace xmod {

/// The central map C[H] → C*(bundle), δ_h ↦ u_h, for a 2-Abelian crossed module.
struct CentralStructure {
  StarAlgebra algebra;
  FiniteGroup H;
  CharacterGroup chars;
  StarHom hom;
};

/// Errors: NotTwoAbelian, NotCentral.
CentralStructure central_structure(const FellBundleCM& cmb);

/// p_χ = |H|^-1 Σ conj<χ,h> δ_h, pushed into the algebra.
Vec central_idempotent(const CentralStructure& cs, Elem chi);

/// Quotient by the ideal generated by hom(δ_h) - <χ,h>·1.
QuotientAlgebra fiber_at(const CentralStructure& cs, Elem chi);

struct FiberCheck {
  bool ok = false;
  int ideal_dim = 0;
  int fiber_ideal_dim = 0;
  double residual = 0.0;
};

/// Compares the ideal generated by u_h - 1 with span{p_χ x : χ ≠ 1}.
FiberCheck crossed_product_via_fiber_check(const FellBundleCM& cmb, double tol = 1e-8);

/// An action of the arrow groupoid of the dual crossed module on B: a Ĝ-action
/// beta and a central unital map from functions on Ĥ, equivariant for
/// translation by ∂̂.
struct GroupoidAction {
  StarAlgebra B;
  CrossedModule C;  ///< the crossed module whose dual acts
  DualCrossedModule dual;
  std::vector<Mat> beta;  ///< indexed by characters of G
  StarHom struct_map;     ///< functions_on(|Ĥ|) → B
};

/// Errors: NotAbelianCM, BadShape, NotStrictAction, NotStarHom, NotCentral, EquivarianceViolation.
GroupoidAction make_groupoid_action(const StarAlgebra& B, const CrossedModule& C, std::vector<Mat> beta,
                                    const Mat& struct_map);

/// B = A ⋊ G with the dual action, struct_map(ĥ ↦ ĥ(h)) = u_h* δ_{∂h}. Errors: NotAbelianCM.
GroupoidAction forward_functor(const StrictAction& act);

/// Strict action of C on B ⋊ Ĝ: the dual G-action and U_h = struct_map(ĥ ↦ conj ĥ(h)).
StrictAction backward_functor(const GroupoidAction& ga);

/// The explicit isomorphism (A ⋊ K) ⋊ K̂ → A ⊗ M_|K| for an Abelian K, with K̂
/// acting by pairing(χ, k) on the δ_k component.
struct TakesakiTakai {
  StarAlgebra iterated;
  StarAlgebra tensor;
  StarHom map;
  DimensionVector iterated_dims;
  DimensionVector tensor_dims;
  /// max_k |T ∘ β̂_k - (α_k ⊗ Ad λ_k) ∘ T|
  double covariance_residual = 0.0;
};

TakesakiTakai takesaki_takai(const StarAlgebra& A, const FiniteGroup& K, const std::vector<Mat>& alpha,
                             const FiniteGroup& Khat, const Mat& pairing);
/// Wedderburn equality for the G-part of a strict action with Abelian G.
bool takesaki_takai_check(const StrictAction& act);

struct RoundTrip {
  bool ok = false;
  DimensionVector algebra_dims;
  DimensionVector expected_dims;
  double unitary_residual = 0.0;  ///< |T(U_h) - u_h ⊗ λ_{∂h}|
  double action_residual = 0.0;   ///< |T ∘ β̂_g - (α_g ⊗ Ad λ_g) ∘ T|
  std::string detail;
};

RoundTrip duality_roundtrip(const StrictAction& act, double tol = 1e-8);
inline bool duality_roundtrip_check(const StrictAction& act) { return duality_roundtrip(act).ok; }

struct DualOfDual {
  bool ok = false;
  DimensionVector algebra_dims;
  DimensionVector expected_dims;
  double struct_residual = 0.0;  ///< |T ∘ struct_map' - struct_map ⊗ 1|
  double action_residual = 0.0;  ///< |T ∘ β'_χ - (β_χ ⊗ Ad λ_χ) ∘ T|
  std::string detail;
};

/// Backward then forward on a groupoid action.
DualOfDual dual_of_dual(const GroupoidAction& ga, double tol = 1e-8);

}  // namespace xmod
