#pragma once

#include "xmod/fell_bundle.hpp"
#include "xmod/strict_extension.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace xmod {

/// The C1-action obtained by restricting along the inclusion of the extension.
StrictAction restrict_strict_action(const StrictAction& act, const StrictExtension& ext);

/// A strict action of the intermediate crossed module (G2, (G1 ⋉ H2)/Δ(H1))
/// on A ⋊ C1. Elements of the middle group are cosets of pairs (g1, h2).
struct IntermediateAction {
  StrictExtension ext;
  CrossedProduct base;      ///< A ⋊ C1 with its section data
  FiniteGroup pairs;        ///< G1 ⋉ H2
  Quotient middle;          ///< pairs / Δ(H1)
  StrictAction action;      ///< of Cmid on base.algebra
  double ideal_residual = 0.0;  ///< γ' applied to the ideal, outside the ideal
  /// Cmid → quotient by the G1-part, followed by the comparison to C3.
  QuotientEquivalence to_quotient;
  CrossedModuleHom quotient_to_c3;
  bool equivalent_to_c3 = false;

  const CrossedModule& Cmid() const { return action.C; }
};

/// Errors: propagates validation failures (which would indicate a bug or bad input).
IntermediateAction partial_crossed(const StrictAction& act, const StrictExtension& ext);

struct PartialCrossedCheck {
  bool ok = false;
  DimensionVector direct;   ///< A ⋊ C2
  DimensionVector iterated; ///< (A ⋊ C1) ⋊ Cmid
  bool equivalent_to_c3 = false;
  std::string detail;
};

PartialCrossedCheck check_partial_crossed(const StrictAction& act, const StrictExtension& ext);
inline bool verify_partial_crossed(const StrictAction& act, const StrictExtension& ext) {
  return check_partial_crossed(act, ext).ok;
}

/// The action θ α θ^-1, θ u transported along a *-automorphism θ of A.
StrictAction transport_action(const StrictAction& act, const Mat& theta);

/// Residual of the induced map A ⋊ C1 → A' ⋊ C1 intertwining both intermediate
/// actions, for act' = transport_action(act, theta). Zero up to rounding.
double naturality_residual(const StrictAction& act, const Mat& theta, const StrictExtension& ext);

struct DecompositionStep {
  std::string name;
  int input_dim = 0;
  int ideal_dim = 0;
  int output_dim = 0;
  DimensionVector dims;
  bool ok = true;
  std::string detail;
};

struct DecompositionReport {
  std::vector<DecompositionStep> steps;
  DimensionVector direct;
  DimensionVector result;
  std::uint64_t seed = 0;
  bool ok = false;
};

/// Fiber over the trivial character of ker ∂, crossed product by the thin
/// part, then the crossed product by the cokernel; compared with A ⋊ C.
/// Never throws for valid input; failures are recorded in the report.
DecompositionReport full_decomposition(const StrictAction& act, std::uint64_t seed = 42);

}  // namespace xmod
