#pragma once

#include "xmod/group.hpp"

#include <string>
#include <vector>

namespace xmod {

/// A crossed module ∂: H → G with a left action c of G on H by automorphisms.
///
/// Convention: conj[g1 g2] = conj[g1] ∘ conj[g2]. Both Peiffer identities
/// are checked on construction.
struct CrossedModule {
  FiniteGroup G;
  FiniteGroup H;
  GroupHom boundary;
  std::vector<Automorphism> conj;
  std::string name;

  Elem d(Elem h) const { return boundary(h); }
  Elem c(Elem g, Elem h) const { return conj[g][h]; }
  /// c is trivial.
  bool is_two_abelian() const;
  /// c is trivial and G is Abelian.
  bool is_abelian() const { return is_two_abelian() && G.is_abelian(); }
  /// ∂ is bijective.
  bool is_thin() const { return boundary.is_bijective(); }
};

/// Errors: NotAction, Peiffer1Violation(g,h), Peiffer2Violation(h,k), Mismatch.
CrossedModule make_crossed_module(const FiniteGroup& G, const FiniteGroup& H, const GroupHom& boundary,
                                  std::vector<Automorphism> conj, std::string name = {});

std::vector<Automorphism> trivial_action(const FiniteGroup& G, const FiniteGroup& H);
/// Conjugation action of G on a normal subgroup (in induced indices).
std::vector<Automorphism> conjugation_action(const FiniteGroup& G, const Subgroup& n);

/// (G, 1) with zero maps.
CrossedModule group_crossed_module(const FiniteGroup& G);
/// (1, H) for Abelian H.
CrossedModule kernel_crossed_module(const FiniteGroup& H);
/// (G, N, inclusion, conjugation) for a normal subgroup N.
CrossedModule normal_subgroup_crossed_module(const FiniteGroup& G, const Subgroup& n);
/// (G, G, id, conjugation).
CrossedModule identity_crossed_module(const FiniteGroup& G);

struct CrossedModuleHom {
  CrossedModule src;
  CrossedModule dst;
  GroupHom phi;  ///< on G
  GroupHom psi;  ///< on H
};

/// Errors: Mismatch, NotCrossedModuleHom (names the violated identity and witness).
CrossedModuleHom make_cm_hom(const CrossedModule& src, const CrossedModule& dst, const GroupHom& phi,
                             const GroupHom& psi);
CrossedModuleHom identity_cm_hom(const CrossedModule& c);
CrossedModuleHom compose(const CrossedModuleHom& second, const CrossedModuleHom& first);

/// π1 = G/∂(H) with its projection.
Quotient pi1(const CrossedModule& c);

/// π2 = ker ∂ with the induced π1-action.
struct Pi2 {
  Subgroup kernel;
  Quotient pi1;
  /// action[q] is an automorphism of kernel.group, q an element of pi1.group.
  std::vector<Automorphism> action;
};

/// Asserts that ker ∂ is Abelian and that the action is independent of
/// coset representatives; a failure means the input was not a crossed module.
Pi2 pi2(const CrossedModule& c);

/// Finite groupoid given by arrows, endpoints and a partial composition table.
struct FiniteGroupoid {
  int objects = 0;
  std::vector<int> source;
  std::vector<int> target;
  /// compose_table[a * n + b] = "a then b" when target(a) = source(b), else -1.
  std::vector<int> compose_table;
  std::vector<int> identity_arrow;
  std::vector<int> inverse;

  int arrows() const { return static_cast<int>(source.size()); }
  int compose(int first, int second) const {
    return compose_table[static_cast<std::size_t>(first) * arrows() + second];
  }
  /// Connected components, each a sorted object list, ordered by least object.
  std::vector<std::vector<int>> orbits() const;
  /// Isotropy group at an object (arrows obj → obj under composition).
  FiniteGroup isotropy(int obj) const;
  /// Category and groupoid axioms, exhaustively.
  bool valid(std::string* why = nullptr) const;
};

/// Objects G, arrows (g,h) encoded as g*|H| + h with g → g∂(h);
/// (g,h1) then (g∂(h1),h2) is (g,h1 h2).
FiniteGroupoid arrow_groupoid(const CrossedModule& c);

/// The multiplication functor on the arrow groupoid,
/// ((g1,h1),(g2,h2)) ↦ (g1 g2, c_{g2}^{-1}(h1) h2).
struct MultiplicationFunctor {
  FiniteGroupoid groupoid;
  /// arrow_map[a * n + b] for arrows a, b.
  std::vector<int> arrow_map;
  /// Multiplication induced on orbits (indexed like groupoid.orbits()).
  std::vector<std::vector<int>> orbit_table;
  /// Orbit index of each object.
  std::vector<int> orbit_of;
};

/// Verifies functoriality exhaustively. Errors: FunctorialityViolation.
MultiplicationFunctor multiplication_functor(const CrossedModule& c);

struct EquivalenceCertificate {
  bool fibre_bijective = false;
  bool surjective = false;
  std::vector<std::string> failures;
  bool ok() const { return fibre_bijective && surjective; }
};

/// Checks that h ↦ (∂1(h), ψ(h)) is a bijection onto G1 ×_{G2} H2 and that
/// (g1,h2) ↦ φ(g1)∂2(h2) is onto G2.
EquivalenceCertificate equivalence_certificate(const CrossedModuleHom& f);
inline bool is_equivalence(const CrossedModuleHom& f) { return equivalence_certificate(f).ok(); }

struct Enlargement {
  CrossedModule small;
  CrossedModuleHom hom;  ///< small → original
  Subgroup G1;
  Subgroup H1;           ///< ∂^{-1}(G1)
};

/// Errors: NotSurjective when G1·∂(H) ≠ G.
Enlargement enlarge_equivalence(const CrossedModule& c, const Subgroup& g1);

struct QuotientEquivalence {
  CrossedModule target;
  CrossedModuleHom hom;  ///< original → target
  Subgroup N;
  Subgroup dN;           ///< ∂(N) ⊆ G
  Quotient qG;
  Quotient qH;
};

/// Errors: NotInvariant, NotInjectiveOnN.
QuotientEquivalence quotient_equivalence(const CrossedModule& c, const Subgroup& n);

/// Induced maps on π1 and π2 for a hom, and whether they are isomorphisms
/// of groups and of π1-modules.
struct PiComparison {
  GroupHom pi1_map;
  GroupHom pi2_map;
  bool pi1_iso = false;
  bool pi2_iso = false;
  bool module_compatible = false;
  bool ok() const { return pi1_iso && pi2_iso && module_compatible; }
};
PiComparison compare_pi(const CrossedModuleHom& f);

/// Dual of an Abelian crossed module: (Ĥ, Ĝ, transpose of ∂, trivial).
struct DualCrossedModule {
  CrossedModule dual;
  CharacterGroup chars_G;
  CharacterGroup chars_H;
};
/// Errors: NotAbelianCM.
DualCrossedModule dual_crossed_module(const CrossedModule& c);
/// Dual of f: C1 → C2 as a hom dual(C2) → dual(C1).
CrossedModuleHom dual_cm_hom(const CrossedModuleHom& f, const DualCrossedModule& d1, const DualCrossedModule& d2);

/// H1 → G1 × H2 → G2 with h ↦ (∂1(h)^{-1}, ψ(h)) and (g1,h2) ↦ φ(g1)∂2(h2)
/// is an extension of Abelian groups. Errors: NotAbelianCM.
bool is_abelian_equivalence(const CrossedModuleHom& f);

/// One-line summary, e.g. "(Z/4, Z/2)".
std::string describe(const CrossedModule& c);

}  // namespace xmod
