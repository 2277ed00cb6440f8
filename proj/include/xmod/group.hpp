#pragma once

#include "xmod/numerics.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace xmod {

/// Group elements are 0-based indices; index 0 is always the identity.
using Elem = int;
/// An automorphism (or any self-map) of a group, as the list of images.
using Automorphism = std::vector<Elem>;

/// A finite group given by a validated Cayley table.
///
/// Construction renumbers elements so that the identity has index 0; the
/// permutation from the caller's labels to internal indices is kept in
/// relabel(). Copies share the immutable table.
class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup();

  static constexpr Elem identity = 0;

  int order() const { return d_->n; }
  Elem mul(Elem a, Elem b) const { return d_->table[static_cast<std::size_t>(a) * d_->n + b]; }
  Elem inv(Elem a) const { return d_->inverse[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  Elem pow(Elem a, long k) const;
  int element_order(Elem a) const;
  bool is_abelian() const { return d_->abelian; }
  bool is_trivial() const { return d_->n == 1; }

  const std::string& name() const { return d_->name; }
  FiniteGroup with_name(std::string name) const;

  /// relabel()[original label] = internal index.
  const std::vector<Elem>& relabel() const { return d_->relabel; }
  std::vector<std::vector<Elem>> table() const;

  /// Same order and identical table.
  bool operator==(const FiniteGroup& other) const;

 private:
  struct Data {
    int n = 1;
    std::vector<Elem> table{0};
    std::vector<Elem> inverse{0};
    std::vector<Elem> relabel{0};
    std::string name = "1";
    bool abelian = true;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;

  friend FiniteGroup make_group(const std::vector<std::vector<Elem>>& table, std::string name);
  friend FiniteGroup group_from_flat(int n, std::vector<Elem> flat, std::string name);
};

/// Builds a group from a row-major table whose identity is already index 0.
/// No associativity check; used for tables produced by trusted constructions.
FiniteGroup group_from_flat(int n, std::vector<Elem> flat, std::string name);

/// Validates a Cayley table. Errors: BadShape, NoIdentity, NoInverse, NotAssociative.
FiniteGroup make_group(const std::vector<std::vector<Elem>>& table, std::string name = {});

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
/// Elements of a product are encoded in mixed radix, first factor most significant.
FiniteGroup direct_product(const std::vector<FiniteGroup>& factors);
/// Permutations of {0..n-1} in lexicographic order, (s*t)(x) = s(t(x)).
FiniteGroup symmetric_group(int n);

/// G ⋉ H on pairs (g,h) encoded as g*|H| + h, with
/// (g1,h1)(g2,h2) = (g1 g2, act[g2]^{-1}(h1) h2).
/// act must be a left action: act[g1 g2] = act[g1] ∘ act[g2]. Errors: NotAction.
FiniteGroup semidirect_product(const FiniteGroup& g, const FiniteGroup& h,
                               const std::vector<Automorphism>& act);
inline Elem semidirect_pair(const FiniteGroup& h, Elem g_part, Elem h_part) {
  return g_part * h.order() + h_part;
}

/// True if act is a homomorphism from g into Aut(h) (left convention).
bool is_action(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Automorphism>& act,
               std::string* why = nullptr);
bool is_automorphism(const FiniteGroup& h, const Automorphism& a);
Automorphism invert_permutation(const Automorphism& a);

/// A validated group homomorphism.
class GroupHom {
 public:
  GroupHom() = default;
  const FiniteGroup& src() const { return src_; }
  const FiniteGroup& dst() const { return dst_; }
  const std::vector<Elem>& map() const { return map_; }
  Elem operator()(Elem x) const { return map_[x]; }
  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  bool operator==(const GroupHom& o) const { return src_ == o.src_ && dst_ == o.dst_ && map_ == o.map_; }

 private:
  GroupHom(FiniteGroup src, FiniteGroup dst, std::vector<Elem> map)
      : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {}
  FiniteGroup src_;
  FiniteGroup dst_;
  std::vector<Elem> map_;

  friend GroupHom make_hom(const FiniteGroup&, const FiniteGroup&, std::vector<Elem>);
};

/// Errors: BadShape (length), NotHomomorphism (reports the offending pair).
GroupHom make_hom(const FiniteGroup& src, const FiniteGroup& dst, std::vector<Elem> map);
GroupHom identity_hom(const FiniteGroup& g);
GroupHom zero_hom(const FiniteGroup& src, const FiniteGroup& dst);
/// second ∘ first. Errors: Mismatch.
GroupHom compose(const GroupHom& second, const GroupHom& first);
/// Inverse of a bijective hom. Errors: NotHomomorphism if not bijective.
GroupHom inverse_hom(const GroupHom& h);

/// A subgroup as a sorted element list of the parent plus the induced group;
/// induced index i corresponds to parent element elements[i].
struct Subgroup {
  std::vector<Elem> elements;
  FiniteGroup group;
  GroupHom inclusion;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(Elem x) const;
  /// Induced index of a parent element; -1 when absent.
  Elem index_of(Elem x) const;
};

/// Errors: NotSubgroup.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elements);
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& generators);
Subgroup whole_subgroup(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);
/// Every subgroup of g (exhaustive, intended for small groups).
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& n);
/// Product set A·B of two subgroups.
std::vector<Elem> product_set(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

/// Coset group g/n. Cosets are numbered by their minimal element, so the
/// transversal is the minimal element of each coset.
struct Quotient {
  FiniteGroup group;
  GroupHom projection;
  std::vector<Elem> transversal;
};

/// Errors: NotNormal.
Quotient quotient(const FiniteGroup& g, const Subgroup& n);

Subgroup kernel(const GroupHom& h);
Subgroup image(const GroupHom& h);

struct ImageAndCokernel {
  Subgroup image;
  bool normal = false;
  std::optional<Quotient> cokernel;
};
ImageAndCokernel image_and_cokernel(const GroupHom& h);
/// Errors: NotNormal.
Quotient cokernel(const GroupHom& h);

/// True iff i injective, p surjective and image(i) = kernel(p).
/// Errors: Mismatch when i.dst != p.src.
bool is_extension(const GroupHom& i, const GroupHom& p);

/// Brute-force isomorphism search (small groups).
std::optional<GroupHom> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

/// Structure of a finite Abelian group: g ≅ Z/d1 × ... × Z/dk with d1 | d2 | ... | dk.
struct AbelianStructure {
  std::vector<int> factors;
  /// generators[i] has order factors[i]; they form a basis.
  std::vector<Elem> generators;
  /// coordinates[x][i] = exponent of generators[i] in x.
  std::vector<std::vector<int>> coordinates;
  /// Z/d1 × ... × Z/dk in mixed radix.
  FiniteGroup model;
  /// Explicit isomorphism model → g.
  GroupHom iso;
};

/// Errors: NotAbelian.
AbelianStructure invariant_factors(const FiniteGroup& g);

/// The Pontryagin dual of a finite Abelian group with its pairing.
///
/// Dual elements are exponent vectors b over the invariant factors, encoded in
/// mixed radix; <chi_b, x> = exp(2 pi i sum_i b_i a_i(x) / d_i) where a(x) are
/// the coordinates of x. For cyclic groups the generator is 1 and <chi_1, 1>
/// is the primitive root exp(2 pi i / n).
struct CharacterGroup {
  FiniteGroup base;
  FiniteGroup dual;
  AbelianStructure structure;
  /// pairing(chi, x), dual.order() × base.order().
  Mat pairing;

  cplx value(Elem chi, Elem x) const { return pairing(chi, x); }
  /// Index of the character with the given values on base; -1 if none.
  Elem find_character(const Vec& values, double tol) const;
};

/// Errors: NotAbelian.
CharacterGroup character_group(const FiniteGroup& g);

/// Transpose of h: <dual(chi), x> = <chi, h(x)>, as a hom dst^ → src^.
GroupHom dual_hom(const GroupHom& h, const CharacterGroup& cg_src, const CharacterGroup& cg_dst);

/// Canonical map x ↦ (chi ↦ <chi, x>) from cg.base into the dual of cg.dual.
GroupHom bidual_map(const CharacterGroup& cg, const CharacterGroup& cg_of_dual);

/// Short human description, e.g. "Z/2 x Z/6" or "nonabelian(6)".
std::string describe(const FiniteGroup& g);

}  // namespace xmod
