#include "xmod/error.hpp"
#include "xmod/group.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

using namespace xmod;

namespace {

std::vector<std::vector<int>> addition_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

// Oracle: S3 by enumerating permutations of three letters and composing them.
std::vector<std::vector<int>> s3_table(std::vector<std::vector<int>>* perms_out = nullptr) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  if (perms_out) *perms_out = perms;
  return t;
}

int sign_of(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2;
}

// Oracle: element-order census of Z/d1 x ... x Z/dk, computed from lcms.
std::map<int, int> census_of_product(const std::vector<int>& ds) {
  std::map<int, int> c;
  long total = 1;
  for (int d : ds) total *= d;
  for (long m = 0; m < total; ++m) {
    long r = m;
    long ord = 1;
    for (std::size_t i = ds.size(); i-- > 0;) {
      const long x = r % ds[i];
      r /= ds[i];
      ord = std::lcm(ord, ds[i] / std::gcd(x, static_cast<long>(ds[i])));
    }
    ++c[static_cast<int>(ord)];
  }
  return c;
}

std::map<int, int> census(const FiniteGroup& g) {
  std::map<int, int> c;
  for (Elem x = 0; x < g.order(); ++x) ++c[g.element_order(x)];
  return c;
}

void expect_group_axioms(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = 0; a < n; ++a) {
    EXPECT_EQ(g.mul(0, a), a);
    EXPECT_EQ(g.mul(a, 0), a);
    EXPECT_EQ(g.mul(a, g.inv(a)), 0);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
  }
}

std::vector<FiniteGroup> abelian_groups_up_to_8() {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= 8; ++n) out.push_back(cyclic_group(n));
  out.push_back(direct_product({cyclic_group(2), cyclic_group(2)}));
  out.push_back(direct_product({cyclic_group(2), cyclic_group(4)}));
  out.push_back(direct_product({cyclic_group(2), cyclic_group(2), cyclic_group(2)}));
  return out;
}

}  // namespace

TEST(MakeGroup, Trivial) {
  auto g = make_group({{0}});
  EXPECT_EQ(g.order(), 1);
  EXPECT_TRUE(g.is_abelian());
}

TEST(MakeGroup, CyclicFour) {
  auto g = make_group(addition_table(4));
  EXPECT_EQ(g.order(), 4);
  expect_group_axioms(g);
  EXPECT_EQ(g.element_order(1), 4);
  EXPECT_EQ(g.inv(1), 3);
}

TEST(MakeGroup, S3FromPermutations) {
  auto g = make_group(s3_table());
  EXPECT_EQ(g.order(), 6);
  EXPECT_FALSE(g.is_abelian());
  expect_group_axioms(g);
  EXPECT_TRUE(are_isomorphic(g, symmetric_group(3)));
}

TEST(MakeGroup, RenumbersIdentityToZero) {
  // Z/3 with labels shifted so that label 2 is the identity.
  std::vector<std::vector<int>> t(3, std::vector<int>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t[a][b] = (a + b + 1) % 3;  // label x means (x+1) mod 3
  auto g = make_group(t);
  EXPECT_EQ(g.relabel()[2], 0);
  expect_group_axioms(g);
}

TEST(MakeGroup, Errors) {
  try {
    make_group({{0, 1}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoInverse);
  }
  try {
    make_group({{1, 0}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoIdentity);
  }
  // Identity 0, inverses exist, but (1*1)*2 != 1*(1*2).
  std::vector<std::vector<int>> t{{0, 1, 2}, {1, 0, 0}, {2, 2, 0}};
  try {
    make_group(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::NotAssociative || e.code() == ErrorCode::NoInverse);
  }
  // Latin square with identity and inverses that is not associative (order 5 loop).
  std::vector<std::vector<int>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    make_group(loop);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAssociative);
  }
}

TEST(Hom, Examples) {
  auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  EXPECT_NO_THROW(identity_hom(z4));
  EXPECT_NO_THROW(make_hom(z4, z2, {0, 1, 0, 1}));
  try {
    make_hom(z4, z2, {1, 1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHomomorphism);
  }
}

TEST(Kernel, Examples) {
  auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  auto k = kernel(make_hom(z4, z2, {0, 1, 0, 1}));
  EXPECT_EQ(k.elements, (std::vector<Elem>{0, 2}));
  EXPECT_EQ(kernel(identity_hom(z4)).order(), 1);

  std::vector<std::vector<int>> perms;
  auto s3 = make_group(s3_table(&perms));
  std::vector<Elem> sign(6);
  std::vector<Elem> even;
  for (int i = 0; i < 6; ++i) {
    sign[s3.relabel()[i]] = sign_of(perms[i]);
    if (sign_of(perms[i]) == 0) even.push_back(s3.relabel()[i]);
  }
  std::sort(even.begin(), even.end());
  auto ks = kernel(make_hom(s3, z2, sign));
  EXPECT_EQ(ks.elements, even);
  EXPECT_TRUE(are_isomorphic(ks.group, cyclic_group(3)));
}

TEST(ImageCokernel, Examples) {
  auto z2 = cyclic_group(2), z4 = cyclic_group(4);
  auto r = image_and_cokernel(make_hom(z2, z4, {0, 2}));
  EXPECT_EQ(r.image.elements, (std::vector<Elem>{0, 2}));
  ASSERT_TRUE(r.cokernel);
  EXPECT_EQ(r.cokernel->group.order(), 2);

  auto r2 = image_and_cokernel(identity_hom(z4));
  EXPECT_EQ(r2.cokernel->group.order(), 1);

  auto s3 = symmetric_group(3);
  auto a3 = generated_subgroup(s3, {3});  // a 3-cycle in lexicographic order
  ASSERT_EQ(a3.order(), 3);
  auto r3 = image_and_cokernel(a3.inclusion);
  EXPECT_TRUE(r3.normal);
  EXPECT_EQ(r3.cokernel->group.order(), 2);

  auto transposition = generated_subgroup(s3, {1});
  auto r4 = image_and_cokernel(transposition.inclusion);
  EXPECT_FALSE(r4.normal);
  EXPECT_THROW(cokernel(transposition.inclusion), Error);
}

TEST(Quotient, Examples) {
  auto z4 = cyclic_group(4);
  auto q = quotient(z4, make_subgroup(z4, {0, 2}));
  EXPECT_TRUE(are_isomorphic(q.group, cyclic_group(2)));
  EXPECT_EQ(q.transversal, (std::vector<Elem>{0, 1}));
  auto z6 = cyclic_group(6);
  EXPECT_TRUE(are_isomorphic(quotient(z6, make_subgroup(z6, {0, 3})).group, cyclic_group(3)));
  auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
  auto qd = quotient(v4, make_subgroup(v4, {0, 3}));
  EXPECT_EQ(qd.group.order(), 2);
  // Oracle coset table: (0,1) and (1,0) lie in the same nontrivial coset.
  EXPECT_EQ(qd.projection(1), qd.projection(2));
  EXPECT_NE(qd.projection(1), qd.projection(0));
  EXPECT_TRUE(is_extension(make_subgroup(v4, {0, 3}).inclusion, qd.projection));
}

TEST(Semidirect, Examples) {
  auto z2 = cyclic_group(2), z3 = cyclic_group(3);
  std::vector<Automorphism> triv(2, Automorphism{0, 1, 2});
  auto d = semidirect_product(z2, z3, triv);
  EXPECT_TRUE(d.is_abelian());
  EXPECT_TRUE(are_isomorphic(d, cyclic_group(6)));
  std::vector<Automorphism> inversion{{0, 1, 2}, {0, 2, 1}};
  auto s = semidirect_product(z2, z3, inversion);
  EXPECT_TRUE(are_isomorphic(s, make_group(s3_table())));
  expect_group_axioms(s);
  auto z4 = cyclic_group(4);
  auto g = semidirect_product(z4, trivial_group(), std::vector<Automorphism>(4, Automorphism{0}));
  EXPECT_EQ(g, z4);
  std::vector<Automorphism> bad{{0, 1, 2}, {0, 1, 2}, {0, 2, 1}, {0, 2, 1}};
  EXPECT_THROW(semidirect_product(z4, z3, bad), Error);
}

TEST(Semidirect, MultiplicationConvention) {
  // (g1,h1)(g2,h2) = (g1 g2, c_{g2}^{-1}(h1) h2) with c the inversion action.
  auto z2 = cyclic_group(2), z3 = cyclic_group(3);
  std::vector<Automorphism> inversion{{0, 1, 2}, {0, 2, 1}};
  auto s = semidirect_product(z2, z3, inversion);
  for (int g1 = 0; g1 < 2; ++g1)
    for (int h1 = 0; h1 < 3; ++h1)
      for (int g2 = 0; g2 < 2; ++g2)
        for (int h2 = 0; h2 < 3; ++h2) {
          const int ch = g2 ? (3 - h1) % 3 : h1;
          EXPECT_EQ(s.mul(semidirect_pair(z3, g1, h1), semidirect_pair(z3, g2, h2)),
                    semidirect_pair(z3, (g1 + g2) % 2, (ch + h2) % 3));
        }
}

TEST(Extension, Examples) {
  auto z2 = cyclic_group(2), z4 = cyclic_group(4), z6 = cyclic_group(6);
  EXPECT_TRUE(is_extension(make_hom(z2, z4, {0, 2}), make_hom(z4, z2, {0, 1, 0, 1})));
  auto v4 = direct_product({z2, z2});
  EXPECT_TRUE(is_extension(make_hom(z2, v4, {0, 2}), make_hom(v4, z2, {0, 1, 0, 1})));
  EXPECT_FALSE(is_extension(make_hom(z2, z6, {0, 3}), make_hom(z6, z2, {0, 1, 0, 1, 0, 1})));
  EXPECT_THROW(is_extension(make_hom(z2, z4, {0, 2}), identity_hom(z2)), Error);
}

TEST(InvariantFactors, Examples) {
  EXPECT_EQ(invariant_factors(cyclic_group(4)).factors, (std::vector<int>{4}));
  EXPECT_EQ(invariant_factors(cyclic_group(4)).generators, (std::vector<Elem>{1}));
  auto z2 = cyclic_group(2);
  EXPECT_EQ(invariant_factors(direct_product({z2, z2})).factors, (std::vector<int>{2, 2}));
  auto g = direct_product({z2, cyclic_group(6)});
  auto s = invariant_factors(g);
  EXPECT_EQ(s.factors, (std::vector<int>{2, 6}));
  EXPECT_EQ(census(g), census_of_product(s.factors));
  EXPECT_TRUE(s.iso.is_bijective());
  EXPECT_THROW(invariant_factors(symmetric_group(3)), Error);
}

TEST(InvariantFactors, CensusOracleOnProducts) {
  const std::vector<std::vector<int>> shapes{{6}, {2, 3}, {3, 4}, {2, 2, 3}, {4, 2}, {6, 4}, {3, 3}, {2, 4, 2}};
  for (const auto& shape : shapes) {
    std::vector<FiniteGroup> f;
    for (int d : shape) f.push_back(cyclic_group(d));
    auto g = direct_product(f);
    auto s = invariant_factors(g);
    for (std::size_t i = 1; i < s.factors.size(); ++i) EXPECT_EQ(s.factors[i] % s.factors[i - 1], 0);
    EXPECT_EQ(census(g), census_of_product(s.factors));
  }
}

TEST(Characters, Examples) {
  auto t = character_group(trivial_group());
  EXPECT_EQ(t.dual.order(), 1);
  EXPECT_NEAR(std::abs(t.value(0, 0) - 1.0), 0.0, 1e-15);
  auto c2 = character_group(cyclic_group(2));
  EXPECT_NEAR(std::abs(c2.value(1, 1) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c2.value(0, 1) - 1.0), 0.0, 1e-15);
  auto c4 = character_group(cyclic_group(4));
  EXPECT_NEAR(std::abs(c4.value(1, 1) - cplx(0, 1)), 0.0, 1e-15);
}

TEST(Characters, PairingAxiomsAndBiduality) {
  for (const auto& g : abelian_groups_up_to_8()) {
    auto cg = character_group(g);
    const int n = g.order();
    ASSERT_EQ(cg.dual.order(), n);
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        if (c != d) EXPECT_GT((cg.pairing.row(c) - cg.pairing.row(d)).cwiseAbs().maxCoeff(), 1e-6);
        for (int x = 0; x < n; ++x) {
          EXPECT_NEAR(std::abs(cg.value(cg.dual.mul(c, d), x) - cg.value(c, x) * cg.value(d, x)), 0, 1e-12);
          EXPECT_NEAR(std::abs(cg.value(c, g.mul(x, d)) - cg.value(c, x) * cg.value(c, d)), 0, 1e-12);
        }
      }
    auto cgd = character_group(cg.dual);
    auto ev = bidual_map(cg, cgd);
    EXPECT_TRUE(ev.is_bijective());
    for (int x = 0; x < n; ++x)
      for (int c = 0; c < n; ++c) EXPECT_NEAR(std::abs(cgd.value(ev(x), c) - cg.value(c, x)), 0, 1e-12);
  }
}

TEST(Characters, DualHom) {
  auto z2 = cyclic_group(2), z4 = cyclic_group(4);
  auto c2 = character_group(z2), c4 = character_group(z4);
  EXPECT_EQ(dual_hom(identity_hom(z4), c4, c4).map(), identity_hom(c4.dual).map());
  EXPECT_EQ(dual_hom(zero_hom(z2, z2), c2, c2).map(), (std::vector<Elem>{0, 0}));
  auto d = dual_hom(make_hom(z2, z4, {0, 2}), c2, c4);
  EXPECT_TRUE(d.is_surjective());
  // <chi_1, 2> = -1 in Z/4, so chi_1 restricts to the sign character.
  EXPECT_EQ(d(1), 1);
}

TEST(Characters, DoubleDualOfHom) {
  auto groups = abelian_groups_up_to_8();
  for (const auto& a : groups)
    for (const auto& b : groups) {
      if (a.order() * b.order() > 32) continue;
      // All homs a -> b sending the first generator somewhere, built from invariant factors.
      auto sa = invariant_factors(a);
      std::vector<Elem> imgs(sa.generators.size(), 0);
      std::function<void(std::size_t)> loop = [&](std::size_t k) {
        if (k == imgs.size()) {
          std::vector<Elem> m(a.order());
          for (Elem x = 0; x < a.order(); ++x) {
            Elem y = 0;
            for (std::size_t i = 0; i < imgs.size(); ++i) y = b.mul(y, b.pow(imgs[i], sa.coordinates[x][i]));
            m[x] = y;
          }
          GroupHom h;
          try {
            h = make_hom(a, b, m);
          } catch (const Error&) {
            return;
          }
          auto ca = character_group(a), cb = character_group(b);
          auto dh = dual_hom(h, ca, cb);
          auto ca2 = character_group(ca.dual), cb2 = character_group(cb.dual);
          auto ddh = dual_hom(dh, cb2, ca2);
          auto eva = bidual_map(ca, ca2), evb = bidual_map(cb, cb2);
          for (Elem x = 0; x < a.order(); ++x) ASSERT_EQ(ddh(eva(x)), evb(h(x)));
          return;
        }
        for (Elem y = 0; y < b.order(); ++y) {
          imgs[k] = y;
          loop(k + 1);
        }
      };
      loop(0);
    }
}

TEST(Properties, FirstIsomorphismTheorem) {
  auto groups = abelian_groups_up_to_8();
  groups.push_back(symmetric_group(3));
  for (const auto& g : groups)
    for (const auto& n : all_subgroups(g)) {
      if (!is_normal(g, n)) continue;
      auto q = quotient(g, n);
      EXPECT_TRUE(is_extension(n.inclusion, q.projection));
      EXPECT_EQ(kernel(q.projection).order() * image(q.projection).order(), g.order());
      EXPECT_EQ(kernel(n.inclusion).order() * image(n.inclusion).order(), n.order());
    }
}

TEST(Subgroups, CountsOfSmallGroups) {
  EXPECT_EQ(all_subgroups(symmetric_group(3)).size(), 6u);
  EXPECT_EQ(all_subgroups(direct_product({cyclic_group(2), cyclic_group(2)})).size(), 5u);
  EXPECT_EQ(all_subgroups(cyclic_group(8)).size(), 4u);
}
