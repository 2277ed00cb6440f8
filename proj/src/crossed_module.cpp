#include "xmod/crossed_module.hpp"

#include "xmod/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace xmod {

namespace {
std::string str(long v) { return std::to_string(v); }
}  // namespace

bool CrossedModule::is_two_abelian() const {
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem h = 0; h < H.order(); ++h)
      if (conj[g][h] != h) return false;
  return true;
}

CrossedModule make_crossed_module(const FiniteGroup& G, const FiniteGroup& H, const GroupHom& boundary,
                                  std::vector<Automorphism> conj, std::string name) {
  if (!(boundary.src() == H) || !(boundary.dst() == G)) fail(ErrorCode::Mismatch, "boundary must map H to G");
  std::string why;
  if (!is_action(G, H, conj, &why)) fail(ErrorCode::NotAction, why);
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem h = 0; h < H.order(); ++h)
      if (boundary(conj[g][h]) != G.conj(g, boundary(h)))
        fail(ErrorCode::Peiffer1Violation, "g=" + str(g) + ", h=" + str(h));
  for (Elem h = 0; h < H.order(); ++h)
    for (Elem k = 0; k < H.order(); ++k)
      if (conj[boundary(h)][k] != H.conj(h, k))
        fail(ErrorCode::Peiffer2Violation, "h=" + str(h) + ", k=" + str(k));
  CrossedModule c{G, H, boundary, std::move(conj), std::move(name)};
  if (c.name.empty()) c.name = describe(c);
  return c;
}

std::vector<Automorphism> trivial_action(const FiniteGroup& G, const FiniteGroup& H) {
  Automorphism id(H.order());
  std::iota(id.begin(), id.end(), 0);
  return std::vector<Automorphism>(G.order(), id);
}

std::vector<Automorphism> conjugation_action(const FiniteGroup& G, const Subgroup& n) {
  std::vector<Automorphism> act(G.order(), Automorphism(n.order()));
  for (Elem g = 0; g < G.order(); ++g)
    for (int i = 0; i < n.order(); ++i) {
      const Elem j = n.index_of(G.conj(g, n.elements[i]));
      if (j < 0) fail(ErrorCode::NotNormal, "conjugation leaves the subgroup");
      act[g][i] = j;
    }
  return act;
}

CrossedModule group_crossed_module(const FiniteGroup& G) {
  const FiniteGroup one;
  return make_crossed_module(G, one, zero_hom(one, G), trivial_action(G, one), "(" + describe(G) + ", 1)");
}

CrossedModule kernel_crossed_module(const FiniteGroup& H) {
  const FiniteGroup one;
  return make_crossed_module(one, H, zero_hom(H, one), trivial_action(one, H), "(1, " + describe(H) + ")");
}

CrossedModule normal_subgroup_crossed_module(const FiniteGroup& G, const Subgroup& n) {
  return make_crossed_module(G, n.group, n.inclusion, conjugation_action(G, n));
}

CrossedModule identity_crossed_module(const FiniteGroup& G) {
  return normal_subgroup_crossed_module(G, whole_subgroup(G));
}

CrossedModuleHom make_cm_hom(const CrossedModule& src, const CrossedModule& dst, const GroupHom& phi,
                             const GroupHom& psi) {
  if (!(phi.src() == src.G) || !(phi.dst() == dst.G)) fail(ErrorCode::Mismatch, "phi must map G1 to G2");
  if (!(psi.src() == src.H) || !(psi.dst() == dst.H)) fail(ErrorCode::Mismatch, "psi must map H1 to H2");
  for (Elem h = 0; h < src.H.order(); ++h)
    if (dst.d(psi(h)) != phi(src.d(h)))
      fail(ErrorCode::NotCrossedModuleHom, "boundary square fails at h=" + str(h));
  for (Elem g = 0; g < src.G.order(); ++g)
    for (Elem h = 0; h < src.H.order(); ++h)
      if (dst.c(phi(g), psi(h)) != psi(src.c(g, h)))
        fail(ErrorCode::NotCrossedModuleHom, "action square fails at g=" + str(g) + ", h=" + str(h));
  return CrossedModuleHom{src, dst, phi, psi};
}

CrossedModuleHom identity_cm_hom(const CrossedModule& c) {
  return make_cm_hom(c, c, identity_hom(c.G), identity_hom(c.H));
}

CrossedModuleHom compose(const CrossedModuleHom& second, const CrossedModuleHom& first) {
  return make_cm_hom(first.src, second.dst, compose(second.phi, first.phi), compose(second.psi, first.psi));
}

Quotient pi1(const CrossedModule& c) { return quotient(c.G, image(c.boundary)); }

Pi2 pi2(const CrossedModule& c) {
  Pi2 p;
  p.kernel = kernel(c.boundary);
  if (!p.kernel.group.is_abelian()) fail(ErrorCode::NotAbelian, "ker of the boundary is not Abelian");
  p.pi1 = pi1(c);
  const int nq = p.pi1.group.order();
  p.action.assign(nq, Automorphism(p.kernel.order()));
  std::vector<char> set(nq, 0);
  for (Elem g = 0; g < c.G.order(); ++g) {
    const Elem q = p.pi1.projection(g);
    for (int k = 0; k < p.kernel.order(); ++k) {
      const Elem img = p.kernel.index_of(c.c(g, p.kernel.elements[k]));
      if (img < 0) fail(ErrorCode::NotInvariant, "action leaves ker of the boundary");
      if (!set[q]) {
        p.action[q][k] = img;
      } else if (p.action[q][k] != img) {
        fail(ErrorCode::NotInvariant, "action on ker depends on the coset representative");
      }
    }
    set[q] = 1;
  }
  return p;
}

std::vector<std::vector<int>> FiniteGroupoid::orbits() const {
  std::vector<int> parent(objects);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int a = 0; a < arrows(); ++a) {
    const int s = find(source[a]), t = find(target[a]);
    if (s != t) parent[std::max(s, t)] = std::min(s, t);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(objects, -1);
  for (int x = 0; x < objects; ++x) {
    const int r = find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(x);
  }
  return out;
}

FiniteGroup FiniteGroupoid::isotropy(int obj) const {
  std::vector<int> loops{identity_arrow[obj]};
  for (int a = 0; a < arrows(); ++a)
    if (source[a] == obj && target[a] == obj && a != identity_arrow[obj]) loops.push_back(a);
  const int m = static_cast<int>(loops.size());
  std::vector<Elem> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int c = compose(loops[i], loops[j]);
      flat[static_cast<std::size_t>(i) * m + j] =
          static_cast<Elem>(std::find(loops.begin(), loops.end(), c) - loops.begin());
    }
  return group_from_flat(m, std::move(flat), "");
}

bool FiniteGroupoid::valid(std::string* why) const {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const int n = arrows();
  for (int a = 0; a < n; ++a) {
    if (compose(identity_arrow[source[a]], a) != a || compose(a, identity_arrow[target[a]]) != a)
      return bad("identity law fails at arrow " + str(a));
    if (compose(a, inverse[a]) != identity_arrow[source[a]] || compose(inverse[a], a) != identity_arrow[target[a]])
      return bad("inverse law fails at arrow " + str(a));
    for (int b = 0; b < n; ++b) {
      const int ab = compose(a, b);
      if ((target[a] == source[b]) != (ab >= 0)) return bad("composability mismatch");
      if (ab < 0) continue;
      if (source[ab] != source[a] || target[ab] != target[b]) return bad("composite has wrong endpoints");
      for (int c = 0; c < n; ++c) {
        if (source[c] != target[b]) continue;
        if (compose(ab, c) != compose(a, compose(b, c))) return bad("associativity fails");
      }
    }
  }
  return true;
}

FiniteGroupoid arrow_groupoid(const CrossedModule& c) {
  const int ng = c.G.order(), nh = c.H.order(), n = ng * nh;
  FiniteGroupoid gd;
  gd.objects = ng;
  gd.source.resize(n);
  gd.target.resize(n);
  gd.inverse.resize(n);
  gd.identity_arrow.resize(ng);
  gd.compose_table.assign(static_cast<std::size_t>(n) * n, -1);
  for (Elem g = 0; g < ng; ++g) {
    gd.identity_arrow[g] = g * nh;
    for (Elem h = 0; h < nh; ++h) {
      const int a = g * nh + h;
      gd.source[a] = g;
      gd.target[a] = c.G.mul(g, c.d(h));
      gd.inverse[a] = gd.target[a] * nh + c.H.inv(h);
    }
  }
  for (int a = 0; a < n; ++a)
    for (Elem h2 = 0; h2 < nh; ++h2) {
      const int b = gd.target[a] * nh + h2;
      gd.compose_table[static_cast<std::size_t>(a) * n + b] = gd.source[a] * nh + c.H.mul(a % nh, h2);
    }
  return gd;
}

MultiplicationFunctor multiplication_functor(const CrossedModule& c) {
  MultiplicationFunctor m;
  m.groupoid = arrow_groupoid(c);
  const auto& gd = m.groupoid;
  const int nh = c.H.order(), n = gd.arrows();
  m.arrow_map.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Elem g1 = a / nh, h1 = a % nh, g2 = b / nh, h2 = b % nh;
      const Elem h = c.H.mul(c.c(c.G.inv(g2), h1), h2);
      m.arrow_map[static_cast<std::size_t>(a) * n + b] = c.G.mul(g1, g2) * nh + h;
    }
  auto M = [&](int a, int b) { return m.arrow_map[static_cast<std::size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int f = M(a, b);
      if (gd.source[f] != c.G.mul(gd.source[a], gd.source[b]) || gd.target[f] != c.G.mul(gd.target[a], gd.target[b]))
        fail(ErrorCode::FunctorialityViolation, "endpoints at arrows " + str(a) + "," + str(b));
    }
  for (Elem x = 0; x < c.G.order(); ++x)
    for (Elem y = 0; y < c.G.order(); ++y)
      if (M(gd.identity_arrow[x], gd.identity_arrow[y]) != gd.identity_arrow[c.G.mul(x, y)])
        fail(ErrorCode::FunctorialityViolation, "identities at objects " + str(x) + "," + str(y));
  for (int a = 0; a < n; ++a)
    for (Elem ha = 0; ha < nh; ++ha) {
      const int a2 = gd.target[a] * nh + ha;
      const int aa = gd.compose(a, a2);
      for (int b = 0; b < n; ++b)
        for (Elem hb = 0; hb < nh; ++hb) {
          const int b2 = gd.target[b] * nh + hb;
          const int bb = gd.compose(b, b2);
          if (M(aa, bb) != gd.compose(M(a, b), M(a2, b2)))
            fail(ErrorCode::FunctorialityViolation, "composition at arrows " + str(a) + "," + str(b));
        }
    }
  const auto orbits = gd.orbits();
  m.orbit_of.assign(gd.objects, -1);
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (int x : orbits[o]) m.orbit_of[x] = static_cast<int>(o);
  const int no = static_cast<int>(orbits.size());
  m.orbit_table.assign(no, std::vector<int>(no, -1));
  for (Elem x = 0; x < c.G.order(); ++x)
    for (Elem y = 0; y < c.G.order(); ++y) {
      int& cell = m.orbit_table[m.orbit_of[x]][m.orbit_of[y]];
      const int o = m.orbit_of[c.G.mul(x, y)];
      if (cell >= 0 && cell != o) fail(ErrorCode::FunctorialityViolation, "orbit multiplication not well defined");
      cell = o;
    }
  return m;
}

EquivalenceCertificate equivalence_certificate(const CrossedModuleHom& f) {
  EquivalenceCertificate cert;
  const auto& s = f.src;
  const auto& t = f.dst;
  const int nh2 = t.H.order();
  std::vector<char> fibre(static_cast<std::size_t>(s.G.order()) * nh2, 0);
  long fibre_size = 0;
  for (Elem g1 = 0; g1 < s.G.order(); ++g1)
    for (Elem h2 = 0; h2 < nh2; ++h2)
      if (f.phi(g1) == t.d(h2)) {
        fibre[static_cast<std::size_t>(g1) * nh2 + h2] = 1;
        ++fibre_size;
      }
  std::vector<char> hit(fibre.size(), 0);
  bool injective = true;
  for (Elem h = 0; h < s.H.order(); ++h) {
    const std::size_t p = static_cast<std::size_t>(s.d(h)) * nh2 + f.psi(h);
    if (hit[p]) injective = false;
    hit[p] = 1;
  }
  if (!injective) cert.failures.push_back("h -> (d1 h, psi h) is not injective");
  if (fibre_size != s.H.order())
    cert.failures.push_back("fibre product has " + str(fibre_size) + " elements, H1 has " + str(s.H.order()));
  cert.fibre_bijective = injective && fibre_size == s.H.order();
  std::vector<char> onto(t.G.order(), 0);
  for (Elem g1 = 0; g1 < s.G.order(); ++g1)
    for (Elem h2 = 0; h2 < nh2; ++h2) onto[t.G.mul(f.phi(g1), t.d(h2))] = 1;
  cert.surjective = std::all_of(onto.begin(), onto.end(), [](char c) { return c != 0; });
  if (!cert.surjective) cert.failures.push_back("(g1,h2) -> phi(g1) d2(h2) is not onto G2");
  return cert;
}

Enlargement enlarge_equivalence(const CrossedModule& c, const Subgroup& g1) {
  if (static_cast<int>(product_set(c.G, g1, image(c.boundary)).size()) != c.G.order())
    fail(ErrorCode::NotSurjective, "G1 * d(H) is not all of G");
  std::vector<Elem> pre;
  for (Elem h = 0; h < c.H.order(); ++h)
    if (g1.contains(c.d(h))) pre.push_back(h);
  Enlargement e;
  e.G1 = g1;
  e.H1 = make_subgroup(c.H, pre);
  std::vector<Elem> bd(e.H1.order());
  for (int j = 0; j < e.H1.order(); ++j) bd[j] = g1.index_of(c.d(e.H1.elements[j]));
  std::vector<Automorphism> act(g1.order(), Automorphism(e.H1.order()));
  for (int i = 0; i < g1.order(); ++i)
    for (int j = 0; j < e.H1.order(); ++j) act[i][j] = e.H1.index_of(c.c(g1.elements[i], e.H1.elements[j]));
  e.small = make_crossed_module(g1.group, e.H1.group, make_hom(e.H1.group, g1.group, bd), std::move(act));
  e.hom = make_cm_hom(e.small, c, g1.inclusion, e.H1.inclusion);
  const auto cert = equivalence_certificate(e.hom);
  if (!cert.ok()) fail(ErrorCode::NotSurjective, "restriction is not an equivalence");
  return e;
}

QuotientEquivalence quotient_equivalence(const CrossedModule& c, const Subgroup& n) {
  for (Elem g = 0; g < c.G.order(); ++g)
    for (Elem x : n.elements)
      if (!n.contains(c.c(g, x))) fail(ErrorCode::NotInvariant, "c_" + str(g) + " moves " + str(x) + " out of N");
  std::vector<Elem> dn;
  for (Elem x : n.elements) dn.push_back(c.d(x));
  std::sort(dn.begin(), dn.end());
  if (std::adjacent_find(dn.begin(), dn.end()) != dn.end())
    fail(ErrorCode::NotInjectiveOnN, "boundary is not injective on N");
  QuotientEquivalence q;
  q.N = n;
  q.dN = make_subgroup(c.G, dn);
  q.qG = quotient(c.G, q.dN);
  q.qH = quotient(c.H, n);
  const int ng = q.qG.group.order(), nh = q.qH.group.order();
  std::vector<Elem> bd(nh);
  for (Elem y = 0; y < nh; ++y) bd[y] = q.qG.projection(c.d(q.qH.transversal[y]));
  std::vector<Automorphism> act(ng, Automorphism(nh));
  for (Elem x = 0; x < ng; ++x)
    for (Elem y = 0; y < nh; ++y) act[x][y] = q.qH.projection(c.c(q.qG.transversal[x], q.qH.transversal[y]));
  q.target = make_crossed_module(q.qG.group, q.qH.group, make_hom(q.qH.group, q.qG.group, bd), std::move(act));
  q.hom = make_cm_hom(c, q.target, q.qG.projection, q.qH.projection);
  if (!is_equivalence(q.hom)) fail(ErrorCode::NotInjectiveOnN, "quotient map is not an equivalence");
  return q;
}

PiComparison compare_pi(const CrossedModuleHom& f) {
  PiComparison r;
  const Pi2 a = pi2(f.src), b = pi2(f.dst);
  std::vector<Elem> m1(a.pi1.group.order());
  for (Elem q = 0; q < a.pi1.group.order(); ++q) m1[q] = b.pi1.projection(f.phi(a.pi1.transversal[q]));
  r.pi1_map = make_hom(a.pi1.group, b.pi1.group, m1);
  std::vector<Elem> m2(a.kernel.order());
  for (int k = 0; k < a.kernel.order(); ++k) m2[k] = b.kernel.index_of(f.psi(a.kernel.elements[k]));
  r.pi2_map = make_hom(a.kernel.group, b.kernel.group, m2);
  r.pi1_iso = r.pi1_map.is_bijective();
  r.pi2_iso = r.pi2_map.is_bijective();
  r.module_compatible = true;
  for (Elem q = 0; q < a.pi1.group.order(); ++q)
    for (int k = 0; k < a.kernel.order(); ++k)
      if (r.pi2_map(a.action[q][k]) != b.action[r.pi1_map(q)][r.pi2_map(k)]) r.module_compatible = false;
  return r;
}

DualCrossedModule dual_crossed_module(const CrossedModule& c) {
  if (!c.is_abelian()) fail(ErrorCode::NotAbelianCM, "dual needs an Abelian crossed module");
  DualCrossedModule d;
  d.chars_G = character_group(c.G);
  d.chars_H = character_group(c.H);
  const GroupHom db = dual_hom(c.boundary, d.chars_H, d.chars_G);
  d.dual = make_crossed_module(d.chars_H.dual, d.chars_G.dual, db, trivial_action(d.chars_H.dual, d.chars_G.dual),
                               "dual" + c.name);
  return d;
}

CrossedModuleHom dual_cm_hom(const CrossedModuleHom& f, const DualCrossedModule& d1, const DualCrossedModule& d2) {
  return make_cm_hom(d2.dual, d1.dual, dual_hom(f.psi, d1.chars_H, d2.chars_H), dual_hom(f.phi, d1.chars_G, d2.chars_G));
}

bool is_abelian_equivalence(const CrossedModuleHom& f) {
  if (!f.src.is_abelian() || !f.dst.is_abelian()) fail(ErrorCode::NotAbelianCM, "both crossed modules must be Abelian");
  const auto& s = f.src;
  const auto& t = f.dst;
  const FiniteGroup mid = direct_product({s.G, t.H});
  const int nh2 = t.H.order();
  std::vector<Elem> iota(s.H.order());
  for (Elem h = 0; h < s.H.order(); ++h) iota[h] = s.G.inv(s.d(h)) * nh2 + f.psi(h);
  std::vector<Elem> proj(mid.order());
  for (Elem g1 = 0; g1 < s.G.order(); ++g1)
    for (Elem h2 = 0; h2 < nh2; ++h2) proj[g1 * nh2 + h2] = t.G.mul(f.phi(g1), t.d(h2));
  return is_extension(make_hom(s.H, mid, iota), make_hom(mid, t.G, proj));
}

std::string describe(const CrossedModule& c) {
  return "(" + describe(c.G) + ", " + describe(c.H) + ")";
}

}  // namespace xmod
