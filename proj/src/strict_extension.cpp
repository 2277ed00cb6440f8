#include "xmod/strict_extension.hpp"

#include "xmod/error.hpp"

namespace xmod {

namespace {

bool same(const CrossedModule& a, const CrossedModule& b) {
  return a.G == b.G && a.H == b.H && a.boundary.map() == b.boundary.map() && a.conj == b.conj;
}

CrossedModule trivial_crossed_module() { return group_crossed_module(FiniteGroup()); }

}  // namespace

StrictExtension make_strict_extension(const CrossedModule& c1, const CrossedModule& c2, const CrossedModule& c3,
                                      const CrossedModuleHom& incl, const CrossedModuleHom& proj) {
  if (!same(incl.src, c1) || !same(incl.dst, c2) || !same(proj.src, c2) || !same(proj.dst, c3))
    fail(ErrorCode::Mismatch, "homs do not connect the given crossed modules");
  if (!is_extension(incl.psi, proj.psi)) fail(ErrorCode::NotExtension, "H-level sequence");
  if (!is_extension(incl.phi, proj.phi)) fail(ErrorCode::NotExtension, "G-level sequence");
  return StrictExtension{c1, c2, c3, incl, proj};
}

StrictExtension kernel_extension(const CrossedModule& c) {
  const FiniteGroup one;
  const Subgroup k = kernel(c.boundary);
  const CrossedModule c1 = kernel_crossed_module(k.group);
  const Quotient q = quotient(c.H, k);
  const int nq = q.group.order();
  std::vector<Elem> bd(nq);
  for (Elem y = 0; y < nq; ++y) bd[y] = c.d(q.transversal[y]);
  std::vector<Automorphism> act(c.G.order(), Automorphism(nq));
  for (Elem g = 0; g < c.G.order(); ++g)
    for (Elem y = 0; y < nq; ++y) act[g][y] = q.projection(c.c(g, q.transversal[y]));
  const CrossedModule c3 = make_crossed_module(c.G, q.group, make_hom(q.group, c.G, bd), std::move(act));
  const auto incl = make_cm_hom(c1, c, zero_hom(one, c.G), k.inclusion);
  const auto proj = make_cm_hom(c, c3, identity_hom(c.G), q.projection);
  return make_strict_extension(c1, c, c3, incl, proj);
}

StrictExtension image_extension(const CrossedModule& c) {
  const FiniteGroup one;
  const Subgroup im = image(c.boundary);
  std::vector<Elem> bd(c.H.order());
  for (Elem h = 0; h < c.H.order(); ++h) bd[h] = im.index_of(c.d(h));
  std::vector<Automorphism> act(im.order());
  for (int i = 0; i < im.order(); ++i) act[i] = c.conj[im.elements[i]];
  const CrossedModule c1 = make_crossed_module(im.group, c.H, make_hom(c.H, im.group, bd), std::move(act));
  const Quotient q = quotient(c.G, im);
  const CrossedModule c3 = group_crossed_module(q.group);
  const auto incl = make_cm_hom(c1, c, im.inclusion, identity_hom(c.H));
  const auto proj = make_cm_hom(c, c3, q.projection, zero_hom(c.H, one));
  return make_strict_extension(c1, c, c3, incl, proj);
}

StrictExtension semidirect_extension(const CrossedModule& c) {
  const FiniteGroup one;
  const FiniteGroup p = semidirect_product(c.G, c.H, c.conj);
  const int nh = c.H.order();
  std::vector<Elem> collapse(p.order());
  for (Elem g = 0; g < c.G.order(); ++g)
    for (Elem h = 0; h < nh; ++h) collapse[semidirect_pair(c.H, g, h)] = c.G.mul(g, c.d(h));
  const GroupHom to_g = make_hom(p, c.G, collapse);
  std::vector<Elem> bd(nh);
  for (Elem h = 0; h < nh; ++h) bd[h] = semidirect_pair(c.H, 0, h);
  std::vector<Automorphism> act(p.order());
  for (Elem x = 0; x < p.order(); ++x) act[x] = c.conj[collapse[x]];
  const CrossedModule c2 = make_crossed_module(p, c.H, make_hom(c.H, p, bd), std::move(act));
  const CrossedModule c1 = group_crossed_module(c.H);
  std::vector<Elem> embed(nh);
  for (Elem h = 0; h < nh; ++h) embed[h] = semidirect_pair(c.H, c.d(h), c.H.inv(h));
  const auto incl = make_cm_hom(c1, c2, make_hom(c.H, p, embed), zero_hom(one, c.H));
  const auto proj = make_cm_hom(c2, c, to_g, identity_hom(c.H));
  return make_strict_extension(c1, c2, c, incl, proj);
}

StrictExtension trivial_extension(const CrossedModule& c) {
  const CrossedModule t = trivial_crossed_module();
  const auto incl = make_cm_hom(t, c, zero_hom(t.G, c.G), zero_hom(t.H, c.H));
  return make_strict_extension(t, c, c, incl, identity_cm_hom(c));
}

Decomposition decompose(const CrossedModule& c) {
  Decomposition d;
  d.kernel_ext = kernel_extension(c);
  d.image_ext = image_extension(d.kernel_ext.C3);
  d.C1 = d.kernel_ext.C1;
  d.C2 = d.kernel_ext.C3;
  d.C3 = d.image_ext.C1;
  d.C4 = d.image_ext.C3;
  return d;
}

}  // namespace xmod
