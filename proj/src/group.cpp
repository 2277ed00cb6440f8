#include "xmod/group.hpp"

#include "xmod/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace xmod {

namespace {

std::string str(long v) { return std::to_string(v); }

std::vector<Elem> compute_inverses(int n, const std::vector<Elem>& flat) {
  std::vector<Elem> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (flat[static_cast<std::size_t>(a) * n + b] == 0) {
        inv[a] = b;
        break;
      }
    }
  }
  return inv;
}

}  // namespace

FiniteGroup::FiniteGroup() : d_(std::make_shared<const Data>()) {}

FiniteGroup group_from_flat(int n, std::vector<Elem> flat, std::string name) {
  auto d = std::make_shared<FiniteGroup::Data>();
  d->n = n;
  d->inverse = compute_inverses(n, flat);
  d->abelian = true;
  for (int a = 0; a < n && d->abelian; ++a)
    for (int b = a + 1; b < n; ++b)
      if (flat[static_cast<std::size_t>(a) * n + b] != flat[static_cast<std::size_t>(b) * n + a]) {
        d->abelian = false;
        break;
      }
  d->table = std::move(flat);
  d->relabel.resize(n);
  std::iota(d->relabel.begin(), d->relabel.end(), 0);
  d->name = name.empty() ? "G" + str(n) : std::move(name);
  return FiniteGroup(std::move(d));
}

FiniteGroup make_group(const std::vector<std::vector<Elem>>& table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(ErrorCode::BadShape, "empty table");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      fail(ErrorCode::BadShape, "row " + str(i) + " has length " + str(static_cast<long>(table[i].size())));
    for (int j = 0; j < n; ++j)
      if (table[i][j] < 0 || table[i][j] >= n)
        fail(ErrorCode::BadShape, "entry (" + str(i) + "," + str(j) + ") out of range");
  }
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = table[c][j] == j && table[j][c] == j;
    if (ok) e = c;
  }
  if (e < 0) fail(ErrorCode::NoIdentity, "no two-sided identity");
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n && !found; ++b) found = table[a][b] == e && table[b][a] == e;
    if (!found) fail(ErrorCode::NoInverse, "element " + str(a) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          fail(ErrorCode::NotAssociative,
               "triple (" + str(a) + "," + str(b) + "," + str(c) + ")");
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::swap(p[0], p[e]);
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) flat[static_cast<std::size_t>(p[a]) * n + p[b]] = p[table[a][b]];
  FiniteGroup g = group_from_flat(n, std::move(flat), std::move(name));
  auto d = std::make_shared<FiniteGroup::Data>(*g.d_);
  d->relabel = p;
  return FiniteGroup(std::move(d));
}

Elem FiniteGroup::pow(Elem a, long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem r = identity;
  Elem b = a;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

int FiniteGroup::element_order(Elem a) const {
  int k = 1;
  Elem x = a;
  while (x != identity) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

FiniteGroup FiniteGroup::with_name(std::string name) const {
  auto d = std::make_shared<Data>(*d_);
  d->name = std::move(name);
  return FiniteGroup(std::move(d));
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  const int n = order();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = mul(a, b);
  return t;
}

bool FiniteGroup::operator==(const FiniteGroup& other) const {
  return d_ == other.d_ || (d_->n == other.d_->n && d_->table == other.d_->table);
}

FiniteGroup trivial_group() { return FiniteGroup(); }

FiniteGroup cyclic_group(int n) {
  if (n <= 0) fail(ErrorCode::BadShape, "cyclic group order must be positive");
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) flat[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return group_from_flat(n, std::move(flat), n == 1 ? "1" : "Z/" + str(n));
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors) {
  if (factors.empty()) return trivial_group();
  if (factors.size() == 1) return factors[0];
  long total = 1;
  for (const auto& f : factors) total *= f.order();
  const int n = static_cast<int>(total);
  const std::size_t k = factors.size();
  auto decode = [&](int x, std::vector<int>& out) {
    for (std::size_t i = k; i-- > 0;) {
      out[i] = x % factors[i].order();
      x /= factors[i].order();
    }
  };
  std::vector<int> da(k), db(k);
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    decode(a, da);
    for (int b = 0; b < n; ++b) {
      decode(b, db);
      int r = 0;
      for (std::size_t i = 0; i < k; ++i) r = r * factors[i].order() + factors[i].mul(da[i], db[i]);
      flat[static_cast<std::size_t>(a) * n + b] = r;
    }
  }
  std::string name;
  for (std::size_t i = 0; i < k; ++i) name += (i ? " x " : "") + factors[i].name();
  return group_from_flat(n, std::move(flat), name);
}

FiniteGroup symmetric_group(int n) {
  if (n < 0) fail(ErrorCode::BadShape, "negative degree");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const int m = static_cast<int>(perms.size());
  std::vector<Elem> flat(static_cast<std::size_t>(m) * m);
  std::vector<int> c(n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      flat[static_cast<std::size_t>(a) * m + b] = index[c];
    }
  return group_from_flat(m, std::move(flat), "S" + str(n));
}

bool is_automorphism(const FiniteGroup& h, const Automorphism& a) {
  const int n = h.order();
  if (static_cast<int>(a.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (Elem x : a) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a[h.mul(x, y)] != h.mul(a[x], a[y])) return false;
  return true;
}

Automorphism invert_permutation(const Automorphism& a) {
  Automorphism r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<Elem>(i);
  return r;
}

bool is_action(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Automorphism>& act,
               std::string* why) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (static_cast<int>(act.size()) != g.order()) return bad("action has wrong length");
  for (int x = 0; x < g.order(); ++x)
    if (!is_automorphism(h, act[x])) return bad("image of " + str(x) + " is not an automorphism");
  for (int y = 0; y < h.order(); ++y)
    if (act[0][y] != y) return bad("identity acts nontrivially");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      const auto& ab = act[g.mul(a, b)];
      for (int y = 0; y < h.order(); ++y)
        if (ab[y] != act[a][act[b][y]])
          return bad("c(" + str(a) + "*" + str(b) + ") != c(" + str(a) + ")c(" + str(b) + ")");
    }
  return true;
}

FiniteGroup semidirect_product(const FiniteGroup& g, const FiniteGroup& h,
                               const std::vector<Automorphism>& act) {
  std::string why;
  if (!is_action(g, h, act, &why)) fail(ErrorCode::NotAction, why);
  const int ng = g.order(), nh = h.order(), n = ng * nh;
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    const int g1 = a / nh, h1 = a % nh;
    for (int b = 0; b < n; ++b) {
      const int g2 = b / nh, h2 = b % nh;
      const Elem hh = h.mul(act[g.inv(g2)][h1], h2);
      flat[static_cast<std::size_t>(a) * n + b] = g.mul(g1, g2) * nh + hh;
    }
  }
  return group_from_flat(n, std::move(flat), g.name() + " x| " + h.name());
}

bool GroupHom::is_injective() const {
  std::vector<char> seen(dst_.order(), 0);
  for (Elem x : map_) {
    if (seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

bool GroupHom::is_surjective() const {
  std::vector<char> seen(dst_.order(), 0);
  for (Elem x : map_) seen[x] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

GroupHom make_hom(const FiniteGroup& src, const FiniteGroup& dst, std::vector<Elem> map) {
  if (static_cast<int>(map.size()) != src.order())
    fail(ErrorCode::BadShape, "map has length " + str(static_cast<long>(map.size())) + ", expected " +
                                  str(src.order()));
  for (Elem x : map)
    if (x < 0 || x >= dst.order()) fail(ErrorCode::BadShape, "map entry out of range");
  for (int a = 0; a < src.order(); ++a)
    for (int b = 0; b < src.order(); ++b)
      if (map[src.mul(a, b)] != dst.mul(map[a], map[b]))
        fail(ErrorCode::NotHomomorphism, "f(" + str(a) + "*" + str(b) + ") != f(" + str(a) + ")*f(" + str(b) + ")");
  return GroupHom(src, dst, std::move(map));
}

GroupHom identity_hom(const FiniteGroup& g) {
  std::vector<Elem> m(g.order());
  std::iota(m.begin(), m.end(), 0);
  return make_hom(g, g, std::move(m));
}

GroupHom zero_hom(const FiniteGroup& src, const FiniteGroup& dst) {
  return make_hom(src, dst, std::vector<Elem>(src.order(), 0));
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  if (!(first.dst() == second.src())) fail(ErrorCode::Mismatch, "composition of incompatible homs");
  std::vector<Elem> m(first.src().order());
  for (int x = 0; x < first.src().order(); ++x) m[x] = second(first(x));
  return make_hom(first.src(), second.dst(), std::move(m));
}

GroupHom inverse_hom(const GroupHom& h) {
  if (!h.is_bijective()) fail(ErrorCode::NotHomomorphism, "inverse of a non-bijective hom");
  return make_hom(h.dst(), h.src(), invert_permutation(h.map()));
}

bool Subgroup::contains(Elem x) const { return std::binary_search(elements.begin(), elements.end(), x); }

Elem Subgroup::index_of(Elem x) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), x);
  if (it == elements.end() || *it != x) return -1;
  return static_cast<Elem>(it - elements.begin());
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements[0] != 0) fail(ErrorCode::NotSubgroup, "identity missing");
  for (Elem x : elements)
    if (x < 0 || x >= g.order()) fail(ErrorCode::NotSubgroup, "element out of range");
  Subgroup s;
  s.elements = std::move(elements);
  const int m = s.order();
  std::vector<Elem> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Elem k = s.index_of(g.mul(s.elements[i], s.elements[j]));
      if (k < 0)
        fail(ErrorCode::NotSubgroup,
             "not closed: " + str(s.elements[i]) + "*" + str(s.elements[j]));
      flat[static_cast<std::size_t>(i) * m + j] = k;
    }
  s.group = group_from_flat(m, std::move(flat), m == g.order() ? g.name() : "");
  s.inclusion = make_hom(s.group, g, s.elements);
  return s;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& generators) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> queue{0};
  in[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (Elem s : generators) {
      const Elem y = g.mul(queue[q], s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  return make_subgroup(g, queue);
}

Subgroup whole_subgroup(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return make_subgroup(g, all);
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return make_subgroup(g, {0}); }

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<Elem>> found;
  std::vector<std::vector<Elem>> frontier;
  auto add = [&](std::vector<Elem> s) {
    if (found.insert(s).second) frontier.push_back(std::move(s));
  };
  add({0});
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const auto base = frontier[i];
    for (Elem x = 0; x < g.order(); ++x) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      auto gens = base;
      gens.push_back(x);
      add(generated_subgroup(g, gens).elements);
    }
  }
  std::vector<Subgroup> out;
  for (const auto& s : found) out.push_back(make_subgroup(g, s));
  std::stable_sort(out.begin(), out.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  return out;
}

bool is_normal(const FiniteGroup& g, const Subgroup& n) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y : n.elements)
      if (!n.contains(g.conj(x, y))) return false;
  return true;
}

std::vector<Elem> product_set(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<char> in(g.order(), 0);
  for (Elem x : a.elements)
    for (Elem y : b.elements) in[g.mul(x, y)] = 1;
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) fail(ErrorCode::NotNormal, "subgroup of order " + str(n.order()) + " is not normal");
  const int ng = g.order();
  std::vector<Elem> coset(ng, -1);
  std::vector<Elem> transversal;
  for (Elem x = 0; x < ng; ++x) {
    if (coset[x] >= 0) continue;
    const Elem id = static_cast<Elem>(transversal.size());
    transversal.push_back(x);
    for (Elem y : n.elements) coset[g.mul(x, y)] = id;
  }
  const int m = static_cast<int>(transversal.size());
  std::vector<Elem> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) flat[static_cast<std::size_t>(i) * m + j] = coset[g.mul(transversal[i], transversal[j])];
  Quotient q;
  q.group = group_from_flat(m, std::move(flat), "");
  q.group = q.group.with_name(describe(q.group));
  q.projection = make_hom(g, q.group, coset);
  q.transversal = std::move(transversal);
  return q;
}

Subgroup kernel(const GroupHom& h) {
  std::vector<Elem> el;
  for (Elem x = 0; x < h.src().order(); ++x)
    if (h(x) == 0) el.push_back(x);
  return make_subgroup(h.src(), el);
}

Subgroup image(const GroupHom& h) { return make_subgroup(h.dst(), h.map()); }

ImageAndCokernel image_and_cokernel(const GroupHom& h) {
  ImageAndCokernel r;
  r.image = image(h);
  r.normal = is_normal(h.dst(), r.image);
  if (r.normal) r.cokernel = quotient(h.dst(), r.image);
  return r;
}

Quotient cokernel(const GroupHom& h) { return quotient(h.dst(), image(h)); }

bool is_extension(const GroupHom& i, const GroupHom& p) {
  if (!(i.dst() == p.src())) fail(ErrorCode::Mismatch, "middle groups differ");
  if (!i.is_injective() || !p.is_surjective()) return false;
  return image(i).elements == kernel(p).elements;
}

namespace {

std::vector<int> order_census(const FiniteGroup& g) {
  std::vector<int> c(g.order() + 1, 0);
  for (Elem x = 0; x < g.order(); ++x) ++c[g.element_order(x)];
  return c;
}

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
  std::vector<Elem> by_order(g.order());
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Elem a, Elem b) { return g.element_order(a) > g.element_order(b); });
  std::vector<Elem> gens;
  Subgroup s = trivial_subgroup(g);
  for (Elem x : by_order) {
    if (s.order() == g.order()) break;
    if (s.contains(x)) continue;
    gens.push_back(x);
    s = generated_subgroup(g, gens);
  }
  return gens;
}

// Extends generator images to a map on all of a; empty on conflict.
std::vector<Elem> extend_on_generators(const FiniteGroup& a, const FiniteGroup& b, const std::vector<Elem>& gens,
                                       const std::vector<Elem>& images) {
  std::vector<Elem> m(a.order(), -1);
  m[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Elem x = queue[q];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elem y = a.mul(x, gens[k]);
      const Elem fy = b.mul(m[x], images[k]);
      if (m[y] < 0) {
        m[y] = fy;
        queue.push_back(y);
      } else if (m[y] != fy) {
        return {};
      }
    }
  }
  return m;
}

bool is_hom_map(const FiniteGroup& a, const FiniteGroup& b, const std::vector<Elem>& m) {
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (m[a.mul(x, y)] != b.mul(m[x], m[y])) return false;
  return true;
}

}  // namespace

std::optional<GroupHom> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order() || a.is_abelian() != b.is_abelian()) return std::nullopt;
  if (order_census(a) != order_census(b)) return std::nullopt;
  const auto gens = greedy_generators(a);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (Elem y = 0; y < b.order(); ++y)
      if (b.element_order(y) == a.element_order(gens[k])) candidates[k].push_back(y);
  std::vector<Elem> images(gens.size());
  std::optional<GroupHom> result;
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      auto m = extend_on_generators(a, b, gens, images);
      if (m.empty()) return false;
      std::vector<char> seen(b.order(), 0);
      for (Elem y : m) {
        if (seen[y]) return false;
        seen[y] = 1;
      }
      if (!is_hom_map(a, b, m)) return false;
      result = make_hom(a, b, std::move(m));
      return true;
    }
    for (Elem y : candidates[k]) {
      images[k] = y;
      if (search(k + 1)) return true;
    }
    return false;
  };
  search(0);
  return result;
}

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) { return find_isomorphism(a, b).has_value(); }

namespace {

std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

bool is_power_of(int x, int p) {
  while (x % p == 0) x /= p;
  return x == 1;
}

// Order of x modulo the subgroup s.
int order_mod(const FiniteGroup& g, const Subgroup& s, Elem x) {
  int k = 1;
  Elem y = x;
  while (!s.contains(y)) {
    y = g.mul(y, x);
    ++k;
  }
  return k;
}

// Basis of a p-group inside g (elements of p-power order), largest orders first.
std::vector<Elem> primary_basis(const FiniteGroup& g, int p) {
  std::vector<Elem> part;
  for (Elem x = 0; x < g.order(); ++x)
    if (is_power_of(g.element_order(x), p)) part.push_back(x);
  std::vector<Elem> basis;
  Subgroup s = trivial_subgroup(g);
  while (s.order() < static_cast<int>(part.size())) {
    Elem best = -1;
    int best_ord = 0;
    for (Elem x : part) {
      const int o = order_mod(g, s, x);
      if (o > best_ord) {
        best_ord = o;
        best = x;
      }
    }
    // Pick the representative of best*s with minimal order; it meets s trivially.
    Elem rep = best;
    int rep_ord = g.element_order(best);
    for (Elem y : s.elements) {
      const Elem z = g.mul(best, y);
      const int o = g.element_order(z);
      if (o < rep_ord) {
        rep_ord = o;
        rep = z;
      }
    }
    if (rep_ord != best_ord) fail(ErrorCode::NotAbelian, "basis construction failed");
    basis.push_back(rep);
    s = generated_subgroup(g, basis);
  }
  return basis;
}

// Lexicographically first basis with the given orders, or empty if the budget runs out.
std::vector<Elem> lexicographic_basis(const FiniteGroup& g, const std::vector<int>& factors) {
  const int n = g.order();
  std::vector<Elem> chosen;
  long budget = 200000;
  std::function<bool(std::size_t, const std::vector<char>&, int)> search =
      [&](std::size_t k, const std::vector<char>& span, int span_size) -> bool {
    if (k == factors.size()) return span_size == n;
    for (Elem x = 1; x < n; ++x) {
      if (--budget < 0) return false;
      if (g.element_order(x) != factors[k]) continue;
      // <x> must meet the current span trivially.
      bool ok = true;
      Elem y = x;
      for (int e = 1; e < factors[k] && ok; ++e, y = g.mul(y, x)) ok = !span[y];
      if (!ok) continue;
      std::vector<char> next(n, 0);
      int size = 0;
      for (Elem s = 0; s < n; ++s) {
        if (!span[s]) continue;
        Elem t = s;
        for (int e = 0; e < factors[k]; ++e, t = g.mul(t, x)) {
          next[t] = 1;
          ++size;
        }
      }
      chosen.push_back(x);
      if (search(k + 1, next, size)) return true;
      chosen.pop_back();
    }
    return false;
  };
  std::vector<char> start(n, 0);
  start[0] = 1;
  if (factors.empty()) return {};
  if (search(0, start, 1)) return chosen;
  return {};
}

}  // namespace

AbelianStructure invariant_factors(const FiniteGroup& g) {
  if (!g.is_abelian()) fail(ErrorCode::NotAbelian, "invariant factors of a nonabelian group");
  // Primary decomposition, then recombine into invariant factors.
  std::vector<std::vector<Elem>> per_prime;
  for (int p : prime_factors(g.order())) per_prime.push_back(primary_basis(g, p));
  std::size_t k = 0;
  for (const auto& b : per_prime) k = std::max(k, b.size());
  std::vector<int> factors(k, 1);
  std::vector<Elem> gens(k, 0);
  for (const auto& b : per_prime) {
    // b sorted by decreasing order; the largest goes to the last invariant factor.
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::size_t slot = k - 1 - i;
      factors[slot] *= g.element_order(b[i]);
      gens[slot] = g.mul(gens[slot], b[i]);
    }
  }
  AbelianStructure s;
  s.factors = factors;
  auto lex = lexicographic_basis(g, factors);
  s.generators = lex.empty() ? gens : lex;
  std::vector<FiniteGroup> cyc;
  for (int d : factors) cyc.push_back(cyclic_group(d));
  s.model = cyc.empty() ? trivial_group() : direct_product(cyc);
  std::vector<Elem> iso(s.model.order());
  s.coordinates.assign(g.order(), std::vector<int>(k, 0));
  std::vector<int> digits(k);
  for (int m = 0; m < s.model.order(); ++m) {
    int r = m;
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = r % factors[i];
      r /= factors[i];
    }
    Elem x = 0;
    for (std::size_t i = 0; i < k; ++i) x = g.mul(x, g.pow(s.generators[i], digits[i]));
    iso[m] = x;
    s.coordinates[x] = digits;
  }
  s.iso = make_hom(s.model, g, iso);
  if (!s.iso.is_bijective()) fail(ErrorCode::NotAbelian, "invariant factor basis is not a basis");
  return s;
}

Elem CharacterGroup::find_character(const Vec& values, double tol) const {
  for (Elem c = 0; c < dual.order(); ++c)
    if ((pairing.row(c).transpose() - values).cwiseAbs().maxCoeff() < tol) return c;
  return -1;
}

CharacterGroup character_group(const FiniteGroup& g) {
  if (!g.is_abelian()) fail(ErrorCode::NotAbelian, "character group of a nonabelian group");
  CharacterGroup cg;
  cg.base = g;
  cg.structure = invariant_factors(g);
  cg.dual = cg.structure.model.with_name("dual(" + describe(g) + ")");
  const auto& f = cg.structure.factors;
  const std::size_t k = f.size();
  const long top = k ? f.back() : 1;
  const int n = g.order();
  cg.pairing.resize(n, n);
  std::vector<int> b(k);
  for (int c = 0; c < n; ++c) {
    int r = c;
    for (std::size_t i = k; i-- > 0;) {
      b[i] = r % f[i];
      r /= f[i];
    }
    for (Elem x = 0; x < n; ++x) {
      long num = 0;
      for (std::size_t i = 0; i < k; ++i) num += static_cast<long>(b[i]) * cg.structure.coordinates[x][i] * (top / f[i]);
      cg.pairing(c, x) = root_of_unity(num, top);
    }
  }
  return cg;
}

GroupHom dual_hom(const GroupHom& h, const CharacterGroup& cg_src, const CharacterGroup& cg_dst) {
  if (!(cg_src.base == h.src()) || !(cg_dst.base == h.dst()))
    fail(ErrorCode::Mismatch, "character groups do not match the hom");
  std::vector<Elem> m(cg_dst.dual.order());
  Vec values(h.src().order());
  for (Elem c = 0; c < cg_dst.dual.order(); ++c) {
    for (Elem x = 0; x < h.src().order(); ++x) values(x) = cg_dst.value(c, h(x));
    m[c] = cg_src.find_character(values, 1e-9);
    if (m[c] < 0) fail(ErrorCode::NotHomomorphism, "pulled-back character not found");
  }
  return make_hom(cg_dst.dual, cg_src.dual, std::move(m));
}

GroupHom bidual_map(const CharacterGroup& cg, const CharacterGroup& cg_of_dual) {
  if (!(cg_of_dual.base == cg.dual)) fail(ErrorCode::Mismatch, "second character group is not of the dual");
  std::vector<Elem> m(cg.base.order());
  Vec values(cg.dual.order());
  for (Elem x = 0; x < cg.base.order(); ++x) {
    for (Elem c = 0; c < cg.dual.order(); ++c) values(c) = cg.value(c, x);
    m[x] = cg_of_dual.find_character(values, 1e-9);
    if (m[x] < 0) fail(ErrorCode::NotHomomorphism, "evaluation character not found");
  }
  return make_hom(cg.base, cg_of_dual.dual, std::move(m));
}

std::string describe(const FiniteGroup& g) {
  if (g.order() == 1) return "1";
  if (!g.is_abelian()) return "nonabelian(" + str(g.order()) + ")";
  const auto s = invariant_factors(g);
  std::ostringstream os;
  for (std::size_t i = 0; i < s.factors.size(); ++i) os << (i ? " x " : "") << "Z/" << s.factors[i];
  return os.str();
}

}  // namespace xmod
