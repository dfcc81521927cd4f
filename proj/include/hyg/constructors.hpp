#pragma once

#include <numeric>

#include "hyg/hypergroup.hpp"

namespace hyg {

//! Multiplication table of a finite group, used as raw material for the
//! group-derived constructors.
struct GroupTable {
  int n = 0;
  int identity = 0;
  std::vector<int> mul;  // row-major, mul[x * n + y] = x y

  int at(int x, int y) const { return mul[static_cast<std::size_t>(x) * n + y]; }

  //! Latin square with a two-sided identity, inverses, and associativity.
  void check() const {
    if (n < 1 || static_cast<int>(mul.size()) != n * n)
      throw StructuralError("group table has wrong size");
    if (identity < 0 || identity >= n) throw StructuralError("group identity out of range");
    for (int v : mul)
      if (v < 0 || v >= n) throw StructuralError("group table entry out of range");
    for (int x = 0; x < n; ++x) {
      std::vector<char> row(n, 0), col(n, 0);
      for (int y = 0; y < n; ++y) {
        if (row[at(x, y)]++) throw StructuralError("group table row is not a permutation");
        if (col[at(y, x)]++) throw StructuralError("group table column is not a permutation");
      }
      if (at(identity, x) != x || at(x, identity) != x)
        throw StructuralError("group identity does not act as a unit");
    }
    for (int x = 0; x < n; ++x) {
      bool has_inv = false;
      for (int y = 0; y < n; ++y)
        if (at(x, y) == identity && at(y, x) == identity) has_inv = true;
      if (!has_inv) throw StructuralError("group element without inverse");
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (at(at(x, y), z) != at(x, at(y, z)))
            throw StructuralError("group table is not associative");
  }

  bool abelian() const {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (at(x, y) != at(y, x)) return false;
    return true;
  }

  std::vector<int> inverses() const {
    std::vector<int> inv(n, -1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (at(x, y) == identity) inv[x] = y;
    return inv;
  }

  //! Conjugacy classes, each sorted, ordered by their smallest member.
  std::vector<std::vector<int>> conjugacy_classes() const {
    const std::vector<int> inv = inverses();
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> classes;
    for (int x = 0; x < n; ++x) {
      if (cls[x] >= 0) continue;
      int id = static_cast<int>(classes.size());
      std::vector<int> members;
      for (int g = 0; g < n; ++g) {
        int y = at(at(g, x), inv[g]);
        if (cls[y] < 0) {
          cls[y] = id;
          members.push_back(y);
        }
      }
      std::sort(members.begin(), members.end());
      classes.push_back(std::move(members));
    }
    return classes;
  }

  static GroupTable cyclic(int m) {
    if (m < 1) throw StructuralError("cyclic group order must be positive");
    GroupTable g;
    g.n = m;
    g.identity = 0;
    g.mul.resize(static_cast<std::size_t>(m) * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) g.mul[static_cast<std::size_t>(x) * m + y] = (x + y) % m;
    return g;
  }

  //! Symmetric group on k letters; elements are the permutations of
  //! {0..k-1} in lexicographic order, acting by composition (xy)(i) = x(y(i)).
  static GroupTable symmetric(int k) {
    if (k < 1 || k > 5) throw StructuralError("symmetric group size out of supported range");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int m = static_cast<int>(perms.size());
    auto index_of = [&](const std::vector<int>& q) {
      return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    GroupTable g;
    g.n = m;
    g.identity = 0;
    g.mul.resize(static_cast<std::size_t>(m) * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        std::vector<int> q(k);
        for (int i = 0; i < k; ++i) q[i] = perms[x][perms[y][i]];
        g.mul[static_cast<std::size_t>(x) * m + y] = index_of(q);
      }
    return g;
  }

  static GroupTable product(const GroupTable& a, const GroupTable& b) {
    GroupTable g;
    g.n = a.n * b.n;
    g.identity = a.identity * b.n + b.identity;
    g.mul.resize(static_cast<std::size_t>(g.n) * g.n);
    for (int x1 = 0; x1 < a.n; ++x1)
      for (int x2 = 0; x2 < b.n; ++x2)
        for (int y1 = 0; y1 < a.n; ++y1)
          for (int y2 = 0; y2 < b.n; ++y2) {
            int x = x1 * b.n + x2, y = y1 * b.n + y2;
            g.mul[static_cast<std::size_t>(x) * g.n + y] = a.at(x1, y1) * b.n + b.at(x2, y2);
          }
    return g;
  }
};

//! The one-element hypergroup.
inline FiniteHypergroup trivial_hypergroup() {
  HypergroupData d;
  d.name = "trivial";
  d.elements = {"e"};
  d.identity = 0;
  d.involution = {0};
  d.conv_exact = {Rational(1)};
  d.mirror_exact();
  return FiniteHypergroup::validated(std::move(d));
}

//! Two-point family {e, a} with p_a * p_a = theta p_e + (1 - theta) p_a.
//! theta = 1 is the order-two group; smaller theta shrinks |gamma(a)|.
inline FiniteHypergroup two_element(const Rational& theta) {
  if (!theta.is_positive() || theta > Rational(1))
    throw std::domain_error("two_element needs theta in (0, 1]");
  HypergroupData d;
  d.name = "two_element(" + theta.str() + ")";
  d.elements = {"e", "a"};
  d.identity = 0;
  d.involution = {0, 1};
  d.conv_exact.assign(8, Rational(0));
  d.c_exact(0, 0, 0) = Rational(1);
  d.c_exact(0, 1, 1) = Rational(1);
  d.c_exact(1, 0, 1) = Rational(1);
  d.c_exact(1, 1, 0) = theta;
  d.c_exact(1, 1, 1) = Rational(1) - theta;
  d.mirror_exact();
  return FiniteHypergroup::validated(std::move(d));
}

//! A finite abelian group as a hypergroup: point products stay points,
//! involution is inversion, Haar is counting measure. Non-abelian tables are
//! rejected by the commutativity axiom.
inline FiniteHypergroup from_group(const GroupTable& g, std::string name,
                                   std::vector<std::string> element_names = {}) {
  g.check();
  HypergroupData d;
  d.name = std::move(name);
  if (element_names.empty()) {
    for (int i = 0; i < g.n; ++i) element_names.push_back(std::to_string(i));
  }
  if (static_cast<int>(element_names.size()) != g.n)
    throw StructuralError("element name list has wrong length");
  d.elements = std::move(element_names);
  d.identity = g.identity;
  d.involution = g.inverses();
  d.conv_exact.assign(static_cast<std::size_t>(g.n) * g.n * g.n, Rational(0));
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) d.c_exact(x, y, g.at(x, y)) = Rational(1);
  d.mirror_exact();
  return FiniteHypergroup::validated(std::move(d));
}

//! The class algebra of a finite group, normalized to a hypergroup:
//! elements are conjugacy classes, c[Ci][Cj][Ck] is the fraction of pairs in
//! Ci x Cj whose product lands in Ck, and the Haar weight of a class is its
//! size.
inline FiniteHypergroup conjugacy_class_hypergroup(const GroupTable& g, std::string name) {
  g.check();
  const auto classes = g.conjugacy_classes();
  const int m = static_cast<int>(classes.size());
  std::vector<int> cls(g.n, -1);
  for (int k = 0; k < m; ++k)
    for (int x : classes[k]) cls[x] = k;

  HypergroupData d;
  d.name = std::move(name);
  for (int k = 0; k < m; ++k) d.elements.push_back("C" + std::to_string(k));
  d.identity = cls[g.identity];
  const std::vector<int> ginv = g.inverses();
  d.involution.resize(m);
  for (int k = 0; k < m; ++k) d.involution[k] = cls[ginv[classes[k].front()]];
  d.conv_exact.assign(static_cast<std::size_t>(m) * m * m, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<std::int64_t> count(m, 0);
      for (int u : classes[i])
        for (int v : classes[j]) ++count[cls[g.at(u, v)]];
      const std::int64_t pairs =
          static_cast<std::int64_t>(classes[i].size()) * static_cast<std::int64_t>(classes[j].size());
      for (int k = 0; k < m; ++k)
        if (count[k] > 0) d.c_exact(i, j, k) = Rational(count[k], pairs);
    }
  d.mirror_exact();
  return FiniteHypergroup::validated(std::move(d));
}

//! Glues a compact factor H and a discrete factor J at a shared identity.
//! Products across factors collapse to the J point; an inverse pair inside J
//! spreads its identity mass over H with the mass-one normalization of H's
//! Haar. The output Haar is recomputed by the invariance solver and checked
//! against the assembled form.
inline FiniteHypergroup join(const FiniteHypergroup& Hc, const FiniteHypergroup& Jd) {
  const int nh = Hc.size(), nj = Jd.size();
  const int n = nh + nj - 1;
  const bool exact = Hc.exact() && !Hc.haar_exact().empty() && Jd.exact();

  HypergroupData d;
  d.name = "join(" + Hc.name() + "," + Jd.name() + ")";
  d.tol = std::max(Hc.tol(), Jd.tol());

  // H elements keep their indices; J's non-identity elements follow.
  std::vector<int> jmap(nj, -1);  // J index -> joined index
  jmap[Jd.identity()] = Hc.identity();
  for (int x = 0; x < nh; ++x) d.elements.push_back(Hc.element(x));
  {
    int next = nh;
    for (int x = 0; x < nj; ++x) {
      if (x == Jd.identity()) continue;
      std::string nm = Jd.element(x);
      while (std::find(d.elements.begin(), d.elements.end(), nm) != d.elements.end())
        nm += "'";  // auto-rename on collision
      d.elements.push_back(nm);
      jmap[x] = next++;
    }
  }
  d.identity = Hc.identity();
  d.involution.resize(n);
  for (int x = 0; x < nh; ++x) d.involution[x] = Hc.inv(x);
  for (int x = 0; x < nj; ++x)
    if (x != Jd.identity()) d.involution[jmap[x]] = jmap[Jd.inv(x)];

  auto in_h = [&](int x) { return x < nh; };
  std::vector<int> jback(n, -1);
  for (int x = 0; x < nj; ++x) jback[jmap[x]] = x;

  std::vector<Rational> hw_exact;
  Rational hmass_exact(0);
  if (exact) {
    hw_exact = Hc.haar_exact();
    for (const auto& v : hw_exact) hmass_exact += v;
  }

  d.conv.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  if (exact) d.conv_exact.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
  auto set_c = [&](int x, int y, int z, double v, const Rational& r) {
    d.c(x, y, z) = v;
    if (exact) d.c_exact(x, y, z) = r;
  };

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (in_h(x) && in_h(y)) {
        for (int z = 0; z < nh; ++z)
          set_c(x, y, z, Hc.c(x, y, z), exact ? Hc.c_exact(x, y, z) : Rational(0));
      } else if (in_h(x) != in_h(y)) {
        int j = in_h(x) ? y : x;  // the J-side point absorbs the product
        set_c(x, y, j, 1.0, Rational(1));
      } else {
        const int jx = jback[x], jy = jback[y];
        if (Jd.inv(jx) != jy) {
          for (int jz = 0; jz < nj; ++jz) {
            if (jz == Jd.identity()) continue;  // no identity mass off inverse pairs
            set_c(x, y, jmap[jz], Jd.c(jx, jy, jz), exact ? Jd.c_exact(jx, jy, jz) : Rational(0));
          }
        } else {
          // p_x * p_{~x} = c_e (normalized Haar of H) + sum_{z != e} c_z p_z
          const double ce = Jd.c(jx, jy, Jd.identity());
          const Rational ce_exact = exact ? Jd.c_exact(jx, jy, Jd.identity()) : Rational(0);
          const double hmass = Hc.haar_total();
          for (int z = 0; z < nh; ++z)
            set_c(x, y, z, ce * Hc.haar(z) / hmass,
                  exact ? ce_exact * hw_exact[z] / hmass_exact : Rational(0));
          for (int jz = 0; jz < nj; ++jz) {
            if (jz == Jd.identity()) continue;
            set_c(x, y, jmap[jz], Jd.c(jx, jy, jz), exact ? Jd.c_exact(jx, jy, jz) : Rational(0));
          }
        }
      }
    }
  if (exact) d.mirror_exact();
  FiniteHypergroup out = FiniteHypergroup::validated(std::move(d));

  // solver Haar must match the assembled one: normalized H part plus J part,
  // rescaled so the identity carries weight 1
  {
    const double scale = Hc.haar_total() / Hc.haar(Hc.identity());
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
      double want = in_h(x) ? Hc.haar(x) / Hc.haar(Hc.identity())
                            : Jd.haar(jback[x]) * scale;
      worst = std::max(worst, std::abs(out.haar(x) - want) / std::max(1.0, std::abs(want)));
    }
    if (worst > 1e-12)
      throw ConsistencyError("join Haar mismatch between solver and assembled form (" +
                             std::to_string(worst) + ")");
  }
  return out;
}

//! Componentwise product hypergroup; element names use "|" as separator.
inline FiniteHypergroup direct_product(const FiniteHypergroup& H1, const FiniteHypergroup& H2) {
  const int n1 = H1.size(), n2 = H2.size();
  const int n = n1 * n2;
  const bool exact = H1.exact() && H2.exact();
  HypergroupData d;
  d.name = "prod(" + H1.name() + "," + H2.name() + ")";
  d.tol = std::max(H1.tol(), H2.tol());
  auto id = [&](int a, int b) { return a * n2 + b; };
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) d.elements.push_back(H1.element(a) + "|" + H2.element(b));
  d.identity = id(H1.identity(), H2.identity());
  d.involution.resize(n);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) d.involution[id(a, b)] = id(H1.inv(a), H2.inv(b));
  d.conv.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  if (exact) d.conv_exact.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
  for (int x1 = 0; x1 < n1; ++x1)
    for (int x2 = 0; x2 < n2; ++x2)
      for (int y1 = 0; y1 < n1; ++y1)
        for (int y2 = 0; y2 < n2; ++y2)
          for (int z1 = 0; z1 < n1; ++z1) {
            if (!exact && H1.c(x1, y1, z1) == 0.0) continue;
            for (int z2 = 0; z2 < n2; ++z2) {
              d.c(id(x1, x2), id(y1, y2), id(z1, z2)) = H1.c(x1, y1, z1) * H2.c(x2, y2, z2);
              if (exact)
                d.c_exact(id(x1, x2), id(y1, y2), id(z1, z2)) =
                    H1.c_exact(x1, y1, z1) * H2.c_exact(x2, y2, z2);
            }
          }
  if (exact) d.mirror_exact();
  return FiniteHypergroup::validated(std::move(d));
}

//! The golden examples exercised by every suite: the trivial hypergroup,
//! small abelian groups, the two-point family at several parameters, the
//! class algebras of S3 and S4, one join, and one direct product.
inline std::vector<FiniteHypergroup> examples_registry() {
  std::vector<FiniteHypergroup> out;
  out.push_back(trivial_hypergroup());
  out.push_back(from_group(GroupTable::cyclic(2), "Z2"));
  out.push_back(from_group(GroupTable::cyclic(4), "Z4"));
  out.push_back(
      from_group(GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2)), "Z2xZ2"));
  out.push_back(two_element(Rational(1, 4)));
  out.push_back(two_element(Rational(1, 3)));
  out.push_back(two_element(Rational(1, 2)));
  out.push_back(two_element(Rational(1)));
  out.push_back(conjugacy_class_hypergroup(GroupTable::symmetric(3), "S3_classes"));
  out.push_back(conjugacy_class_hypergroup(GroupTable::symmetric(4), "S4_classes"));
  out.push_back(join(from_group(GroupTable::cyclic(2), "Z2"), two_element(Rational(1, 3))));
  out.push_back(direct_product(two_element(Rational(1, 3)), two_element(Rational(1, 2))));
  return out;
}

}  // namespace hyg
