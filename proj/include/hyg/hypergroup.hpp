#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "hyg/errors.hpp"
#include "hyg/rational.hpp"

namespace hyg {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using dvec = std::vector<double>;

//! Sorted, duplicate-free list of element indices.
using Subset = std::vector<int>;

//! Raw definition of a finite commutative hypergroup: an ordered element
//! list, an identity, an involution, and the structure constants of
//! p_x * p_y = sum_z c[x][y][z] p_z. `conv` is the flattened n^3 table in
//! (x, y, z) row-major order; `conv_exact`, when non-empty, mirrors it in
//! exact rationals and switches validation and Haar solving to exact
//! arithmetic.
struct HypergroupData {
  std::string name;
  std::vector<std::string> elements;
  int identity = 0;
  std::vector<int> involution;
  dvec conv;
  std::vector<Rational> conv_exact;
  double tol = 1e-9;

  int size() const { return static_cast<int>(elements.size()); }
  double c(int x, int y, int z) const { return conv[(static_cast<std::size_t>(x) * size() + y) * size() + z]; }
  double& c(int x, int y, int z) { return conv[(static_cast<std::size_t>(x) * size() + y) * size() + z]; }
  const Rational& c_exact(int x, int y, int z) const {
    return conv_exact[(static_cast<std::size_t>(x) * size() + y) * size() + z];
  }
  Rational& c_exact(int x, int y, int z) {
    return conv_exact[(static_cast<std::size_t>(x) * size() + y) * size() + z];
  }
  bool exact() const { return !conv_exact.empty(); }

  //! Syncs the double table from the exact one. Call after editing conv_exact.
  void mirror_exact() {
    conv.resize(conv_exact.size());
    for (std::size_t i = 0; i < conv_exact.size(); ++i) conv[i] = conv_exact[i].to_double();
  }
};

struct AxiomCheck {
  std::string axiom;
  bool pass = true;
  double residual = 0.0;
  // witness indices (x, y, z, v); unused slots are -1
  std::array<int, 4> witness{{-1, -1, -1, -1}};
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const AxiomCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  double worst_residual() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
  }
};

namespace detail {

// Structural sanity independent of the axioms. Throws StructuralError.
inline void check_structure(const HypergroupData& d) {
  const int n = d.size();
  if (n < 1) throw StructuralError("hypergroup needs at least one element");
  for (int i = 0; i < n; ++i) {
    if (d.elements[i].empty()) throw StructuralError("empty element name");
    for (int j = i + 1; j < n; ++j)
      if (d.elements[i] == d.elements[j])
        throw StructuralError("duplicate element name: " + d.elements[i]);
  }
  if (d.identity < 0 || d.identity >= n) throw StructuralError("identity index out of range");
  if (static_cast<int>(d.involution.size()) != n)
    throw StructuralError("involution table has wrong length");
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    int ix = d.involution[x];
    if (ix < 0 || ix >= n) throw StructuralError("involution index out of range");
    if (seen[ix]) throw StructuralError("involution is not a permutation");
    seen[ix] = 1;
  }
  if (d.conv.size() != static_cast<std::size_t>(n) * n * n)
    throw StructuralError("convolution table has wrong size");
  if (!d.conv_exact.empty() && d.conv_exact.size() != d.conv.size())
    throw StructuralError("exact convolution table has wrong size");
  for (double v : d.conv)
    if (!std::isfinite(v)) throw StructuralError("non-finite structure constant");
  if (!(d.tol >= 0.0)) throw StructuralError("tolerance must be non-negative");
}

// Scalar plug for running the same axiom sweep on doubles or rationals.
template <class T>
struct TableOps;

template <>
struct TableOps<double> {
  static double mag(double v) { return std::abs(v); }
  static bool positive(double v, double tol) { return v > tol; }
  static bool negative(double v) { return v < 0.0; }
  static double zero() { return 0.0; }
};

template <>
struct TableOps<Rational> {
  static double mag(const Rational& v) { return std::abs(v.to_double()); }
  static bool positive(const Rational& v, double) { return v.is_positive(); }
  static bool negative(const Rational& v) { return v.is_negative(); }
  static Rational zero() { return Rational(0); }
};

template <class T, class At>
inline void axiom_sweep(int n, int e, const std::vector<int>& inv, double tol, At at,
                        ValidationReport& rep) {
  using Ops = TableOps<T>;
  auto record = [&](std::string name, double res, std::array<int, 4> w) {
    AxiomCheck c;
    c.axiom = std::move(name);
    c.residual = res;
    c.pass = res <= tol;
    c.witness = w;
    rep.checks.push_back(std::move(c));
  };

  // A3: each p_x * p_y is a probability vector.
  {
    double worst = 0.0;
    std::array<int, 4> w{{-1, -1, -1, -1}};
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        T sum = Ops::zero();
        for (int z = 0; z < n; ++z) {
          sum += at(x, y, z);
          if (Ops::negative(at(x, y, z))) {
            double v = Ops::mag(at(x, y, z));
            if (v > worst) {
              worst = v;
              w = {{x, y, z, -1}};
            }
          }
        }
        double res = Ops::mag(sum - T(1));
        if (res > worst) {
          worst = res;
          w = {{x, y, -1, -1}};
        }
      }
    record("A3", worst, w);
  }

  // A5: the identity acts as a two-sided unit.
  {
    double worst = 0.0;
    std::array<int, 4> w{{-1, -1, -1, -1}};
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T want = (y == z) ? T(1) : T(0);
        double r1 = Ops::mag(at(e, y, z) - want);
        double r2 = Ops::mag(at(y, e, z) - want);
        if (r1 > worst) {
          worst = r1;
          w = {{e, y, z, -1}};
        }
        if (r2 > worst) {
          worst = r2;
          w = {{y, e, z, -1}};
        }
      }
    record("A5", worst, w);
  }

  // involution: involutive, fixes e, and reverses products.
  {
    double worst = 0.0;
    std::array<int, 4> w{{-1, -1, -1, -1}};
    if (inv[e] != e) {
      worst = 1.0;
      w = {{e, -1, -1, -1}};
    }
    for (int x = 0; x < n && worst < 1.0; ++x)
      if (inv[inv[x]] != x) {
        worst = 1.0;
        w = {{x, -1, -1, -1}};
      }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          double r = Ops::mag(at(x, y, z) - at(inv[y], inv[x], inv[z]));
          if (r > worst) {
            worst = r;
            w = {{x, y, z, -1}};
          }
        }
    record("involution", worst, w);
  }

  // A6: e carries mass in p_x * p_y exactly when y = ~x.
  {
    double worst = 0.0;
    std::array<int, 4> w{{-1, -1, -1, -1}};
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        bool should = (y == inv[x]);
        bool has = Ops::positive(at(x, y, e), tol);
        if (should && !has) {
          worst = std::max(worst, 1.0);
          w = {{x, y, e, -1}};
        } else if (!should && has) {
          double r = Ops::mag(at(x, y, e));
          if (r > worst) {
            worst = r;
            w = {{x, y, e, -1}};
          }
        }
      }
    record("A6", worst, w);
  }

  // commutativity
  {
    double worst = 0.0;
    std::array<int, 4> w{{-1, -1, -1, -1}};
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          double r = Ops::mag(at(x, y, z) - at(y, x, z));
          if (r > worst) {
            worst = r;
            w = {{x, y, z, -1}};
          }
        }
    record("commutativity", worst, w);
  }

  // associativity: (p_x * p_y) * p_z = p_x * (p_y * p_z)
  {
    double worst = 0.0;
    std::array<int, 4> w{{-1, -1, -1, -1}};
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int v = 0; v < n; ++v) {
            T lhs = Ops::zero();
            T rhs = Ops::zero();
            for (int u = 0; u < n; ++u) {
              lhs += at(x, y, u) * at(u, z, v);
              rhs += at(y, z, u) * at(x, u, v);
            }
            double r = Ops::mag(lhs - rhs);
            if (r > worst) {
              worst = r;
              w = {{x, y, z, v}};
            }
          }
    record("associativity", worst, w);
  }
}

}  // namespace detail

//! Checks all hypergroup axioms and reports the worst residual per axiom.
//! Uses exact arithmetic when the data carries an exact table, in which case
//! residuals of a valid table are exactly zero.
inline ValidationReport validate(const HypergroupData& d) {
  detail::check_structure(d);
  ValidationReport rep;
  const int n = d.size();
  if (d.exact()) {
    detail::axiom_sweep<Rational>(
        n, d.identity, d.involution, d.tol,
        [&](int x, int y, int z) -> const Rational& { return d.c_exact(x, y, z); }, rep);
  } else {
    detail::axiom_sweep<double>(
        n, d.identity, d.involution, d.tol, [&](int x, int y, int z) { return d.c(x, y, z); },
        rep);
  }
  return rep;
}

//! Exact solve of the invariance system sum_y c[x][y][z] w(y) = w(z) with
//! w(e) = 1 pinned. Returns nullopt when 64-bit rationals overflow (caller
//! falls back to floating point); throws DegenerateInputError when the
//! solution space is wrong or the solution is not strictly positive.
inline std::optional<std::vector<Rational>> solve_haar_exact(const HypergroupData& d) {
  const int n = d.size();
  const int e = d.identity;
  try {
    if (n == 1) return std::vector<Rational>{Rational(1)};
    // unknowns: w(y) for y != e, columns indexed by skipping e
    auto col = [&](int y) { return y < e ? y : y - 1; };
    std::vector<std::vector<Rational>> rows;
    for (int x = 0; x < n; ++x)
      for (int z = 0; z < n; ++z) {
        std::vector<Rational> row(n, Rational(0));  // n-1 coeffs + rhs
        bool nonzero = false;
        for (int y = 0; y < n; ++y) {
          Rational a = d.c_exact(x, y, z);
          if (y == z) a -= Rational(1);
          if (y == e) {
            row[n - 1] -= a;  // move pinned column to the rhs
          } else {
            row[col(y)] = a;
          }
          if (!a.is_zero()) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    // Gauss-Jordan
    const int m = n - 1;
    int rank = 0;
    for (int c = 0; c < m && rank < static_cast<int>(rows.size()); ++c) {
      int piv = -1;
      for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (!rows[r][c].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[rank], rows[piv]);
      Rational inv = Rational(1) / rows[rank][c];
      for (int k = c; k <= m; ++k) rows[rank][k] *= inv;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == rank || rows[r][c].is_zero()) continue;
        Rational f = rows[r][c];
        for (int k = c; k <= m; ++k) rows[r][k] -= f * rows[rank][k];
      }
      ++rank;
    }
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r][m].is_zero())
        throw DegenerateInputError("invariance system inconsistent with w(e) = 1");
    if (rank < m)
      throw DegenerateInputError("invariance system has solution space of dimension > 1");
    std::vector<Rational> w(n, Rational(1));
    for (int r = 0; r < rank; ++r) {
      int lead = -1;
      for (int c = 0; c < m; ++c)
        if (!rows[r][c].is_zero()) {
          lead = c;
          break;
        }
      int y = lead < e ? lead : lead + 1;
      w[y] = rows[r][m];
    }
    for (int y = 0; y < n; ++y)
      if (!w[y].is_positive())
        throw DegenerateInputError("invariant weights are not strictly positive");
    return w;
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

//! Solves the invariance system in floating point: least squares with
//! w(e) = 1 pinned, a nullity check on the homogeneous system, and strict
//! positivity of the result.
inline dvec solve_haar(const HypergroupData& d) {
  const int n = d.size();
  const int e = d.identity;
  if (d.exact()) {
    auto w = solve_haar_exact(d);
    if (w) {
      dvec out(n);
      for (int i = 0; i < n; ++i) out[i] = (*w)[i].to_double();
      return out;
    }
  }
  if (n == 1) return dvec{1.0};

  Eigen::MatrixXd M(n * n, n);
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      for (int y = 0; y < n; ++y)
        M(x * n + z, y) = d.c(x, y, z) - (y == z ? 1.0 : 0.0);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv(0);
  int nullity = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= std::max(d.tol, 1e-12) * std::max(smax, 1.0)) ++nullity;
  if (nullity != 1)
    throw DegenerateInputError("invariance system nullity is " + std::to_string(nullity) +
                               ", expected 1");

  Eigen::MatrixXd A(n * n, n - 1);
  Eigen::VectorXd b(n * n);
  for (int r = 0; r < n * n; ++r) {
    b(r) = -M(r, e);
    int k = 0;
    for (int y = 0; y < n; ++y) {
      if (y == e) continue;
      A(r, k++) = M(r, y);
    }
  }
  Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
  dvec w(n, 1.0);
  {
    int k = 0;
    for (int y = 0; y < n; ++y) {
      if (y == e) continue;
      w[y] = sol(k++);
    }
  }
  double wmax = 0.0;
  for (double v : w) wmax = std::max(wmax, std::abs(v));
  double resid = 0.0;
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      double s = -w[z];
      for (int y = 0; y < n; ++y) s += d.c(x, y, z) * w[y];
      resid = std::max(resid, std::abs(s));
    }
  if (resid > d.tol * std::max(1.0, wmax))
    throw DegenerateInputError("invariance system residual too large");
  for (double v : w)
    if (!(v > d.tol)) throw DegenerateInputError("invariant weights are not strictly positive");
  return w;
}

//! A validated, immutable finite commutative hypergroup with its Haar
//! weights cached. Construct through `validated`; all operations on the
//! class are pure, so instances can be shared freely across threads.
class FiniteHypergroup {
 public:
  static FiniteHypergroup validated(HypergroupData data) {
    // clip float round-off negatives before judging the axioms
    for (double& v : data.conv)
      if (v < 0.0 && v >= -data.tol) v = 0.0;
    ValidationReport rep = validate(data);
    if (!rep.ok()) {
      const AxiomCheck* f = rep.first_failure();
      std::string msg = "axiom " + f->axiom + " failed (residual " +
                        std::to_string(f->residual) + ")";
      if (f->witness[0] >= 0) {
        msg += " at (";
        for (int i = 0; i < 4; ++i) {
          if (f->witness[i] < 0) break;
          if (i) msg += ", ";
          msg += data.elements[f->witness[i]];
        }
        msg += ")";
      }
      throw ValidationError(f->axiom, msg);
    }
    FiniteHypergroup H;
    H.data_ = std::move(data);
    H.report_ = std::move(rep);
    if (H.data_.exact()) {
      auto w = solve_haar_exact(H.data_);
      if (w) {
        H.haar_exact_ = std::move(*w);
        H.haar_.resize(H.size());
        for (int i = 0; i < H.size(); ++i) H.haar_[i] = H.haar_exact_[i].to_double();
      }
    }
    if (H.haar_.empty()) H.haar_ = solve_haar(H.data_);
    H.haar_total_ = 0.0;
    for (double v : H.haar_) H.haar_total_ += v;
    return H;
  }

  int size() const { return data_.size(); }
  int identity() const { return data_.identity; }
  int inv(int x) const { return data_.involution[x]; }
  const std::string& name() const { return data_.name; }
  const std::vector<std::string>& elements() const { return data_.elements; }
  const std::string& element(int x) const { return data_.elements[x]; }
  double tol() const { return data_.tol; }
  double c(int x, int y, int z) const { return data_.c(x, y, z); }
  bool exact() const { return data_.exact(); }
  const Rational& c_exact(int x, int y, int z) const { return data_.c_exact(x, y, z); }
  const dvec& haar() const { return haar_; }
  double haar(int x) const { return haar_[x]; }
  double haar_total() const { return haar_total_; }
  const std::vector<Rational>& haar_exact() const { return haar_exact_; }
  const ValidationReport& report() const { return report_; }
  const HypergroupData& data() const { return data_; }

  int element_index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (data_.elements[i] == name) return i;
    return -1;
  }

  //! True when p_x * p_y puts mass on z. Exact tables use exact positivity.
  bool mass_at(int x, int y, int z) const {
    if (exact()) return c_exact(x, y, z).is_positive();
    return c(x, y, z) > tol();
  }

 private:
  FiniteHypergroup() = default;

  HypergroupData data_;
  ValidationReport report_;
  dvec haar_;
  std::vector<Rational> haar_exact_;
  double haar_total_ = 0.0;
};

// ---------------------------------------------------------------------------
// convolution and translation

//! (mu * nu)(z) = sum_{x,y} mu(x) nu(y) c[x][y][z]
inline cvec convolve_measures(const FiniteHypergroup& H, const cvec& mu, const cvec& nu) {
  const int n = H.size();
  if (static_cast<int>(mu.size()) != n || static_cast<int>(nu.size()) != n)
    throw StructuralError("measure has wrong length");
  cvec out(n, cplx(0.0, 0.0));
  for (int x = 0; x < n; ++x) {
    if (mu[x] == cplx(0.0, 0.0)) continue;
    for (int y = 0; y < n; ++y) {
      cplx w = mu[x] * nu[y];
      if (w == cplx(0.0, 0.0)) continue;
      for (int z = 0; z < n; ++z) out[z] += w * H.c(x, y, z);
    }
  }
  return out;
}

//! Left translate L_x f(y) = f(x * y) = sum_z c[x][y][z] f(z).
inline cvec translate(const FiniteHypergroup& H, const cvec& f, int x) {
  const int n = H.size();
  if (static_cast<int>(f.size()) != n) throw StructuralError("function has wrong length");
  cvec out(n, cplx(0.0, 0.0));
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) out[y] += H.c(x, y, z) * f[z];
  return out;
}

//! Regular-representation operator T_x f = p_x * f = L_{~x} f.
inline cvec translate_op(const FiniteHypergroup& H, const cvec& f, int x) {
  return translate(H, f, H.inv(x));
}

//! (f * g)(x) = sum_y haar(y) g(~y) L_x f(y)
inline cvec convolve_functions(const FiniteHypergroup& H, const cvec& f, const cvec& g) {
  const int n = H.size();
  if (static_cast<int>(f.size()) != n || static_cast<int>(g.size()) != n)
    throw StructuralError("function has wrong length");
  cvec out(n, cplx(0.0, 0.0));
  for (int x = 0; x < n; ++x) {
    cplx acc(0.0, 0.0);
    for (int y = 0; y < n; ++y) {
      cplx gy = g[H.inv(y)];
      if (gy == cplx(0.0, 0.0)) continue;
      cplx lxf(0.0, 0.0);
      for (int z = 0; z < n; ++z) lxf += H.c(x, y, z) * f[z];
      acc += H.haar(y) * gy * lxf;
    }
    out[x] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// subsets

inline cvec indicator(const FiniteHypergroup& H, const Subset& A) {
  cvec out(H.size(), cplx(0.0, 0.0));
  for (int x : A) out[x] = cplx(1.0, 0.0);
  return out;
}

//! Indices where |f| exceeds the cutoff (defaults to the hypergroup tol).
inline Subset support(const FiniteHypergroup& H, const cvec& f, double cutoff = -1.0) {
  if (cutoff < 0.0) cutoff = H.tol();
  Subset out;
  for (int x = 0; x < H.size(); ++x)
    if (std::abs(f[x]) > cutoff) out.push_back(x);
  return out;
}

inline Subset involution_image(const FiniteHypergroup& H, const Subset& A) {
  Subset out;
  out.reserve(A.size());
  for (int x : A) out.push_back(H.inv(x));
  std::sort(out.begin(), out.end());
  return out;
}

//! A * B = union of supp(p_x * p_y) over x in A, y in B.
inline Subset set_convolve(const FiniteHypergroup& H, const Subset& A, const Subset& B) {
  std::vector<char> hit(H.size(), 0);
  for (int x : A)
    for (int y : B)
      for (int z = 0; z < H.size(); ++z)
        if (!hit[z] && H.mass_at(x, y, z)) hit[z] = 1;
  Subset out;
  for (int z = 0; z < H.size(); ++z)
    if (hit[z]) out.push_back(z);
  return out;
}

inline bool subset_contains(const Subset& A, const Subset& B) {
  return std::includes(A.begin(), A.end(), B.begin(), B.end());
}

inline bool is_subhypergroup(const FiniteHypergroup& H, const Subset& S) {
  if (S.empty()) return false;
  if (!std::binary_search(S.begin(), S.end(), H.identity())) return false;
  for (int x : S)
    if (!std::binary_search(S.begin(), S.end(), H.inv(x))) return false;
  Subset prod = set_convolve(H, S, S);
  return subset_contains(S, prod);
}

namespace detail {

inline int env_size_cap(int fallback) {
  if (const char* s = std::getenv("HYG_SIZE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return fallback;
}

}  // namespace detail

//! All subhypergroups, sorted by size then by member indices. Refuses to
//! enumerate above the cap (default 16, overridable with HYG_SIZE_CAP).
inline std::vector<Subset> subhypergroups(const FiniteHypergroup& H, int cap = 16) {
  const int n = H.size();
  cap = std::min(detail::env_size_cap(cap), 31);  // masks are 32-bit
  if (n > cap)
    throw SizeCapError("subset enumeration refused: " + std::to_string(n) +
                       " elements exceeds cap " + std::to_string(cap) +
                       " (raise HYG_SIZE_CAP to override)");
  // pair supports as bit masks
  std::vector<std::uint32_t> pair_mask(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::uint32_t m = 0;
      for (int z = 0; z < n; ++z)
        if (H.mass_at(x, y, z)) m |= (1u << z);
      pair_mask[static_cast<std::size_t>(x) * n + y] = m;
    }
  std::vector<std::uint32_t> found;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & (1u << H.identity()))) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      if (!(mask & (1u << x))) continue;
      if (!(mask & (1u << H.inv(x)))) ok = false;
    }
    for (int x = 0; x < n && ok; ++x) {
      if (!(mask & (1u << x))) continue;
      for (int y = 0; y < n && ok; ++y) {
        if (!(mask & (1u << y))) continue;
        if (pair_mask[static_cast<std::size_t>(x) * n + y] & ~mask) ok = false;
      }
    }
    if (ok) found.push_back(mask);
  }
  std::sort(found.begin(), found.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  std::vector<Subset> out;
  out.reserve(found.size());
  for (std::uint32_t mask : found) {
    Subset s;
    for (int x = 0; x < n; ++x)
      if (mask & (1u << x)) s.push_back(x);
    out.push_back(std::move(s));
  }
  return out;
}

//! Smallest subhypergroup containing E: the fixed point of
//! S -> S u ~S u supp(S * S) starting from E u {e}.
inline Subset generated_subhypergroup(const FiniteHypergroup& H, const Subset& E) {
  std::vector<char> in(H.size(), 0);
  in[H.identity()] = 1;
  for (int x : E) {
    if (x < 0 || x >= H.size()) throw StructuralError("generator index out of range");
    in[x] = 1;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x = 0; x < H.size(); ++x) {
      if (!in[x]) continue;
      if (!in[H.inv(x)]) {
        in[H.inv(x)] = 1;
        grew = true;
      }
    }
    for (int x = 0; x < H.size(); ++x) {
      if (!in[x]) continue;
      for (int y = 0; y < H.size(); ++y) {
        if (!in[y]) continue;
        for (int z = 0; z < H.size(); ++z)
          if (!in[z] && H.mass_at(x, y, z)) {
            in[z] = 1;
            grew = true;
          }
      }
    }
  }
  Subset out;
  for (int x = 0; x < H.size(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

}  // namespace hyg
