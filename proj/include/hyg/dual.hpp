#pragma once

#include <limits>
#include <random>

#include <Eigen/Dense>

#include "hyg/hypergroup.hpp"

namespace hyg {

//! The dual of a finite commutative hypergroup: every character together
//! with its Plancherel weight. characters[k][x] is the value of the k-th
//! character at element x. Row 0 is always the trivial character.
struct DualObject {
  std::vector<cvec> characters;
  dvec plancherel;

  int size() const { return static_cast<int>(characters.size()); }
};

//! Worst defect of the character laws for g: multiplicativity over all
//! pairs, hermitian symmetry, value 1 at the identity, and |g| <= 1.
inline double character_residual(const FiniteHypergroup& H, const cvec& g) {
  const int n = H.size();
  double worst = std::abs(g[H.identity()] - cplx(1.0, 0.0));
  for (int x = 0; x < n; ++x) {
    worst = std::max(worst, std::abs(g[H.inv(x)] - std::conj(g[x])));
    worst = std::max(worst, std::abs(g[x]) - 1.0);
    for (int y = 0; y < n; ++y) {
      cplx s(0.0, 0.0);
      for (int z = 0; z < n; ++z) s += H.c(x, y, z) * g[z];
      worst = std::max(worst, std::abs(s - g[x] * g[y]));
    }
  }
  return worst;
}

//! Weights from the closed form pi(g) = 1 / sum_x haar(x) |g(x)|^2, verified
//! against the Parseval identity on a deterministic random sample.
inline dvec plancherel_weights(const FiniteHypergroup& H, const std::vector<cvec>& chars) {
  const int n = H.size();
  dvec pi(chars.size());
  for (std::size_t k = 0; k < chars.size(); ++k) {
    double s = 0.0;
    for (int x = 0; x < n; ++x) s += H.haar(x) * std::norm(chars[k][x]);
    if (!(s > 0.0)) throw SpectralError("character with vanishing energy");
    pi[k] = 1.0 / s;
  }
  std::mt19937_64 rng(0x6d616c6c6f77ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 32; ++trial) {
    cvec f(n);
    for (int x = 0; x < n; ++x) f[x] = cplx(gauss(rng), gauss(rng));
    double lhs = 0.0;
    for (int x = 0; x < n; ++x) lhs += H.haar(x) * std::norm(f[x]);
    double rhs = 0.0;
    for (std::size_t k = 0; k < chars.size(); ++k) {
      cplx fh(0.0, 0.0);
      for (int x = 0; x < n; ++x) fh += H.haar(x) * f[x] * std::conj(chars[k][x]);
      rhs += pi[k] * std::norm(fh);
    }
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, lhs));
  }
  if (worst > 1e-9)
    throw SpectralError("Parseval identity fails on verification sample", worst);
  return pi;
}

namespace detail {

// Deterministic ordering of the dual: ascending Plancherel weight (the
// trivial character always has the smallest), ties by descending real parts
// element-by-element, then descending imaginary parts.
inline void sort_dual(std::vector<cvec>& chars, dvec& pi) {
  const int m = static_cast<int>(chars.size());
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  auto less = [&](int a, int b) {
    if (pi[a] < pi[b] - 1e-12) return true;
    if (pi[b] < pi[a] - 1e-12) return false;
    for (std::size_t x = 0; x < chars[a].size(); ++x) {
      double ra = chars[a][x].real(), rb = chars[b][x].real();
      if (std::abs(ra - rb) > 1e-9) return ra > rb;
    }
    for (std::size_t x = 0; x < chars[a].size(); ++x) {
      double ia = chars[a][x].imag(), ib = chars[b][x].imag();
      if (std::abs(ia - ib) > 1e-9) return ia > ib;
    }
    return false;
  };
  std::stable_sort(idx.begin(), idx.end(), less);
  std::vector<cvec> c2(m);
  dvec p2(m);
  for (int i = 0; i < m; ++i) {
    c2[i] = std::move(chars[idx[i]]);
    p2[i] = pi[idx[i]];
  }
  chars = std::move(c2);
  pi = std::move(p2);
}

}  // namespace detail

//! Computes every character of H as a joint eigenbasis of the commuting
//! translation operators. A random self-adjoint member of the translation
//! algebra (hermitian plus skew combinations, so conjugate character pairs
//! separate) is diagonalized in the haar-weighted inner product; characters
//! are then read off as Rayleigh quotients of each L_x on the eigenvectors.
//! Retries with fresh coefficients on eigenvalue collisions, up to 8 times.
inline DualObject dual(const FiniteHypergroup& H, double char_tol = 1e-8,
                       std::uint64_t seed = 0x5851f42d4c957f2dULL) {
  using Eigen::MatrixXcd;
  const int n = H.size();
  dvec sq(n), isq(n);
  for (int x = 0; x < n; ++x) {
    sq[x] = std::sqrt(H.haar(x));
    isq[x] = 1.0 / sq[x];
  }

  // L_x as matrices, (L_x)_{y,z} = c[x][y][z]
  std::vector<Eigen::MatrixXd> L(n, Eigen::MatrixXd(n, n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) L[x](y, z) = H.c(x, y, z);

  double worst_seen = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    MatrixXcd M = MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
      double t = unif(rng), s = unif(rng);
      M += t * (L[x] + L[H.inv(x)]).cast<cplx>();
      M += cplx(0.0, -s) * (L[x] - L[H.inv(x)]).cast<cplx>();
    }
    MatrixXcd A(n, n);
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) A(y, z) = sq[y] * M(y, z) * isq[z];
    A = (A + A.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(A);
    if (es.info() != Eigen::Success) continue;

    std::vector<cvec> chars(n, cvec(n));
    double worst = 0.0;
    bool usable = true;
    for (int k = 0; k < n && usable; ++k) {
      // eigenvector back in unweighted coordinates
      cvec u(n);
      double u2 = 0.0;
      for (int y = 0; y < n; ++y) {
        u[y] = es.eigenvectors()(y, k) * isq[y];
        u2 += H.haar(y) * std::norm(u[y]);
      }
      // Rayleigh quotient of each L_x fixes the eigenvalue map exactly
      for (int x = 0; x < n; ++x) {
        cplx num(0.0, 0.0);
        for (int y = 0; y < n; ++y) {
          cplx lxy(0.0, 0.0);
          for (int z = 0; z < n; ++z) lxy += H.c(x, y, z) * u[z];
          num += H.haar(y) * lxy * std::conj(u[y]);
        }
        chars[k][x] = num / u2;
      }
      // pin the value at the identity to exactly 1
      cplx at_e = chars[k][H.identity()];
      if (std::abs(at_e) < 0.5) {
        usable = false;  // mixed eigenvector; retry with fresh coefficients
        break;
      }
      for (int x = 0; x < n; ++x) chars[k][x] /= at_e;
      chars[k][H.identity()] = cplx(1.0, 0.0);
      worst = std::max(worst, character_residual(H, chars[k]));
    }
    if (!usable) continue;
    worst_seen = std::min(worst_seen, worst);
    if (worst > char_tol) continue;

    bool distinct = true;
    for (int a = 0; a < n && distinct; ++a)
      for (int b = a + 1; b < n && distinct; ++b) {
        double dist = 0.0;
        for (int x = 0; x < n; ++x) dist = std::max(dist, std::abs(chars[a][x] - chars[b][x]));
        if (dist <= 1e-6) distinct = false;
      }
    if (!distinct) continue;

    dvec pi;
    try {
      pi = plancherel_weights(H, chars);
    } catch (const SpectralError&) {
      continue;
    }
    detail::sort_dual(chars, pi);
    double triv = 0.0;
    for (int x = 0; x < n; ++x) triv = std::max(triv, std::abs(chars[0][x] - cplx(1.0, 0.0)));
    if (triv > 1e-6) continue;  // trivial character must lead

    DualObject D;
    D.characters = std::move(chars);
    D.plancherel = std::move(pi);
    return D;
  }
  throw SpectralError("no complete character basis after 8 attempts (worst residual " +
                          std::to_string(worst_seen) + ")",
                      worst_seen);
}

//! N(L): characters equal to 1 on every element of L.
inline Subset annihilator(const FiniteHypergroup& H, const DualObject& D, const Subset& L,
                          double tol = 1e-8) {
  (void)H;
  Subset out;
  for (int k = 0; k < D.size(); ++k) {
    bool ok = true;
    for (int x : L)
      if (std::abs(D.characters[k][x] - cplx(1.0, 0.0)) > tol) {
        ok = false;
        break;
      }
    if (ok) out.push_back(k);
  }
  return out;
}

//! Fourier-Stieltjes transform of a measure: mu_hat(g) = sum_x conj(g(x)) mu(x).
inline cvec measure_fourier(const FiniteHypergroup& H, const DualObject& D, const cvec& mu) {
  const int n = H.size();
  if (static_cast<int>(mu.size()) != n) throw StructuralError("measure has wrong length");
  cvec out(D.size(), cplx(0.0, 0.0));
  for (int k = 0; k < D.size(); ++k)
    for (int x = 0; x < n; ++x) out[k] += std::conj(D.characters[k][x]) * mu[x];
  return out;
}

//! The centre, computed three redundant ways: x with p_x * p_{~x} = p_e,
//! x whose products with every point stay point masses, and x where every
//! character is unimodular. Disagreement means a broken dual and raises.
inline Subset center(const FiniteHypergroup& H, const DualObject& D) {
  const int n = H.size();
  const int e = H.identity();
  Subset m1, m2, m3;
  for (int x = 0; x < n; ++x) {
    if (std::abs(H.c(x, H.inv(x), e) - 1.0) <= H.tol()) m1.push_back(x);
    bool singleton = true;
    for (int y = 0; y < n && singleton; ++y) {
      int count = 0;
      for (int z = 0; z < n; ++z)
        if (H.mass_at(x, y, z)) ++count;
      if (count != 1) singleton = false;
    }
    if (singleton) m2.push_back(x);
    bool unimod = true;
    for (int k = 0; k < D.size() && unimod; ++k)
      if (std::abs(std::abs(D.characters[k][x]) - 1.0) > 1e-8) unimod = false;
    if (unimod) m3.push_back(x);
  }
  if (m1 != m2 || m1 != m3)
    throw ConsistencyError("centre computations disagree on " + H.name());
  return m1;
}

}  // namespace hyg
