#pragma once

#include "hyg/dual.hpp"

namespace hyg {

//! Conjugate exponent: q with 1/p + 1/q = 1, infinity when p = 1.
inline double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw std::domain_error("exponent must satisfy p >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

//! Exponent pair (p, p') for the transform bounds, restricted to 1 <= p <= 2.
struct ExponentPair {
  double p = 2.0;
  double pPrime = 2.0;

  static ExponentPair of(double p) {
    if (!(p >= 1.0 && p <= 2.0))
      throw std::domain_error("transform exponent must lie in [1, 2]");
    return ExponentPair{p, conjugate_exponent(p)};
  }
};

//! r(z) = 2 / (Re z + 1), the exponent carried by the complexified family.
inline double strip_exponent(cplx z) {
  if (z.real() == -1.0) throw std::domain_error("strip exponent undefined at Re z = -1");
  return 2.0 / (z.real() + 1.0);
}

//! Weighted p-norm (sum_i w_i |v_i|^p)^(1/p); for p = infinity the maximum
//! of |v_i| over indices with positive weight. Scaled to stay finite for
//! large p.
inline double lp_norm(const cvec& v, const dvec& w, double p) {
  if (v.size() != w.size()) throw StructuralError("norm: value/weight length mismatch");
  if (!(p >= 1.0)) throw std::domain_error("norm exponent must satisfy p >= 1");
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (w[i] > 0.0) m = std::max(m, std::abs(v[i]));
  if (std::isinf(p) || m == 0.0) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] <= 0.0) continue;
    s += w[i] * std::pow(std::abs(v[i]) / m, p);
  }
  return m * std::pow(s, 1.0 / p);
}

//! f_hat(g) = sum_x haar(x) f(x) conj(g(x))
inline cvec fourier(const FiniteHypergroup& H, const DualObject& D, const cvec& f) {
  const int n = H.size();
  if (static_cast<int>(f.size()) != n) throw StructuralError("function has wrong length");
  cvec out(D.size(), cplx(0.0, 0.0));
  for (int k = 0; k < D.size(); ++k) {
    cplx acc(0.0, 0.0);
    for (int x = 0; x < n; ++x) acc += H.haar(x) * f[x] * std::conj(D.characters[k][x]);
    out[k] = acc;
  }
  return out;
}

//! phi_check(x) = sum_g pi(g) phi(g) g(x)
inline cvec inverse_fourier(const FiniteHypergroup& H, const DualObject& D, const cvec& phi) {
  if (static_cast<int>(phi.size()) != D.size())
    throw StructuralError("dual function has wrong length");
  cvec out(H.size(), cplx(0.0, 0.0));
  for (int x = 0; x < H.size(); ++x) {
    cplx acc(0.0, 0.0);
    for (int k = 0; k < D.size(); ++k) acc += D.plancherel[k] * phi[k] * D.characters[k][x];
    out[x] = acc;
  }
  return out;
}

//! ||f_hat||_{p'} / ||f||_p for nonzero f and p in [1, 2]. Normalizes f
//! internally so large conjugate exponents stay well scaled.
inline double hy_ratio(const FiniteHypergroup& H, const DualObject& D, const cvec& f, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("hy_ratio needs p in [1, 2]");
  double nf = lp_norm(f, H.haar(), p);
  if (!(nf > 0.0)) throw std::domain_error("hy_ratio of the zero function");
  cvec g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] / nf;
  return lp_norm(fourier(H, D, g), D.plancherel, conjugate_exponent(p));
}

//! Pointwise complexification S_z f = |f|^{p(z+1)/2} sgn(f), with sgn(0) = 0.
inline cvec complexify(const cvec& f, double p, cplx z) {
  if (z.real() == -1.0) throw std::domain_error("complexify undefined at Re z = -1");
  cplx w = p * (z + cplx(1.0, 0.0)) / 2.0;
  cvec out(f.size(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    double a = std::abs(f[i]);
    if (a == 0.0) continue;
    out[i] = std::exp(w * std::log(a)) * (f[i] / a);
  }
  return out;
}

//! The dual-side companion f*(g) = |f_hat(g)|^{p'-2} f_hat(g), p in (1, 2).
inline cvec f_star(const FiniteHypergroup& H, const DualObject& D, const cvec& f, double p) {
  if (!(p > 1.0 && p < 2.0)) throw std::domain_error("f_star needs p in (1, 2)");
  const double q = conjugate_exponent(p);
  cvec fh = fourier(H, D, f);
  cvec out(fh.size(), cplx(0.0, 0.0));
  for (std::size_t k = 0; k < fh.size(); ++k) {
    double a = std::abs(fh[k]);
    if (a == 0.0) continue;
    out[k] = std::pow(a, q - 2.0) * fh[k];
  }
  return out;
}

struct OmegaValue {
  cplx value{0.0, 0.0};
  double input_norm = 1.0;  // ||f||_p before internal normalization
  bool rescaled = false;
};

//! phi(z) = sum_g pi(g) (S_z f)_hat(g) S_z conj(f*)(g), evaluated for f
//! normalized to unit p-norm. Constant 1 on the strip 0 <= Re z <= 1 exactly
//! when f attains the transform bound.
inline OmegaValue omega(const FiniteHypergroup& H, const DualObject& D, const cvec& f, double p,
                        cplx z) {
  if (!(p > 1.0 && p < 2.0)) throw std::domain_error("omega needs p in (1, 2)");
  if (z.real() == -1.0) throw std::domain_error("omega undefined at Re z = -1");
  double np = lp_norm(f, H.haar(), p);
  if (!(np > 0.0)) throw std::domain_error("omega of the zero function");
  cvec fu(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fu[i] = f[i] / np;

  cvec fs = f_star(H, D, fu, p);
  for (auto& v : fs) v = std::conj(v);
  cvec sz_f = complexify(fu, p, z);
  cvec sz_fs = complexify(fs, p, z);
  cvec th = fourier(H, D, sz_f);
  cplx acc(0.0, 0.0);
  for (int k = 0; k < D.size(); ++k) acc += D.plancherel[k] * th[k] * sz_fs[k];

  OmegaValue out;
  out.value = acc;
  out.input_norm = np;
  out.rescaled = std::abs(np - 1.0) > 1e-12;
  return out;
}

struct HolderReport {
  double pairing = 0.0;     // |sum w f g|
  double bound = 0.0;       // ||f||_p ||g||_{p'}
  bool equality = false;
  bool identity_checked = false;
  double identity_residual = 0.0;  // defect of the pointwise equality shape
};

//! Equality test for the pairing |∫ f g| <= ||f||_p ||g||_{p'} on a common
//! weighted index set, including the pointwise shape g must take when the
//! bound is attained.
inline HolderReport holder_equality_check(const cvec& f, const cvec& g, double p, const dvec& w,
                                          double tol = 1e-9) {
  if (f.size() != g.size() || f.size() != w.size())
    throw StructuralError("holder check: mismatched index sets");
  if (!(p >= 1.0) || std::isinf(p))
    throw std::domain_error("holder check needs finite p >= 1");
  const double q = conjugate_exponent(p);
  HolderReport rep;
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) acc += w[i] * f[i] * g[i];
  rep.pairing = std::abs(acc);
  const double nf = lp_norm(f, w, p);
  const double ng = lp_norm(g, w, q);
  rep.bound = nf * ng;
  rep.equality = std::abs(rep.pairing - rep.bound) <= tol * std::max(1.0, rep.bound);
  if (rep.equality && rep.bound > 0.0) {
    rep.identity_checked = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (w[i] <= 0.0) continue;
      double a = std::abs(f[i]);
      if (p > 1.0) {
        cplx want = (a == 0.0) ? cplx(0.0, 0.0)
                               : ng * std::pow(nf, 1.0 - p) * std::pow(a, p - 1.0) *
                                     (std::conj(f[i]) / a);
        worst = std::max(worst, std::abs(g[i] - want));
      } else if (a > 0.0) {
        cplx want = ng * (std::conj(f[i]) / a);
        worst = std::max(worst, std::abs(g[i] - want));
      }
    }
    rep.identity_residual = worst;
  }
  return rep;
}

}  // namespace hyg
