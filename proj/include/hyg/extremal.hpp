#pragma once

#include <map>
#include <random>

#include <Eigen/SVD>

#include "hyg/transform.hpp"

namespace hyg {

enum class Verdict { Extremal, NotExtremal };

inline const char* to_string(Verdict v) {
  return v == Verdict::Extremal ? "Extremal" : "NotExtremal";
}

//! Outcome of testing a function for equality in the transform bound. When
//! the verdict is Extremal the function equals alpha * g0 * chi_{x0 * H}
//! with H a subhypergroup and g0 unimodular on the support; the residuals
//! map records how well each condition held.
struct EqualityCertificate {
  double ratio = 0.0;
  Verdict verdict = Verdict::NotExtremal;
  Subset support;
  Subset subhypergroup;
  int base_point = -1;
  std::optional<int> character;
  cplx alpha{0.0, 0.0};
  std::map<std::string, double> residuals;
};

struct CertificateOptions {
  double ratio_tol = 1e-7;   // allowed |ratio - 1|
  double recon_tol = 1e-7;   // allowed structural residuals
  double support_rel = 1e-6; // support cutoff relative to max |f|
};

namespace detail {

inline double max_abs(const cvec& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

inline Subset relative_support(const cvec& f, double rel) {
  double m = max_abs(f);
  Subset out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) > rel * m) out.push_back(static_cast<int>(i));
  return out;
}

// Least-squares scale and max reconstruction error of f against g * chi_supp.
inline std::pair<cplx, double> fit_scaled_character(const FiniteHypergroup& H, const cvec& f,
                                                    const cvec& g, const Subset& supp) {
  cplx num(0.0, 0.0);
  double den = 0.0;
  for (int x : supp) {
    num += H.haar(x) * f[x] * std::conj(g[x]);
    den += H.haar(x) * std::norm(g[x]);
  }
  if (den <= 0.0) return {cplx(0.0, 0.0), std::numeric_limits<double>::infinity()};
  cplx alpha = num / den;
  double worst = 0.0;
  std::vector<char> in(H.size(), 0);
  for (int x : supp) in[x] = 1;
  for (int x = 0; x < H.size(); ++x) {
    cplx want = in[x] ? alpha * g[x] : cplx(0.0, 0.0);
    worst = std::max(worst, std::abs(f[x] - want));
  }
  return {alpha, worst};
}

}  // namespace detail

//! Tests a nonzero f in L^p, 1 < p < 2, for equality in the transform bound
//! and, when the ratio sits at 1, derives the structural decomposition
//! (base point, subhypergroup, character, scale). A ratio at 1 without a
//! decomposition raises CertificateError.
inline EqualityCertificate equality_certificate(const FiniteHypergroup& H, const DualObject& D,
                                                const cvec& f, double p,
                                                CertificateOptions opts = {}) {
  if (!(p > 1.0 && p < 2.0))
    throw std::domain_error("equality certificates are defined for p in (1, 2)");
  EqualityCertificate cert;
  cert.ratio = hy_ratio(H, D, f, p);
  cert.residuals["ratio_gap"] = std::abs(cert.ratio - 1.0);
  cert.support = detail::relative_support(f, opts.support_rel);
  if (std::abs(cert.ratio - 1.0) > opts.ratio_tol) {
    cert.verdict = Verdict::NotExtremal;
    return cert;
  }

  const Subset supp = cert.support;
  const int x0 = supp.front();
  Subset sub = set_convolve(H, Subset{H.inv(x0)}, supp);
  const bool sub_ok = is_subhypergroup(H, sub);
  Subset supp_back = set_convolve(H, Subset{x0}, sub);
  int mismatch = 0;
  {
    Subset diff;
    std::set_symmetric_difference(supp.begin(), supp.end(), supp_back.begin(), supp_back.end(),
                                  std::back_inserter(diff));
    mismatch = static_cast<int>(diff.size());
  }
  cert.residuals["subhypergroup_closure"] = sub_ok ? 0.0 : 1.0;
  cert.residuals["support_match"] = static_cast<double>(mismatch);

  int best_k = -1;
  cplx best_alpha(0.0, 0.0);
  double best_recon = std::numeric_limits<double>::infinity();
  for (int k = 0; k < D.size(); ++k) {
    auto [alpha, recon] = detail::fit_scaled_character(H, f, D.characters[k], supp);
    if (recon < best_recon - 1e-15) {
      best_recon = recon;
      best_k = k;
      best_alpha = alpha;
    }
  }
  cert.residuals["reconstruction"] = best_recon;

  double unimod = 0.0;
  if (best_k >= 0)
    for (int x : supp)
      unimod = std::max(unimod, std::abs(std::abs(D.characters[best_k][x]) - 1.0));
  cert.residuals["character_unimodular"] = unimod;

  // every character carrying transform mass must be unimodular on supp(f)
  cvec fh = fourier(H, D, f);
  Subset dual_supp = detail::relative_support(fh, opts.support_rel);
  double dual_unimod = 0.0;
  for (int k : dual_supp)
    for (int x : supp)
      dual_unimod = std::max(dual_unimod, std::abs(std::abs(D.characters[k][x]) - 1.0));
  cert.residuals["dual_support_unimodular"] = dual_unimod;

  const bool structural = sub_ok && mismatch == 0 && best_recon <= opts.recon_tol &&
                          unimod <= opts.recon_tol && dual_unimod <= opts.recon_tol;
  if (!structural)
    throw CertificateError("ratio " + std::to_string(cert.ratio) +
                           " sits at 1 but no structural decomposition found on " + H.name());
  cert.verdict = Verdict::Extremal;
  cert.subhypergroup = std::move(sub);
  cert.base_point = x0;
  cert.character = best_k;
  cert.alpha = best_alpha;
  return cert;
}

//! Enumerates the candidates g0 * chi_{x0 * A} over subhypergroups A, base
//! points x0, and characters g0, and certifies those whose ratio sits at 1.
//! Every subhypergroup contributes at least its own indicator.
inline std::vector<EqualityCertificate> structured_scan(const FiniteHypergroup& H,
                                                        const DualObject& D, double p,
                                                        CertificateOptions opts = {},
                                                        int cap = 16) {
  if (!(p > 1.0 && p < 2.0))
    throw std::domain_error("structured scan is defined for p in (1, 2)");
  const auto subs = subhypergroups(H, cap);
  std::map<std::pair<std::uint32_t, int>, EqualityCertificate> found;
  for (const auto& A : subs) {
    for (int x0 = 0; x0 < H.size(); ++x0) {
      Subset supp = set_convolve(H, Subset{x0}, A);
      for (int k = 0; k < D.size(); ++k) {
        cvec f(H.size(), cplx(0.0, 0.0));
        for (int x : supp) f[x] = D.characters[k][x];
        if (detail::max_abs(f) < 1e-12) continue;  // character vanishes there
        double ratio = hy_ratio(H, D, f, p);
        if (std::abs(ratio - 1.0) > opts.ratio_tol) continue;
        EqualityCertificate cert = equality_certificate(H, D, f, p, opts);
        std::uint32_t mask = 0;
        for (int x : cert.support) mask |= (1u << x);
        auto key = std::make_pair(mask, cert.character.value_or(-1));
        found.emplace(key, std::move(cert));
      }
    }
  }
  std::vector<EqualityCertificate> out;
  out.reserve(found.size());
  for (auto& [key, cert] : found) out.push_back(std::move(cert));
  std::sort(out.begin(), out.end(), [](const EqualityCertificate& a, const EqualityCertificate& b) {
    if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
    if (a.support != b.support) return a.support < b.support;
    return a.character.value_or(-1) < b.character.value_or(-1);
  });
  return out;
}

// ---------------------------------------------------------------------------
// ratio maximization

struct SearchConfig {
  int restarts = 64;
  int max_iters = 2000;
  double step_init = 0.5;
  std::uint64_t seed = 1;
  double eq_tol = 1e-7;
};

struct SearchResult {
  double ratio = 0.0;
  cvec argmax;
  bool converged = false;
  std::vector<double> restart_ratios;  // warm starts first, then random restarts
  int warm_starts = 0;
  int best_restart = -1;
};

//! Smoothed transform ratio: moduli are replaced by sqrt(|.|^2 + eps) inside
//! the p-power sums so the objective stays differentiable where f vanishes.
inline double smoothed_ratio(const FiniteHypergroup& H, const DualObject& D, const cvec& f,
                             double p, double eps = 1e-12) {
  const double q = conjugate_exponent(p);
  cvec fh = fourier(H, D, f);
  double A = 0.0;
  for (int k = 0; k < D.size(); ++k)
    A += D.plancherel[k] * std::pow(std::norm(fh[k]) + eps, q / 2.0);
  double B = 0.0;
  for (int x = 0; x < H.size(); ++x)
    B += H.haar(x) * std::pow(std::norm(f[x]) + eps, p / 2.0);
  return std::pow(A, 1.0 / q) / std::pow(B, 1.0 / p);
}

//! Gradient of the smoothed ratio in the complex convention: the real
//! gradient with respect to (Re f_x, Im f_x) is (Re G_x, Im G_x).
inline cvec smoothed_ratio_gradient(const FiniteHypergroup& H, const DualObject& D, const cvec& f,
                                    double p, double eps = 1e-12) {
  const int n = H.size();
  const double q = conjugate_exponent(p);
  cvec fh = fourier(H, D, f);
  double A = 0.0, B = 0.0;
  for (int k = 0; k < D.size(); ++k)
    A += D.plancherel[k] * std::pow(std::norm(fh[k]) + eps, q / 2.0);
  for (int x = 0; x < n; ++x) B += H.haar(x) * std::pow(std::norm(f[x]) + eps, p / 2.0);
  const double R = std::pow(A, 1.0 / q) / std::pow(B, 1.0 / p);

  cvec out(n);
  for (int x = 0; x < n; ++x) {
    cplx s(0.0, 0.0);
    for (int k = 0; k < D.size(); ++k)
      s += D.plancherel[k] * std::pow(std::norm(fh[k]) + eps, q / 2.0 - 1.0) * fh[k] *
           D.characters[k][x];
    s *= H.haar(x);
    cplx b = H.haar(x) * std::pow(std::norm(f[x]) + eps, p / 2.0 - 1.0) * f[x];
    out[x] = R * (s / A - b / B);
  }
  return out;
}

namespace detail {

inline cvec normalized_p(const FiniteHypergroup& H, cvec f, double p) {
  double np = lp_norm(f, H.haar(), p);
  if (np > 0.0)
    for (auto& v : f) v /= np;
  return f;
}

// Backtracking ascent on the smoothed ratio from a given start.
inline cvec ascend(const FiniteHypergroup& H, const DualObject& D, cvec f, double p,
                   const SearchConfig& cfg, double eps) {
  f = normalized_p(H, std::move(f), p);
  double step = cfg.step_init;
  int stall = 0;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    cvec G = smoothed_ratio_gradient(H, D, f, p, eps);
    double g2 = 0.0;
    for (const auto& v : G) g2 += std::norm(v);
    if (g2 <= 1e-24) break;
    const double R = smoothed_ratio(H, D, f, p, eps);
    double t = step;
    bool accepted = false;
    cvec trial;
    double Rt = R;
    while (t >= 1e-14) {
      trial = f;
      for (int x = 0; x < H.size(); ++x) trial[x] += t * G[x];
      trial = normalized_p(H, std::move(trial), p);
      Rt = smoothed_ratio(H, D, trial, p, eps);
      if (Rt >= R + 1e-4 * t * g2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    f = std::move(trial);
    step = std::min(cfg.step_init, 2.0 * t);
    if (Rt - R <= 1e-15 * std::max(1.0, R)) {
      if (++stall >= 3) break;
    } else {
      stall = 0;
    }
  }
  return f;
}

// Snaps an iterate onto the nearest structured candidate when that improves
// the exact ratio: split the magnitude profile at every cut, rebuild
// alpha * g * chi from the induced support, keep the best.
inline std::pair<double, cvec> polish(const FiniteHypergroup& H, const DualObject& D,
                                      const cvec& f, double p) {
  double best = hy_ratio(H, D, f, p);
  cvec best_f = f;
  const int n = H.size();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(f[a]) > std::abs(f[b]); });
  for (int cut = 1; cut <= n; ++cut) {
    Subset supp(order.begin(), order.begin() + cut);
    std::sort(supp.begin(), supp.end());
    const int x0 = supp.front();
    Subset sub = set_convolve(H, Subset{H.inv(x0)}, supp);
    if (!is_subhypergroup(H, sub)) continue;
    if (set_convolve(H, Subset{x0}, sub) != supp) continue;
    for (int k = 0; k < D.size(); ++k) {
      bool vanishes = false;
      for (int x : supp)
        if (std::abs(D.characters[k][x]) < 1e-9) {
          vanishes = true;
          break;
        }
      if (vanishes) continue;
      auto [alpha, recon] = fit_scaled_character(H, f, D.characters[k], supp);
      (void)recon;
      if (std::abs(alpha) < 1e-15) alpha = cplx(1.0, 0.0);
      cvec cand(n, cplx(0.0, 0.0));
      for (int x : supp) cand[x] = alpha * D.characters[k][x];
      double r = hy_ratio(H, D, cand, p);
      if (r > best) {
        best = r;
        best_f = std::move(cand);
      }
    }
  }
  return {best, best_f};
}

}  // namespace detail

//! Maximizes the transform ratio over complex functions by backtracking
//! gradient ascent on the unit p-sphere: warm starts from every structured
//! candidate, then cfg.restarts random starts seeded from cfg.seed. Results
//! merge deterministically (best ratio, earliest start wins ties), so a
//! fixed seed reproduces the output exactly.
inline SearchResult best_constant_search(const FiniteHypergroup& H, const DualObject& D, double p,
                                         SearchConfig cfg = {}) {
  if (!(p > 1.0 && p <= 2.0)) throw std::domain_error("search needs p in (1, 2]");
  if (cfg.restarts < 1) throw std::domain_error("search needs at least one restart");
  const double eps = 1e-12;
  const int n = H.size();

  std::vector<cvec> starts;
  if (p < 2.0) {
    CertificateOptions opts;
    opts.ratio_tol = std::max(cfg.eq_tol, 1e-7);
    opts.recon_tol = std::max(cfg.eq_tol, 1e-7);
    for (const auto& cert : structured_scan(H, D, p, opts)) {
      cvec f(n, cplx(0.0, 0.0));
      for (int x : cert.support)
        f[x] = cert.alpha * D.characters[cert.character.value_or(0)][x];
      starts.push_back(std::move(f));
    }
  }
  const int warm = static_cast<int>(starts.size());
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (r + 1)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    cvec f(n);
    for (int x = 0; x < n; ++x) f[x] = cplx(gauss(rng), gauss(rng));
    starts.push_back(std::move(f));
  }

  SearchResult res;
  res.warm_starts = warm;
  res.restart_ratios.reserve(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) {
    cvec f = detail::ascend(H, D, starts[s], p, cfg, eps);
    double r;
    if (p < 2.0) {
      auto [pr, pf] = detail::polish(H, D, f, p);
      r = pr;
      f = std::move(pf);
    } else {
      r = hy_ratio(H, D, f, p);
    }
    res.restart_ratios.push_back(r);
    if (r > res.ratio) {
      res.ratio = r;
      res.argmax = std::move(f);
      res.best_restart = static_cast<int>(s);
    }
  }
  res.converged = res.ratio >= 1.0 - 1e-6;
  return res;
}

//! Dimension of span{T_x f : x in E} as the numerical rank of the stacked
//! translates; rank_tol is relative to the largest singular value.
inline int translate_span_dim(const FiniteHypergroup& H, const cvec& f, const Subset& E,
                              double rank_tol = 1e-9) {
  if (E.empty()) return 0;
  Eigen::MatrixXcd rows(static_cast<int>(E.size()), H.size());
  for (std::size_t i = 0; i < E.size(); ++i) {
    cvec t = translate_op(H, f, E[i]);
    for (int y = 0; y < H.size(); ++y) rows(static_cast<int>(i), y) = t[y];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rows);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * sv(0)) ++rank;
  return rank;
}

}  // namespace hyg
