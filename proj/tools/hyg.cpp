// Command-line front end: validate hypergroup files, export duals, run
// transform-bound analyses and extremizer searches, and dump the built-in
// example registry.
//
// Exit codes: 0 success, 1 validation/domain failure, 2 parse or structural
// error, 3 spectral failure, 4 search failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyg/io.hpp"

namespace {

using namespace hyg;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitParse = 2;
constexpr int kExitSpectral = 3;
constexpr int kExitSearch = 4;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw StructuralError("JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw StructuralError("cannot write file: " + out_path);
  out << text;
}

// "start:stop:step", endpoints included within 1e-12
std::vector<double> parse_grid(const std::string& spec) {
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(spec);
  if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
    throw std::domain_error("bad grid spec (want start:stop:step): " + spec);
  std::vector<double> grid;
  if (step <= 0.0 || stop < start) return grid;
  for (double p = start; p <= stop + 1e-12; p += step) grid.push_back(std::min(p, stop));
  return grid;
}

int size_cap() {
  if (const char* s = std::getenv("HYG_SIZE_CAP")) {
    long v = std::strtol(s, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  return 16;
}

struct Loaded {
  FiniteHypergroup H;
  DualObject D;
};

Loaded load_with_dual(const std::string& path, double tol) {
  FiniteHypergroup H = hypergroup_from_json(load_json(path), tol);
  DualObject D = dual(H);
  return {std::move(H), std::move(D)};
}

int cmd_validate(const std::string& path, double tol) {
  HypergroupData d = hypergroup_data_from_json(load_json(path), tol);
  ValidationReport rep = validate(d);
  std::ostringstream os;
  os << "hypergroup: " << d.name << " (" << d.size() << " elements"
     << (d.exact() ? ", exact table" : "") << ")\n";
  for (const auto& c : rep.checks) {
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.axiom << "  residual " << fmt17(c.residual);
    if (!c.pass && c.witness[0] >= 0) {
      os << "  witness (";
      for (int i = 0; i < 4; ++i) {
        if (c.witness[i] < 0) break;
        if (i) os << ", ";
        os << d.elements[c.witness[i]];
      }
      os << ")";
    }
    os << "\n";
  }
  os << (rep.ok() ? "valid\n" : "invalid\n");
  std::cout << os.str();
  return rep.ok() ? kExitOk : kExitInvalid;
}

int cmd_dual(const std::string& path, double tol, const std::string& format,
             const std::string& out) {
  auto [H, D] = load_with_dual(path, tol);
  if (format == "json")
    emit(dual_to_json(H, D).dump(2) + "\n", out);
  else
    emit(dual_to_csv(H, D), out);
  return kExitOk;
}

int cmd_hy(const std::string& path, const std::string& fpath, double p, const std::string& grid,
           double tol, const std::string& format, const std::string& out) {
  auto [H, D] = load_with_dual(path, tol);
  cvec f = cvec_from_json(load_json(fpath), H.size());

  if (!grid.empty()) {
    auto ps = parse_grid(grid);
    if (ps.empty()) throw std::domain_error("empty p-grid");
    std::vector<std::pair<double, double>> rows;
    for (double pv : ps) rows.emplace_back(pv, hy_ratio(H, D, f, pv));
    emit(ratio_sweep_csv(rows), out);
    return kExitOk;
  }

  const double q = conjugate_exponent(p);
  const double nf = lp_norm(f, H.haar(), p);
  if (!(nf > 0.0)) throw std::domain_error("zero function");
  const double ratio = hy_ratio(H, D, f, p);
  json j;
  j["p"] = p;
  j["norm_f"] = nf;
  j["norm_fhat"] = ratio * nf;
  j["ratio"] = ratio;
  if (p > 1.0 && p < 2.0) {
    CertificateOptions opts;
    j["certificate"] = certificate_to_json(equality_certificate(H, D, f, p, opts), H);
  } else {
    j["certificate"] = nullptr;
    j["note"] = "certificates are defined for 1 < p < 2";
  }
  if (format == "json") {
    emit(j.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    os << "p        " << fmt17(p) << "\n";
    os << "||f||_p  " << fmt17(nf) << "\n";
    os << "||f^||_" << (std::isinf(q) ? std::string("inf") : fmt17(q)) << "  "
       << fmt17(ratio * nf) << "\n";
    os << "ratio    " << fmt17(ratio) << "\n";
    if (j["certificate"].is_null())
      os << "certificate: (suppressed; defined for 1 < p < 2)\n";
    else
      os << "certificate: " << j["certificate"].dump() << "\n";
    emit(os.str(), out);
  }
  return kExitOk;
}

int cmd_search(const std::string& path, double p, const SearchConfig& cfg, double tol,
               const std::string& out, const std::string& format) {
  auto [H, D] = load_with_dual(path, tol);
  SearchResult res = best_constant_search(H, D, p, cfg);

  json j;
  j["p"] = p;
  j["ratio"] = res.ratio;
  j["converged"] = res.converged;
  j["warm_starts"] = res.warm_starts;
  j["restarts"] = cfg.restarts;
  j["best_start"] = res.best_restart;
  {
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (double r : res.restart_ratios) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      sum += r;
    }
    j["restart_min"] = lo;
    j["restart_max"] = hi;
    j["restart_mean"] = res.restart_ratios.empty() ? 0.0 : sum / res.restart_ratios.size();
  }
  if (p > 1.0 && p < 2.0 && res.converged) {
    CertificateOptions opts;
    opts.ratio_tol = 1e-6;
    opts.recon_tol = 1e-5;
    j["certificate"] = certificate_to_json(equality_certificate(H, D, res.argmax, p, opts), H);
  } else {
    j["certificate"] = nullptr;
  }
  j["argmax"] = cvec_to_json(res.argmax);

  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw StructuralError("cannot write file: " + out);
    f << cvec_to_json(res.argmax).dump(2) << "\n";
  }
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ostringstream os;
    os << "best ratio  " << fmt17(res.ratio) << (res.converged ? "" : "  (NOT CONVERGED)")
       << "\n";
    os << "starts      " << res.warm_starts << " warm + " << cfg.restarts << " random, best #"
       << res.best_restart << "\n";
    os << "restarts    min " << fmt17(j["restart_min"].get<double>()) << "  mean "
       << fmt17(j["restart_mean"].get<double>()) << "  max "
       << fmt17(j["restart_max"].get<double>()) << "\n";
    if (!j["certificate"].is_null()) os << "certificate " << j["certificate"].dump() << "\n";
    if (!res.converged) os << "best iterate " << cvec_to_json(res.argmax).dump() << "\n";
    std::cout << os.str();
  }
  return res.converged ? kExitOk : kExitSearch;
}

int cmd_report(const std::string& path, const std::string& grid, const SearchConfig& cfg,
               double tol, const std::string& out) {
  auto [H, D] = load_with_dual(path, tol);
  auto ps = parse_grid(grid);
  if (ps.empty()) throw std::domain_error("empty p-grid");
  std::vector<ReportRow> rows;
  for (double p : ps) {
    ReportRow row;
    row.p = p;
    CertificateOptions opts;
    double scan_best = 0.0;
    for (const auto& cert : structured_scan(H, D, p, opts, size_cap()))
      scan_best = std::max(scan_best, cert.ratio);
    row.scan_ratio = scan_best;
    SearchResult res = best_constant_search(H, D, p, cfg);
    row.search_ratio = res.ratio;
    if (res.converged) {
      opts.ratio_tol = 1e-6;
      opts.recon_tol = 1e-5;
      row.verdict = to_string(equality_certificate(H, D, res.argmax, p, opts).verdict);
    } else {
      row.verdict = "SearchFailed";
    }
    rows.push_back(row);
  }
  emit(report_csv(rows), out);
  return kExitOk;
}

int cmd_examples(const std::string& name, const std::string& out) {
  auto registry = examples_registry();
  if (name.empty()) {
    std::ostringstream os;
    for (const auto& H : registry) os << H.name() << "\n";
    emit(os.str(), out);
    return kExitOk;
  }
  for (const auto& H : registry) {
    if (H.name() == name) {
      emit(hypergroup_to_json(H).dump(2) + "\n", out);
      return kExitOk;
    }
  }
  throw StructuralError("unknown example: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite commutative hypergroup harmonic analysis"};
  app.require_subcommand(1);

  double tol = 1e-9;
  double p = 1.5;
  std::string grid, out, format = "csv", fpath;
  SearchConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "validation tolerance");
    sub->add_option("--out", out, "write output to this file instead of stdout");
  };

  auto* v = app.add_subcommand("validate", "check the axioms of a hypergroup file");
  std::string v_path;
  v->add_option("file", v_path, "hypergroup JSON file")->required();
  add_common(v);

  auto* du = app.add_subcommand("dual", "characters and Plancherel weights");
  std::string du_path;
  du->add_option("file", du_path)->required();
  du->add_option("--format", format, "csv or json");
  add_common(du);

  auto* hy = app.add_subcommand("hy", "transform-bound report for one function");
  std::string hy_path;
  hy->add_option("file", hy_path)->required();
  hy->add_option("--f", fpath, "function values (JSON array)")->required();
  hy->add_option("--p", p, "exponent in [1, 2]");
  hy->add_option("--p-grid", grid, "sweep start:stop:step and emit CSV");
  hy->add_option("--format", format, "text or json");
  add_common(hy);

  auto* se = app.add_subcommand("search", "maximize the transform ratio");
  std::string se_path;
  se->add_option("file", se_path)->required();
  se->add_option("--p", p, "exponent in (1, 2]");
  se->add_option("--seed", cfg.seed, "random seed");
  se->add_option("--restarts", cfg.restarts, "random restarts");
  se->add_option("--format", format, "text or json");
  add_common(se);

  auto* re = app.add_subcommand("report", "scan + search over a p grid, CSV output");
  std::string re_path;
  re->add_option("file", re_path)->required();
  re->add_option("--p-grid", grid, "start:stop:step")->required();
  re->add_option("--seed", cfg.seed, "random seed");
  re->add_option("--restarts", cfg.restarts, "random restarts");
  add_common(re);

  auto* ex = app.add_subcommand("examples", "list or export the built-in registry");
  std::string ex_name;
  ex->add_option("name", ex_name, "registry entry to export (omit to list)");
  add_common(ex);

  CLI11_PARSE(app, argc, argv);

  try {
    if (v->parsed()) return cmd_validate(v_path, tol);
    if (du->parsed()) return cmd_dual(du_path, tol, format, out);
    if (hy->parsed()) return cmd_hy(hy_path, fpath, p, grid, tol, format, out);
    if (se->parsed()) return cmd_search(se_path, p, cfg, tol, out, format);
    if (re->parsed()) return cmd_report(re_path, grid, cfg, tol, out);
    if (ex->parsed()) return cmd_examples(ex_name, out);
  } catch (const hyg::ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const hyg::StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const hyg::SpectralError& e) {
    std::cerr << "spectral failure: " << e.what() << "\n";
    return kExitSpectral;
  } catch (const hyg::CertificateError& e) {
    std::cerr << "certificate inconsistency: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const hyg::SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const hyg::DegenerateInputError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
