#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyg/constructors.hpp"
#include "hyg/extremal.hpp"

namespace hyg {

using nlohmann::json;

//! 17 significant digits: enough for doubles to round-trip through text.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

struct Coefficient {
  double value = 0.0;
  Rational exact;
  bool is_exact = false;
};

inline Coefficient parse_coefficient(const json& j) {
  Coefficient c;
  if (j.is_string()) {
    try {
      c.exact = Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw StructuralError(std::string("bad coefficient: ") + e.what());
    }
    c.value = c.exact.to_double();
    c.is_exact = true;
  } else if (j.is_number_integer()) {
    c.exact = Rational(j.get<std::int64_t>());
    c.value = c.exact.to_double();
    c.is_exact = true;
  } else if (j.is_number()) {
    c.value = j.get<double>();
    c.is_exact = false;
  } else {
    throw StructuralError("coefficient must be a number or a \"p/q\" string");
  }
  return c;
}

}  // namespace detail

//! Reads the hypergroup interchange format. Convolution pairs involving the
//! identity may be omitted (the identity axiom fills them in); all other
//! ordered pairs are required. The table is kept in exact rationals when
//! every listed coefficient is an integer or a "p/q" string.
inline HypergroupData hypergroup_data_from_json(const json& j, double tol = 1e-9) {
  if (!j.is_object()) throw StructuralError("hypergroup document must be a JSON object");
  HypergroupData d;
  d.tol = tol;
  d.name = j.value("name", std::string("unnamed"));
  if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty())
    throw StructuralError("missing or empty \"elements\" array");
  for (const auto& el : j["elements"]) {
    if (!el.is_string()) throw StructuralError("element names must be strings");
    d.elements.push_back(el.get<std::string>());
  }
  const int n = d.size();
  auto index_of = [&](const std::string& name) {
    for (int i = 0; i < n; ++i)
      if (d.elements[i] == name) return i;
    throw StructuralError("unknown element name: " + name);
  };
  if (!j.contains("identity") || !j["identity"].is_string())
    throw StructuralError("missing \"identity\"");
  d.identity = index_of(j["identity"].get<std::string>());

  d.involution.assign(n, -1);
  if (!j.contains("involution") || !j["involution"].is_object())
    throw StructuralError("missing \"involution\" map");
  for (auto it = j["involution"].begin(); it != j["involution"].end(); ++it) {
    if (!it.value().is_string()) throw StructuralError("involution values must be element names");
    d.involution[index_of(it.key())] = index_of(it.value().get<std::string>());
  }
  for (int x = 0; x < n; ++x)
    if (d.involution[x] < 0) d.involution[x] = x;  // omitted entries are fixed points

  if (!j.contains("convolution") || !j["convolution"].is_array())
    throw StructuralError("missing \"convolution\" array");

  std::vector<detail::Coefficient> table(static_cast<std::size_t>(n) * n * n);
  std::vector<char> have(static_cast<std::size_t>(n) * n, 0);
  bool all_exact = true;
  for (const auto& entry : j["convolution"]) {
    if (!entry.is_object() || !entry.contains("x") || !entry.contains("y") ||
        !entry.contains("terms"))
      throw StructuralError("convolution entries need \"x\", \"y\", \"terms\"");
    const int x = index_of(entry["x"].get<std::string>());
    const int y = index_of(entry["y"].get<std::string>());
    if (have[static_cast<std::size_t>(x) * n + y])
      throw StructuralError("duplicate convolution pair (" + d.elements[x] + ", " +
                            d.elements[y] + ")");
    have[static_cast<std::size_t>(x) * n + y] = 1;
    if (!entry["terms"].is_array()) throw StructuralError("\"terms\" must be an array");
    std::vector<char> seen(n, 0);
    for (const auto& term : entry["terms"]) {
      if (!term.is_object() || !term.contains("z") || !term.contains("c"))
        throw StructuralError("terms need \"z\" and \"c\"");
      const int z = index_of(term["z"].get<std::string>());
      if (seen[z])
        throw StructuralError("duplicate term for z = " + d.elements[z] + " in pair (" +
                              d.elements[x] + ", " + d.elements[y] + ")");
      seen[z] = 1;
      auto coeff = detail::parse_coefficient(term["c"]);
      all_exact = all_exact && coeff.is_exact;
      table[(static_cast<std::size_t>(x) * n + y) * n + z] = coeff;
    }
  }
  // identity rows implied by the unit axiom when omitted
  for (int y = 0; y < n; ++y) {
    if (!have[static_cast<std::size_t>(d.identity) * n + y]) {
      have[static_cast<std::size_t>(d.identity) * n + y] = 1;
      auto& cc = table[(static_cast<std::size_t>(d.identity) * n + y) * n + y];
      cc.value = 1.0;
      cc.exact = Rational(1);
      cc.is_exact = true;
    }
    if (!have[static_cast<std::size_t>(y) * n + d.identity]) {
      have[static_cast<std::size_t>(y) * n + d.identity] = 1;
      auto& cc = table[(static_cast<std::size_t>(y) * n + d.identity) * n + y];
      cc.value = 1.0;
      cc.exact = Rational(1);
      cc.is_exact = true;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!have[static_cast<std::size_t>(x) * n + y])
        throw StructuralError("missing convolution pair (" + d.elements[x] + ", " +
                              d.elements[y] + ")");

  d.conv.resize(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) d.conv[i] = table[i].value;
  if (all_exact) {
    d.conv_exact.resize(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) d.conv_exact[i] = table[i].exact;
  } else {
    for (double& v : d.conv)
      if (v < 0.0 && v >= -tol) v = 0.0;
  }
  return d;
}

inline FiniteHypergroup hypergroup_from_json(const json& j, double tol = 1e-9) {
  return FiniteHypergroup::validated(hypergroup_data_from_json(j, tol));
}

//! Writes the interchange format. Exact tables serialize as integers and
//! "p/q" strings, float tables as 17-digit numbers; both re-parse to the
//! identical table.
inline json hypergroup_to_json(const FiniteHypergroup& H) {
  json j;
  j["name"] = H.name();
  j["elements"] = H.elements();
  j["identity"] = H.element(H.identity());
  json inv = json::object();
  for (int x = 0; x < H.size(); ++x) inv[H.element(x)] = H.element(H.inv(x));
  j["involution"] = inv;
  json conv = json::array();
  for (int x = 0; x < H.size(); ++x)
    for (int y = 0; y < H.size(); ++y) {
      if (x == H.identity() || y == H.identity()) continue;  // implied
      json entry;
      entry["x"] = H.element(x);
      entry["y"] = H.element(y);
      json terms = json::array();
      for (int z = 0; z < H.size(); ++z) {
        if (H.exact()) {
          const Rational& r = H.c_exact(x, y, z);
          if (r.is_zero()) continue;
          json t;
          t["z"] = H.element(z);
          if (r.is_integer())
            t["c"] = r.num();
          else
            t["c"] = r.str();
          terms.push_back(std::move(t));
        } else {
          if (H.c(x, y, z) == 0.0) continue;
          json t;
          t["z"] = H.element(z);
          t["c"] = H.c(x, y, z);
          terms.push_back(std::move(t));
        }
      }
      entry["terms"] = std::move(terms);
      conv.push_back(std::move(entry));
    }
  j["convolution"] = std::move(conv);
  return j;
}

//! Complex vector aligned with the element order: entries are numbers or
//! {"re": x, "im": y} objects.
inline cvec cvec_from_json(const json& j, int expected) {
  if (!j.is_array()) throw StructuralError("function must be a JSON array");
  if (static_cast<int>(j.size()) != expected)
    throw StructuralError("function has " + std::to_string(j.size()) + " entries, expected " +
                          std::to_string(expected));
  cvec out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_object() && v.contains("re")) {
      out.emplace_back(v["re"].get<double>(), v.value("im", 0.0));
    } else {
      throw StructuralError("function entries must be numbers or {\"re\", \"im\"} objects");
    }
  }
  return out;
}

inline json cvec_to_json(const cvec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back({{"re", x.real()}, {"im", x.imag()}});
  return out;
}

inline json validation_report_to_json(const ValidationReport& rep,
                                      const std::vector<std::string>& elements) {
  json out = json::array();
  for (const auto& c : rep.checks) {
    json e;
    e["axiom"] = c.axiom;
    e["pass"] = c.pass;
    e["residual"] = c.residual;
    json w = json::array();
    for (int i = 0; i < 4; ++i)
      if (c.witness[i] >= 0) w.push_back(elements[c.witness[i]]);
    e["witness"] = std::move(w);
    out.push_back(std::move(e));
  }
  return out;
}

//! One row per character: index, Plancherel weight, then Re/Im of the value
//! at each element, all at 17 significant digits.
inline std::string dual_to_csv(const FiniteHypergroup& H, const DualObject& D) {
  std::ostringstream os;
  os << "index,pi";
  for (int x = 0; x < H.size(); ++x)
    os << ",re_" << H.element(x) << ",im_" << H.element(x);
  os << "\n";
  for (int k = 0; k < D.size(); ++k) {
    os << k << "," << fmt17(D.plancherel[k]);
    for (int x = 0; x < H.size(); ++x)
      os << "," << fmt17(D.characters[k][x].real()) << "," << fmt17(D.characters[k][x].imag());
    os << "\n";
  }
  return os.str();
}

inline json dual_to_json(const FiniteHypergroup& H, const DualObject& D) {
  json chars = json::array();
  for (int k = 0; k < D.size(); ++k) {
    json c;
    c["index"] = k;
    c["pi"] = D.plancherel[k];
    c["values"] = cvec_to_json(D.characters[k]);
    chars.push_back(std::move(c));
  }
  json out;
  out["elements"] = H.elements();
  out["characters"] = std::move(chars);
  return out;
}

inline json certificate_to_json(const EqualityCertificate& cert, const FiniteHypergroup& H) {
  json out;
  out["ratio"] = cert.ratio;
  out["verdict"] = to_string(cert.verdict);
  json supp = json::array();
  for (int x : cert.support) supp.push_back(H.element(x));
  out["support"] = std::move(supp);
  json sub = json::array();
  for (int x : cert.subhypergroup) sub.push_back(H.element(x));
  out["subhypergroup"] = std::move(sub);
  out["basePoint"] = cert.base_point >= 0 ? json(H.element(cert.base_point)) : json(nullptr);
  out["character"] = cert.character ? json(*cert.character) : json(nullptr);
  out["alpha"] = {{"re", cert.alpha.real()}, {"im", cert.alpha.imag()}};
  json res = json::object();
  for (const auto& [k, v] : cert.residuals) res[k] = v;
  out["residuals"] = std::move(res);
  return out;
}

//! Ratio sweep rows: p, ratio, gap = 1 - ratio.
inline std::string ratio_sweep_csv(const std::vector<std::pair<double, double>>& rows) {
  std::ostringstream os;
  os << "p,ratio,gap\n";
  for (const auto& [p, ratio] : rows)
    os << fmt17(p) << "," << fmt17(ratio) << "," << fmt17(1.0 - ratio) << "\n";
  return os.str();
}

struct ReportRow {
  double p = 0.0;
  double scan_ratio = 0.0;
  double search_ratio = 0.0;
  std::string verdict;
};

inline std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "p,scan_ratio,search_ratio,verdict\n";
  for (const auto& r : rows)
    os << fmt17(r.p) << "," << fmt17(r.scan_ratio) << "," << fmt17(r.search_ratio) << ","
       << r.verdict << "\n";
  return os.str();
}

}  // namespace hyg
