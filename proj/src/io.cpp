#include "ksr/io.hpp"

#include <sstream>

#include "ksr/errors.hpp"

namespace ksr::io {

namespace {

constexpr const char* kModule = "io";

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Rational coord_from_json(const json& c) {
  if (c.is_number_integer()) return Rational(c.get<long>());
  if (c.is_string()) return parse_rational(c.get<std::string>());
  throw InputError(kModule, "weight coordinates must be integers or \"p/q\" strings");
}

Weight weight_from_coords(const RationalVector& coords, bool root_basis, const RootSystem& rs) {
  if (coords.size() != static_cast<std::size_t>(rs.rank()))
    throw InputError(kModule, "weight has " + std::to_string(coords.size()) + " coordinates, rank is " +
                                  std::to_string(rs.rank()));
  if (root_basis) return rs.from_root_coords(coords);
  Weight w;
  for (const auto& c : coords) {
    if (!is_integer(c)) throw InputError(kModule, "fundamental-weight coordinates must be integers");
    w.fw.push_back(to_long(c));
  }
  return w;
}

}  // namespace

json weight_to_json(const Weight& w) { return json{{"basis", "fw"}, {"coords", w.fw}}; }

Weight weight_from_json(const json& j, const RootSystem& rs) {
  const json* coords = &j;
  bool root_basis = false;
  if (j.is_object()) {
    if (!j.contains("coords")) throw InputError(kModule, "weight object needs \"coords\"");
    std::string basis = j.value("basis", "fw");
    if (basis != "fw" && basis != "root") throw InputError(kModule, "unknown weight basis '" + basis + "'");
    root_basis = basis == "root";
    coords = &j.at("coords");
  }
  if (!coords->is_array()) throw InputError(kModule, "weight coordinates must be an array");
  RationalVector v;
  for (const auto& c : *coords) v.push_back(coord_from_json(c));
  return weight_from_coords(v, root_basis, rs);
}

Weight parse_weight(const std::string& text, const RootSystem& rs) {
  std::string body = text;
  bool root_basis = false;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    std::string basis = text.substr(0, colon);
    if (basis != "fw" && basis != "root") throw InputError(kModule, "unknown weight basis '" + basis + "'");
    root_basis = basis == "root";
    body = text.substr(colon + 1);
  }
  RationalVector v;
  for (const auto& s : split(body, ',')) v.push_back(parse_rational(s));
  return weight_from_coords(v, root_basis, rs);
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw InputError(kModule, "expected an integer, got '" + s + "'");
    out.push_back(v);
  }
  return out;
}

grading::GradingElement parse_grading(const std::string& text) {
  grading::GradingElement H;
  for (int v : parse_ints(text)) H.h.push_back(v);
  if (H.h.empty()) throw InputError(kModule, "empty grading element");
  return H;
}

json root_to_json(const rootdata::Root& r) { return r.simple_coords; }

json character_to_json(const rootdata::VirtualCharacter& chi, const rootdata::Subsystem& sub) {
  json out = json::array();
  for (const auto& [w, m] : chi.terms())
    out.push_back({{"highest_weight", weight_to_json(w)}, {"mult", m}, {"dim", rootdata::weyl_dimension(w, sub)}});
  return out;
}

json matrix_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (is_integer(m(r, c)))
        row.push_back(to_long(m(r, c)));
      else
        row.push_back(to_string(m(r, c)));
    }
    rows.push_back(row);
  }
  return rows;
}

json grading_to_json(const grading::GradedDecomposition& gd) {
  json degrees = json::array();
  for (const auto& [d, block] : gd.blocks) {
    json k = json::array(), p = json::array();
    for (const auto& r : block.k_roots) k.push_back(root_to_json(r));
    for (const auto& r : block.p_roots) p.push_back(root_to_json(r));
    degrees.push_back({{"degree", d}, {"k_roots", k}, {"p_roots", p}, {"dim_k", gd.dim_k(d)}, {"dim_p", gd.dim_p(d)}});
  }
  auto pd = grading::parabolic(gd);
  return json{{"type", gd.rs.name()},
              {"epsilon", gd.eps.epsilon_simple},
              {"H", gd.H.h},
              {"g_dominant", gd.g_dominant},
              {"k_dominant", gd.k_dominant},
              {"theta_stable", pd.theta_stable},
              {"degrees", degrees},
              {"two_rho_u_p", weight_to_json(pd.two_rho_u_p)},
              {"two_rho_u_k", weight_to_json(pd.two_rho_u_k)},
              {"canonical_weight", weight_to_json(pd.canonical_weight)}};
}

json cohomology_to_json(const bott::CohomologyResult& r, const rootdata::Subsystem& sub) {
  json per = json::array();
  for (const auto& [deg, chi] : r.per_degree) per.push_back({{"degree", deg}, {"character", character_to_json(chi, sub)}});
  return json{{"vanishes", r.vanishes()}, {"per_degree", per}};
}

json vanishing_to_json(const std::string& form, const series::VanishingReport& r, const grading::GradedDecomposition& gd,
                       const Weight& lambda, int N, const realform::KRootDatum& kd) {
  json per = json::array();
  if (r.series) {
    auto dims = r.series->dims(kd);
    for (int k = 0; k <= N; ++k) {
      json viol = json::array();
      for (const auto& v : r.violations)
        if (v.k == k) viol.push_back({{"mu", weight_to_json(v.mu)}, {"mult", v.mult}});
      per.push_back({{"k", k},
                     {"dims", dims[static_cast<std::size_t>(k)]},
                     {"decomposition", character_to_json(r.series->chi[static_cast<std::size_t>(k)], kd.system)},
                     {"violations", viol}});
    }
  }
  json out{{"form", form},
           {"H", gd.H.h},
           {"lambda", weight_to_json(lambda)},
           {"N", N},
           {"per_degree", per},
           {"verdict", series::to_string(r.verdict)}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  return out;
}

json qct_to_json(const series::QctReport& r, const series::QctOracleData& d) {
  json table = json::object();
  for (const auto& [residue, count] : r.parity_table) table[std::to_string(residue) + " mod 4"] = count;
  json sampled = json::object();
  for (const auto& [dim, count] : d.sampled_orbit_dims) sampled[std::to_string(dim)] = count;
  return json{{"label", r.label},
              {"degenerate", r.degenerate},
              {"G1_evidence",
               {{"holds", r.g1},
                {"principal_orbit_dim", d.principal_orbit_dim},
                {"nilcone_dim", d.nilcone_dim},
                {"principal_components", d.principal_components}}},
              {"G2_evidence",
               {{"holds", r.g2},
                {"divisible_by_4", r.g2_prime},
                {"principal_even", r.principal_even},
                {"sampled_orbit_dims", sampled},
                {"parity_table", table}}},
              {"p_dim", d.p_dim},
              {"seed", d.seed},
              {"notes", r.notes}};
}

json triple_to_json(const oracle::SL2Triple& t) {
  return json{{"H", matrix_to_json(t.H)}, {"X", matrix_to_json(t.X)}, {"Y", matrix_to_json(t.Y)}};
}

}  // namespace ksr::io
