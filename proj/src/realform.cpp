#include "ksr/realform.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "ksr/errors.hpp"

namespace ksr::realform {

namespace {

constexpr const char* kModule = "realform";

std::vector<int> single_noncompact(int rank, int position) {
  std::vector<int> eps(static_cast<std::size_t>(rank), 1);
  eps[static_cast<std::size_t>(position - 1)] = -1;
  return eps;
}

std::string normalize_name(const std::string& name) {
  std::string out;
  for (char c : name)
    if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

FormSpec make(const std::string& name, rootdata::TypeLabel t, int rank, std::vector<int> eps) {
  return FormSpec{name, RootSystem::build(t, rank), EqualRankInvolution{std::move(eps)}};
}

int positive_int(const std::string& s, const std::string& name) {
  long v = std::stol(s);
  if (v < 1 || v > 64) throw InputError(kModule, "parameter out of range in " + name);
  return static_cast<int>(v);
}

}  // namespace

int EqualRankInvolution::sign(const Root& r) const {
  int s = 1;
  for (std::size_t i = 0; i < r.simple_coords.size(); ++i)
    if (epsilon_simple.at(i) == -1 && (r.simple_coords[i] % 2 != 0)) s = -s;
  return s;
}

CartanDecomposition cartan_decomposition(const RootSystem& rs, const EqualRankInvolution& eps) {
  if (static_cast<int>(eps.epsilon_simple.size()) != rs.rank())
    throw InputError(kModule, "epsilon has length " + std::to_string(eps.epsilon_simple.size()) + ", expected rank " +
                                  std::to_string(rs.rank()));
  for (int e : eps.epsilon_simple)
    if (e != 1 && e != -1) throw InputError(kModule, "epsilon entries must be +1 or -1");
  CartanDecomposition cd{rs, eps, {}, {}, rs.rank(), 0};
  for (const auto& r : rs.roots()) (eps.compact(r) ? cd.k_roots : cd.p_roots).push_back(r);
  cd.k_dim += static_cast<int>(cd.k_roots.size());
  cd.p_dim = static_cast<int>(cd.p_roots.size());
  return cd;
}

KRootDatum k_root_datum(const CartanDecomposition& cd) {
  std::vector<Root> positives;
  for (const auto& r : cd.k_roots)
    if (r.is_positive()) positives.push_back(r);
  Subsystem sys(cd.rs, std::move(positives));
  RationalVector rho;
  for (long x : sys.two_rho().fw) rho.push_back(ratio(x, 2));
  return KRootDatum{std::move(sys), std::move(rho)};
}

FormSpec standard_form_catalog(const std::string& raw) {
  using rootdata::TypeLabel;
  const std::string name = normalize_name(raw);
  std::smatch m;
  static const std::regex su_pq(R"(su\((\d+),(\d+)\))");
  static const std::regex su_n(R"(su\((\d+)\))");
  static const std::regex sp_r(R"(sp\((\d+),r\))");
  static const std::regex sp_pq(R"(sp\((\d+),(\d+)\))");
  static const std::regex sp_n(R"(sp\((\d+)\))");
  static const std::regex so_star(R"(so\*\((\d+)\))");
  static const std::regex sl_r(R"(sl\((\d+),r\))");

  if (std::regex_match(name, m, sl_r) && std::stoi(m[1]) == 2) return make(raw, TypeLabel::A, 1, {-1});
  if (std::regex_match(name, m, su_pq)) {
    int p = positive_int(m[1], raw), q = positive_int(m[2], raw);
    if (p == 2 && q == 1) return make(raw, TypeLabel::A, 2, {-1, -1});
    return make(raw, TypeLabel::A, p + q - 1, single_noncompact(p + q - 1, p));
  }
  if (std::regex_match(name, m, su_n)) {
    int n = positive_int(m[1], raw);
    if (n < 2) throw InputError(kModule, raw + ": su(n) needs n >= 2");
    return make(raw, TypeLabel::A, n - 1, std::vector<int>(static_cast<std::size_t>(n - 1), 1));
  }
  if (std::regex_match(name, m, sp_r)) {
    int two_n = positive_int(m[1], raw);
    if (two_n % 2 != 0) throw InputError(kModule, raw + ": sp(2n,R) needs an even argument");
    int n = two_n / 2;
    if (n == 1) return make(raw, TypeLabel::A, 1, {-1});
    return make(raw, TypeLabel::C, n, single_noncompact(n, n));
  }
  if (std::regex_match(name, m, sp_pq)) {
    int p = positive_int(m[1], raw), q = positive_int(m[2], raw);
    int n = p + q;
    return make(raw, TypeLabel::C, n, single_noncompact(n, p));
  }
  if (std::regex_match(name, m, sp_n)) {
    int n = positive_int(m[1], raw);
    if (n < 2) throw InputError(kModule, raw + ": compact sp(n) needs n >= 2");
    return make(raw, TypeLabel::C, n, std::vector<int>(static_cast<std::size_t>(n), 1));
  }
  if (std::regex_match(name, m, so_star)) {
    int two_n = positive_int(m[1], raw);
    if (two_n % 2 != 0 || two_n < 6) throw InputError(kModule, raw + ": so*(2n) needs 2n even and n >= 3");
    int n = two_n / 2;
    return make(raw, TypeLabel::D, n, single_noncompact(n, n));
  }
  static const std::regex not_equal_rank(
      R"((sl\(\d+,(r|c|h)\)|su\*\(\d+\)|so\(\d+,\d+\)|so\(\d+,c\)|sp\(\d+,c\)|e6.*))");
  if (std::regex_match(name, not_equal_rank))
    throw OutOfScopeError(kModule, raw + " is not an equal-rank real form handled here");
  throw OutOfScopeError(kModule, "unknown real form '" + raw +
                                     "'; the catalog lists su(p,q), sp(2n,R), sp(p,q), so*(2n), su(n), sp(n)");
}

FormSpec custom_form(const std::string& type, int rank, const std::vector<int>& epsilon) {
  auto rs = RootSystem::build(rootdata::parse_type_label(type), rank);
  EqualRankInvolution eps{epsilon};
  cartan_decomposition(rs, eps);  // validates
  std::string name = rs.name() + "[";
  for (std::size_t i = 0; i < epsilon.size(); ++i) name += (i ? "," : "") + std::string(epsilon[i] > 0 ? "+" : "-");
  name += "]";
  return FormSpec{name, std::move(rs), std::move(eps)};
}

FormSpec form_from_json(const nlohmann::json& config) {
  if (!config.is_object()) throw InputError(kModule, "form config must be a JSON object");
  try {
    if (config.contains("form")) return standard_form_catalog(config.at("form").get<std::string>());
    return custom_form(config.at("type").get<std::string>(), config.at("rank").get<int>(),
                       config.at("epsilon").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(kModule, std::string("bad form config: ") + e.what());
  }
}

std::vector<std::string> pinned_forms() { return {"su(1,1)", "su(2,1)", "su(2,2)", "sp(4,R)"}; }

}  // namespace ksr::realform
