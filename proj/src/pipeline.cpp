#include "ksr/pipeline.hpp"

#include <chrono>
#include <functional>

#include "ksr/errors.hpp"
#include "ksr/io.hpp"
#include "ksr/oracle.hpp"
#include "ksr/series.hpp"
#include "ksr/weyl_cache.hpp"

namespace ksr::pipeline {

namespace {

constexpr const char* kModule = "pipeline";

const char* const kVanishingNote =
    "vanishing is checked through its positivity consequence (nonnegative K-multiplicities of the Euler series up "
    "to degree N), not degree by degree in sheaf cohomology";

bool has_matrix_model(const rootdata::RootSystem& rs) {
  using rootdata::TypeLabel;
  return rs.type() == TypeLabel::A || rs.type() == TypeLabel::C || rs.type() == TypeLabel::D;
}

json skipped(const std::string& why) { return json{{"reason", why}}; }

class Runner {
 public:
  Runner(const JobConfig& config, Report& report) : config_(config), report_(report) {}

  void check(const std::string& name, const std::optional<grading::GradingElement>& H,
             const std::function<std::pair<std::string, json>()>& body) {
    if (!config_.wants(name)) return;
    auto start = std::chrono::steady_clock::now();
    auto [verdict, detail] = body();
    CheckResult r{name, H, verdict, std::move(detail), std::nullopt};
    if (config_.timings)
      r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(r));
  }

 private:
  const JobConfig& config_;
  Report& report_;
};

}  // namespace

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names{"grading", "dense-orbit", "canonical-weight", "vanishing",
                                              "hilbert", "blattner",    "components",       "qct"};
  return names;
}

void JobConfig::validate() const {
  for (const auto& c : checks)
    if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end())
      throw InputError(kModule, "unknown check '" + c + "'");
  const auto rank = static_cast<std::size_t>(form.rs.rank());
  if (form.eps.epsilon_simple.size() != rank) throw InputError(kModule, "epsilon length does not match the rank");
  if (H && H->h.size() != rank) throw InputError(kModule, "H has " + std::to_string(H->h.size()) + " entries, rank is " +
                                                              std::to_string(rank));
  for (const auto& l : lambdas)
    if (l.fw.size() != rank) throw InputError(kModule, "lambda " + rootdata::to_string(l) + " has the wrong length");
  if (N < 0 || kmax < 0) throw InputError(kModule, "N and kmax must be nonnegative");
  if (!H && !has_matrix_model(form.rs))
    throw InputError(kModule, "H must be given for type " + form.rs.name() + " (no matrix model to search with)");
}

JobConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError(kModule, "config must be a JSON object");
  JobConfig c;
  c.form = realform::form_from_json(j);
  try {
    if (j.contains("H")) {
      const auto& h = j.at("H");
      if (h.is_string() && h.get<std::string>() == "search")
        c.H.reset();
      else
        c.H = grading::GradingElement{h.get<std::vector<long>>()};
    }
    if (j.contains("lambda"))
      for (const auto& w : j.at("lambda")) c.lambdas.push_back(io::weight_from_json(w, c.form.rs));
    c.lambda_bound = j.value("lambda_bound", -1);
    c.N = j.value("N", 6);
    c.kmax = j.value("kmax", 4);
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("checks"))
      for (const auto& name : j.at("checks")) c.checks.insert(name.get<std::string>());
  } catch (const json::exception& e) {
    throw InputError(kModule, std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

std::vector<rootdata::Weight> qk_dominant_weights(const grading::GradedDecomposition& gd,
                                                  const realform::KRootDatum& kd, int bound) {
  const int r = gd.rs.rank();
  auto pd = grading::parabolic(gd);
  std::vector<rootdata::Weight> out;
  std::vector<long> fw(static_cast<std::size_t>(r), -bound);
  while (true) {
    rootdata::Weight w{fw};
    bool small = true;
    for (const auto& b : kd.simple_k_roots())
      if (gd.rs.pairing(w, b) > bound) small = false;
    if (small && grading::is_QK_dominant(w, pd, kd)) out.push_back(w);
    int i = r - 1;
    while (i >= 0 && fw[static_cast<std::size_t>(i)] == bound) fw[static_cast<std::size_t>(i--)] = -bound;
    if (i < 0) break;
    ++fw[static_cast<std::size_t>(i)];
  }
  return out;
}

int Report::exit_code() const {
  bool unmet = false;
  for (const auto& c : checks) {
    if (c.verdict == "FAIL") return 1;
    if (c.verdict == "HYPOTHESIS-UNMET") unmet = true;
  }
  return unmet ? 2 : 0;
}

std::string Report::overall() const {
  switch (exit_code()) {
    case 0:
      return "PASS";
    case 1:
      return "FAIL";
    default:
      return "HYPOTHESIS-UNMET";
  }
}

json Report::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    json entry{{"check", c.name}, {"verdict", c.verdict}, {"detail", c.detail}};
    if (c.H) entry["H"] = c.H->h;
    if (c.millis) entry["millis"] = *c.millis;
    checks_json.push_back(std::move(entry));
  }
  json hs = json::array();
  for (const auto& H : gradings) hs.push_back(H.h);
  return json{{"tool", "kspringer"},
              {"version", kVersion},
              {"form", form},
              {"type", type},
              {"epsilon", epsilon},
              {"seed", seed},
              {"N", N},
              {"kmax", kmax},
              {"gradings", hs},
              {"checks", checks_json},
              {"verdict", overall()},
              {"note", kVanishingNote}};
}

Report run(const JobConfig& config) {
  config.validate();
  const auto& rs = config.form.rs;
  const auto& eps = config.form.eps;
  Report report;
  report.form = config.form.name;
  report.type = rs.name();
  report.epsilon = eps.epsilon_simple;
  report.seed = config.seed;
  report.N = config.N;
  report.kmax = config.kmax;

  auto cd = realform::cartan_decomposition(rs, eps);
  auto kd = realform::k_root_datum(cd);
  rootdata::WeylCache cache(rootdata::WeylCache::directory_from_environment(config.use_cache));

  std::optional<oracle::ClassicalRealization> real;
  int nilcone = 0;
  if (has_matrix_model(rs)) {
    real = oracle::realize(rs, eps);
    auto problems = oracle::validate(*real);
    if (!problems.empty()) throw ConsistencyError(kModule, "matrix model failed validation: " + problems.front());
    nilcone = oracle::nilcone_dimension(*real, config.seed).dimension;
  }

  std::vector<oracle::GradingConfirmation> principal;
  if (real && (!config.H || config.wants("components")))
    principal = oracle::principal_gradings(*real, rs, eps, config.seed);
  if (config.H) {
    report.gradings.push_back(*config.H);
  } else {
    for (const auto& p : principal) report.gradings.push_back(p.H);
  }

  Runner runner(config, report);
  std::uint64_t stream = 0;
  for (const auto& H : report.gradings) {
    ++stream;
    const std::uint64_t seed = config.seed + 1000 * stream;
    // Odd H is allowed by the combinatorics but not by the resolution.
    auto gd = grading::grade(rs, eps, H, grading::Parity::Any);
    bool even = true;
    for (const auto& [d, block] : gd.blocks) {
      (void)block;
      if (d % 2 != 0) even = false;
    }
    auto pd = grading::parabolic(gd);

    runner.check("grading", H, [&] {
      auto problems = grading::check_invariants(gd);
      json detail = io::grading_to_json(gd);
      detail["problems"] = problems;
      detail["even"] = even;
      if (!problems.empty() || !pd.theta_stable) return std::pair{std::string("FAIL"), detail};
      if (!even || !gd.k_dominant) {
        detail["reason"] = !even ? "odd grading" : "H is not K-dominant, so B_K is not contained in Q∩K";
        return std::pair{std::string("HYPOTHESIS-UNMET"), detail};
      }
      return std::pair{std::string("PASS"), detail};
    });

    std::optional<oracle::GradingConfirmation> conf;
    if (real && even) conf = oracle::confirm_grading(*real, gd, nilcone, seed);

    runner.check("dense-orbit", H, [&]() -> std::pair<std::string, json> {
      if (!real) return {"SKIPPED", skipped("no matrix model for type " + rs.name())};
      if (!conf) return {"HYPOTHESIS-UNMET", skipped("odd grading")};
      json detail{{"dims_match", conf->dims_match},
                  {"x_in_p2", conf->dense.x_in_p2},
                  {"rank_k0_to_p2", conf->dense.rank_k0_to_p2},
                  {"dim_p2", conf->dense.dim_p2},
                  {"rank_kpos_to_p3", conf->dense.rank_kpos_to_p3},
                  {"dim_p3", conf->dense.dim_p3},
                  {"triple_ok", conf->triple_ok},
                  {"orbit_dim", conf->orbit_dim},
                  {"nilcone_dim", conf->nilcone_dim},
                  {"principal", conf->principal},
                  {"centralizer_in_q", conf->centralizer_in_q},
                  {"seed", seed}};
      if (conf->triple_ok) detail["triple"] = io::triple_to_json(conf->triple);
      return {conf->confirmed() ? "PASS" : "FAIL", detail};
    });

    runner.check("canonical-weight", H, [&]() -> std::pair<std::string, json> {
      json detail{{"combinatorial", io::weight_to_json(pd.canonical_weight)},
                  {"two_rho_u_p", io::weight_to_json(pd.two_rho_u_p)},
                  {"two_rho_u_k", io::weight_to_json(pd.two_rho_u_k)}};
      if (!real) return {"SKIPPED", detail};
      auto w = oracle::canonical_weight(*real, H);
      detail["oracle"] = io::weight_to_json(w);
      return {w == pd.canonical_weight ? "PASS" : "FAIL", detail};
    });

    const bool series_ok = even && gd.k_dominant;
    const std::string unmet_reason = !even ? "odd grading" : "H is not K-dominant";

    runner.check("vanishing", H, [&]() -> std::pair<std::string, json> {
      if (!series_ok) return {"HYPOTHESIS-UNMET", skipped(unmet_reason)};
      std::vector<rootdata::Weight> lambdas = config.lambdas;
      if (lambdas.empty()) {
        if (config.lambda_bound >= 0)
          lambdas = qk_dominant_weights(gd, kd, config.lambda_bound);
        else
          lambdas.push_back(rootdata::Weight::zero(rs.rank()));
      }
      json runs = json::array();
      std::string verdict = "PASS";
      for (const auto& l : lambdas) {
        auto r = series::verify_vanishing(l, gd, kd, config.N);
        runs.push_back(io::vanishing_to_json(config.form.name, r, gd, l, config.N, kd));
        if (r.verdict == series::Verdict::Fail) verdict = "FAIL";
        if (r.verdict == series::Verdict::HypothesisUnmet && verdict == "PASS") verdict = "HYPOTHESIS-UNMET";
      }
      return {verdict, json{{"runs", runs}}};
    });

    runner.check("hilbert", H, [&]() -> std::pair<std::string, json> {
      if (!series_ok) return {"HYPOTHESIS-UNMET", skipped(unmet_reason)};
      auto hs = series::hilbert_series(gd, kd, config.kmax);
      json detail{{"series", hs}};
      if (!real || !conf || !conf->triple_ok) return {"SKIPPED", detail};
      auto oc = oracle::coordinate_ring_dims(*real, conf->triple.X, config.kmax, seed, 4000,
                                             oracle::RankArithmetic::Modular);
      detail["oracle"] = oc.dims;
      detail["oracle_points"] = oc.points_used;
      detail["oracle_arithmetic"] = "modular";
      if (oc.dims == hs) return {"PASS", detail};
      bool below = true;
      for (std::size_t k = 0; k < hs.size(); ++k)
        if (oc.dims[k] > hs[k]) below = false;
      if (below) {
        detail["interpretation"] = "non-normal orbit closure: its normalization has more functions";
        return {"EVIDENCE", detail};
      }
      return {"FAIL", detail};
    });

    runner.check("blattner", H, [&]() -> std::pair<std::string, json> {
      if (!series_ok) return {"HYPOTHESIS-UNMET", skipped(unmet_reason)};
      const int nb = std::min(config.N, 6);
      const auto zero = rootdata::Weight::zero(rs.rank());
      auto es = series::euler_series(zero, gd, kd, nb);
      series::BlattnerCalculator calc(gd, kd, cache);
      long checked = 0;
      json mismatches = json::array();
      std::map<rootdata::Weight, long> totals;
      for (int k = 0; k <= nb; ++k)
        for (const auto& [mu, m] : es.chi[static_cast<std::size_t>(k)].terms()) {
          totals[mu] += m;
          ++checked;
          long b = calc.multiplicity_in_degree(mu, zero, k);
          if (b != m) mismatches.push_back({{"k", k}, {"mu", io::weight_to_json(mu)}, {"series", m}, {"blattner", b}});
        }
      for (const auto& [mu, total] : totals)
        if (calc.max_degree(mu, zero) <= nb && calc.multiplicity(mu, zero) != total)
          mismatches.push_back({{"mu", io::weight_to_json(mu)}, {"series_total", total},
                                {"blattner", calc.multiplicity(mu, zero)}});
      json detail{{"degrees", nb}, {"k_types_checked", checked}, {"mismatches", mismatches}};
      return {mismatches.empty() ? "PASS" : "FAIL", detail};
    });
  }

  runner.check("components", std::nullopt, [&]() -> std::pair<std::string, json> {
    if (!real) return {"SKIPPED", skipped("no matrix model for type " + rs.name())};
    if (principal.empty()) return {"SKIPPED", skipped("no principal orbit arises from an even grading")};
    std::vector<grading::GradedDecomposition> gds;
    json hs = json::array();
    for (const auto& p : principal) {
      gds.push_back(grading::grade(rs, eps, p.H));
      hs.push_back(p.H.h);
    }
    auto comp = series::components_split(gds, kd, config.kmax);
    json detail{{"gradings", hs}, {"component_dims", comp.component_dims}, {"total_dims", comp.total_dims}};
    bool ok = !comp.total_dims.empty() && comp.total_dims[0] == static_cast<long>(principal.size());
    return {ok ? "PASS" : "FAIL", detail};
  });

  runner.check("qct", std::nullopt, [&]() -> std::pair<std::string, json> {
    if (!real) return {"SKIPPED", skipped("no matrix model for type " + rs.name())};
    auto data = oracle::qct_oracle_data(*real, rs, eps, config.seed);
    return {"EVIDENCE", io::qct_to_json(series::qct_report(data), data)};
  });

  return report;
}

Report verify_form(const realform::FormSpec& form, std::uint64_t seed, int N, int kmax) {
  JobConfig c;
  c.form = form;
  c.seed = seed;
  c.N = N;
  c.kmax = kmax;
  c.lambda_bound = 1;
  return run(c);
}

}  // namespace ksr::pipeline
