// kspringer: command-line front end. JSON is written to stdout (and to
// --json-out when given). Exit codes: 0 all checks pass, 1 a violation was
// found, 2 hypothesis unmet or invalid input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ksr/bott.hpp"
#include "ksr/errors.hpp"
#include "ksr/io.hpp"
#include "ksr/oracle.hpp"
#include "ksr/pipeline.hpp"
#include "ksr/series.hpp"
#include "ksr/weyl_cache.hpp"

using namespace ksr;
using linalg::RationalMatrix;
using nlohmann::json;

namespace {

struct Common {
  std::string form, type, epsilon;
  int rank = 0;
  std::string H;
  std::vector<std::string> lambdas;
  int N = 6;
  int kmax = 4;
  std::uint64_t seed = 1;
  std::string json_out;
  bool no_cache = false;
  bool json_flag = false;
  bool timings = false;
  std::string checks;
  std::string config;
};

void add_form(CLI::App* app, Common& c) {
  app->add_option("--form", c.form, "catalog name, e.g. su(2,1), sp(4,R), so*(8)");
  app->add_option("--type", c.type, "root system type A, B, C, D or G (with --rank, --epsilon)");
  app->add_option("--rank", c.rank, "rank for --type");
  app->add_option("--epsilon", c.epsilon, "comma-separated signs on simple roots, e.g. -1,-1");
  app->add_option("--json-out", c.json_out, "also write the JSON result to this path");
  app->add_flag("--json", c.json_flag, "accepted for compatibility; output is always JSON");
  app->add_option("--seed", c.seed, "random seed for oracle sampling");
}

realform::FormSpec resolve_form(const Common& c) {
  if (!c.form.empty()) return realform::standard_form_catalog(c.form);
  if (!c.type.empty()) return realform::custom_form(c.type, c.rank, io::parse_ints(c.epsilon));
  throw InputError("cli", "give --form or --type/--rank/--epsilon");
}

grading::GradingElement require_H(const Common& c) {
  if (c.H.empty()) throw InputError("cli", "--H is required");
  return io::parse_grading(c.H);
}

rootdata::Weight lambda_or_zero(const Common& c, const rootdata::RootSystem& rs) {
  if (c.lambdas.empty()) return rootdata::Weight::zero(rs.rank());
  if (c.lambdas.size() > 1) throw InputError("cli", "this subcommand takes a single --lambda");
  return io::parse_weight(c.lambdas.front(), rs);
}

void emit(const json& j, const Common& c) {
  std::cout << j.dump(2) << '\n';
  if (!c.json_out.empty()) {
    std::ofstream out(c.json_out);
    if (!out) throw InputError("cli", "cannot write " + c.json_out);
    out << j.dump(2) << '\n';
  }
}

int verdict_code(series::Verdict v) {
  switch (v) {
    case series::Verdict::Pass:
      return 0;
    case series::Verdict::Fail:
      return 1;
    default:
      return 2;
  }
}

struct Setting {
  realform::FormSpec form;
  realform::KRootDatum kd;
};

Setting setting(const Common& c) {
  auto f = resolve_form(c);
  auto kd = realform::k_root_datum(realform::cartan_decomposition(f.rs, f.eps));
  return {f, kd};
}

RationalMatrix parse_matrix(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array() || j.empty()) throw InputError("cli", "--X must be a JSON array of rows");
  RationalMatrix m(j.size(), j.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != j.size()) throw InputError("cli", "--X must be square");
    for (std::size_t col = 0; col < j.size(); ++col) {
      const auto& e = j[r][col];
      m(r, col) = e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>());
    }
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-Springer resolution verification engine"};
  app.require_subcommand(1);
  Common c;
  int code = 0;
  std::string weight, mu, X;
  std::vector<std::string> H_list;
  std::string over = "K";
  bool exact = false;

  auto* grade_cmd = app.add_subcommand("grade", "ad(H) grading, parabolic and canonical weight");
  add_form(grade_cmd, c);
  grade_cmd->add_option("--H", c.H, "grading element, alpha_i(H) values")->required();
  grade_cmd->callback([&] {
    auto s = setting(c);
    auto gd = grading::grade(s.form.rs, s.form.eps, require_H(c), grading::Parity::Any);
    auto j = io::grading_to_json(gd);
    j["form"] = s.form.name;
    j["problems"] = grading::check_invariants(gd);
    emit(j, c);
  });

  auto* bott_cmd = app.add_subcommand("bott", "line bundle cohomology on the flag variety");
  add_form(bott_cmd, c);
  bott_cmd->add_option("--weight,--lambda", weight, "weight, e.g. 1,0 or root:1/2,1/2")->required();
  bott_cmd->add_option("--over", over, "K (flag variety of K, default) or G")->check(CLI::IsMember({"K", "G"}));
  bott_cmd->callback([&] {
    auto s = setting(c);
    auto lambda = io::parse_weight(weight, s.form.rs);
    auto sub = over == "G" ? rootdata::Subsystem::full(s.form.rs) : s.kd.system;
    auto j = io::cohomology_to_json(bott::line_cohomology(lambda, sub), sub);
    j["form"] = s.form.name;
    j["lambda"] = io::weight_to_json(lambda);
    j["over"] = over;
    emit(j, c);
  });

  auto* vv = app.add_subcommand("verify-vanishing", "positivity of the graded Euler series");
  add_form(vv, c);
  vv->add_option("--H", c.H)->required();
  vv->add_option("--lambda", c.lambdas, "lambda' (default 0)");
  vv->add_option("--N", c.N, "truncation degree");
  vv->callback([&] {
    auto s = setting(c);
    auto gd = grading::grade(s.form.rs, s.form.eps, require_H(c));
    auto lambda = lambda_or_zero(c, s.form.rs);
    auto r = series::verify_vanishing(lambda, gd, s.kd, c.N);
    emit(io::vanishing_to_json(s.form.name, r, gd, lambda, c.N, s.kd), c);
    code = verdict_code(r.verdict);
  });

  auto* hil = app.add_subcommand("hilbert", "Hilbert function of sections of O on the resolution");
  add_form(hil, c);
  hil->add_option("--H", c.H)->required();
  hil->add_option("--N", c.N);
  hil->callback([&] {
    auto s = setting(c);
    auto gd = grading::grade(s.form.rs, s.form.eps, require_H(c));
    emit(json{{"form", s.form.name}, {"H", gd.H.h}, {"N", c.N}, {"dims", series::hilbert_series(gd, s.kd, c.N)}}, c);
  });

  auto* bl = app.add_subcommand("blattner", "K-type multiplicity by the alternating partition sum");
  add_form(bl, c);
  bl->add_option("--H", c.H)->required();
  bl->add_option("--mu", mu, "K-dominant highest weight")->required();
  bl->add_option("--lambda", c.lambdas);
  bl->add_flag("--no-cache", c.no_cache, "do not read or write the Weyl group cache");
  bl->callback([&] {
    auto s = setting(c);
    auto gd = grading::grade(s.form.rs, s.form.eps, require_H(c));
    auto lambda = lambda_or_zero(c, s.form.rs);
    auto m = io::parse_weight(mu, s.form.rs);
    rootdata::WeylCache cache(rootdata::WeylCache::directory_from_environment(!c.no_cache));
    series::BlattnerCalculator calc(gd, s.kd, cache);
    json by_degree = json::array();
    const int top = calc.max_degree(m, lambda);
    for (int k = 0; k <= top; ++k)
      if (long v = calc.multiplicity_in_degree(m, lambda, k)) by_degree.push_back({{"k", k}, {"mult", v}});
    emit(json{{"form", s.form.name},
              {"H", gd.H.h},
              {"mu", io::weight_to_json(m)},
              {"lambda", io::weight_to_json(lambda)},
              {"multiplicity", calc.multiplicity(m, lambda)},
              {"by_degree", by_degree}},
         c);
  });

  auto* comp = app.add_subcommand("components", "component-wise series of the normalization");
  add_form(comp, c);
  comp->add_option("--H", H_list, "one grading per component (default: principal gradings found by the oracle)");
  comp->add_option("--N", c.N);
  comp->callback([&] {
    auto s = setting(c);
    std::vector<grading::GradedDecomposition> gds;
    if (H_list.empty()) {
      auto real = oracle::realize(s.form.rs, s.form.eps);
      for (const auto& p : oracle::principal_gradings(real, s.form.rs, s.form.eps, c.seed))
        gds.push_back(grading::grade(s.form.rs, s.form.eps, p.H));
    } else {
      for (const auto& h : H_list) gds.push_back(grading::grade(s.form.rs, s.form.eps, io::parse_grading(h)));
    }
    auto r = series::components_split(gds, s.kd, c.N);
    json hs = json::array();
    for (const auto& gd : gds) hs.push_back(gd.H.h);
    emit(json{{"form", s.form.name},
              {"gradings", hs},
              {"N", c.N},
              {"component_dims", r.component_dims},
              {"total_dims", r.total_dims}},
         c);
  });

  auto* qct = app.add_subcommand("qct-report", "QCT/QAT evidence from oracle sampling");
  add_form(qct, c);
  qct->callback([&] {
    auto s = setting(c);
    auto real = oracle::realize(s.form.rs, s.form.eps);
    auto data = oracle::qct_oracle_data(real, s.form.rs, s.form.eps, c.seed);
    auto j = io::qct_to_json(series::qct_report(data), data);
    j["form"] = s.form.name;
    emit(j, c);
  });

  auto* orc = app.add_subcommand("oracle", "matrix-model cross-checks");
  orc->require_subcommand(1);
  auto* triple = orc->add_subcommand("triple", "Jacobson-Morozov and Kostant-Sekiguchi triples");
  add_form(triple, c);
  triple->add_option("--X", X, "nilpotent in p as a JSON matrix (default: principal search)");
  triple->callback([&] {
    auto s = setting(c);
    auto real = oracle::realize(s.form.rs, s.form.eps);
    json j{{"form", s.form.name}, {"seed", c.seed}};
    RationalMatrix x;
    if (X.empty()) {
      auto search = oracle::principal_nilpotent_search(real, c.seed);
      x = search.X;
      j["search_trials"] = search.trials;
      j["nilcone_dim"] = search.nilcone_dim;
    } else {
      x = parse_matrix(X);
    }
    auto t = oracle::jm_triple(real, x);
    auto n = oracle::ks_normalize(real, t);
    j["jacobson_morozov"] = io::triple_to_json(t);
    j["normalized"] = io::triple_to_json(n);
    j["normalized_ok"] = oracle::is_normalized(real, n);
    j["orbit_dim"] = oracle::orbit_dimension(real, x);
    emit(j, c);
  });

  auto* ohil = orc->add_subcommand("hilbert", "Hilbert function of an orbit closure by evaluation ranks");
  add_form(ohil, c);
  ohil->add_option("--kmax", c.kmax);
  ohil->add_option("--H", c.H, "use the generic element of p_2 for this grading (default: principal search)");
  ohil->add_flag("--exact", exact, "exact rational ranks instead of ranks modulo 2^61 - 1");
  ohil->callback([&] {
    auto s = setting(c);
    auto real = oracle::realize(s.form.rs, s.form.eps);
    RationalMatrix x;
    if (c.H.empty()) {
      x = oracle::principal_nilpotent_search(real, c.seed).X;
    } else {
      auto gd = grading::grade(s.form.rs, s.form.eps, io::parse_grading(c.H));
      auto conf = oracle::confirm_grading(real, gd, oracle::nilcone_dimension(real, c.seed).dimension, c.seed);
      if (!conf.triple_ok) throw InputError("cli", "no normalized triple through this grading");
      x = conf.triple.X;
    }
    auto r = oracle::coordinate_ring_dims(real, x, c.kmax, c.seed, 4000,
                                          exact ? oracle::RankArithmetic::Exact : oracle::RankArithmetic::Modular);
    emit(json{{"form", s.form.name},
              {"X", io::matrix_to_json(x)},
              {"dims", r.dims},
              {"points_used", r.points_used},
              {"arithmetic", exact ? "exact" : "modular"},
              {"seed", c.seed}},
         c);
  });

  auto* ovg = orc->add_subcommand("verify-grading", "confirm a grading against the matrix model");
  add_form(ovg, c);
  ovg->add_option("--H", c.H)->required();
  ovg->callback([&] {
    auto s = setting(c);
    auto real = oracle::realize(s.form.rs, s.form.eps);
    auto gd = grading::grade(s.form.rs, s.form.eps, require_H(c));
    auto conf = oracle::confirm_grading(real, gd, oracle::nilcone_dimension(real, c.seed).dimension, c.seed);
    auto dims_json = [](const oracle::GradingDims& d) {
      json out = json::array();
      for (const auto& [deg, kp] : d.dims) out.push_back({{"degree", deg}, {"dim_k", kp.first}, {"dim_p", kp.second}});
      return out;
    };
    json j{{"form", s.form.name},
           {"H", gd.H.h},
           {"seed", c.seed},
           {"ad_dims", dims_json(oracle::ad_grading_dims(real, real.grading_matrix(gd.H)))},
           {"root_dims", dims_json(oracle::root_grading_dims(gd))},
           {"dims_match", conf.dims_match},
           {"dense", conf.dense.dense},
           {"triple_ok", conf.triple_ok},
           {"orbit_dim", conf.orbit_dim},
           {"nilcone_dim", conf.nilcone_dim},
           {"principal", conf.principal},
           {"centralizer_in_q", conf.centralizer_in_q},
           {"canonical_weight", io::weight_to_json(oracle::canonical_weight(real, gd.H))},
           {"confirmed", conf.confirmed()}};
    if (conf.triple_ok) j["triple"] = io::triple_to_json(conf.triple);
    emit(j, c);
    code = conf.confirmed() ? 0 : 1;
  });

  auto add_pipeline = [&](CLI::App* cmd) {
    add_form(cmd, c);
    cmd->add_option("--N", c.N);
    cmd->add_option("--kmax", c.kmax);
    cmd->add_flag("--no-cache", c.no_cache, "do not read or write the Weyl group cache");
    cmd->add_flag("--timings", c.timings, "include per-check timings (reports are then not bit-identical)");
    cmd->add_option("--checks", c.checks, "comma-separated subset of the checks");
  };

  auto* run_cmd = app.add_subcommand("run", "run selected checks from a config file and/or flags");
  add_pipeline(run_cmd);
  run_cmd->add_option("--config", c.config, "JSON job config");
  run_cmd->add_option("--H", c.H, "grading element (default: all principal gradings)");
  run_cmd->add_option("--lambda", c.lambdas, "lambda' values (repeatable)");
  auto* vf = app.add_subcommand("verify-form", "every check on every principal grading of a form");
  add_pipeline(vf);

  auto finish_pipeline = [&](pipeline::JobConfig cfg) {
    if (!c.checks.empty()) {
      cfg.checks.clear();
      std::stringstream ss(c.checks);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) cfg.checks.insert(item);
    }
    cfg.use_cache = !c.no_cache;
    cfg.timings = c.timings;
    auto report = pipeline::run(cfg);
    emit(report.to_json(), c);
    code = report.exit_code();
  };
  auto apply_flags = [&](pipeline::JobConfig& cfg, CLI::App* cmd) {
    if (cmd->count("--N")) cfg.N = c.N;
    if (cmd->count("--kmax")) cfg.kmax = c.kmax;
    if (cmd->count("--seed")) cfg.seed = c.seed;
  };

  run_cmd->callback([&] {
    pipeline::JobConfig cfg;
    if (!c.config.empty()) {
      std::ifstream in(c.config);
      if (!in) throw InputError("cli", "cannot read " + c.config);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw InputError("cli", std::string("config is not valid JSON: ") + e.what());
      }
      cfg = pipeline::config_from_json(j);
      if (!c.form.empty() || !c.type.empty()) cfg.form = resolve_form(c);
    } else {
      cfg.form = resolve_form(c);
      cfg.N = c.N;
      cfg.kmax = c.kmax;
      cfg.seed = c.seed;
    }
    apply_flags(cfg, run_cmd);
    if (!c.H.empty()) cfg.H = io::parse_grading(c.H);
    if (!c.lambdas.empty()) {
      cfg.lambdas.clear();
      for (const auto& l : c.lambdas) cfg.lambdas.push_back(io::parse_weight(l, cfg.form.rs));
    }
    finish_pipeline(cfg);
  });

  vf->callback([&] {
    pipeline::JobConfig cfg;
    cfg.form = resolve_form(c);
    cfg.N = c.N;
    cfg.kmax = c.kmax;
    cfg.seed = c.seed;
    cfg.lambda_bound = 1;
    finish_pipeline(cfg);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ksr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error [cli]: " << e.what() << '\n';
    return 2;
  }
  return code;
}
