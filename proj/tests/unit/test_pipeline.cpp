#include <doctest.h>

#include <filesystem>

#include "ksr/errors.hpp"
#include "ksr/io.hpp"
#include "ksr/pipeline.hpp"

using namespace ksr;
using namespace ksr::pipeline;
using nlohmann::json;

namespace {

std::string verdict_of(const Report& r, const std::string& check) {
  for (const auto& c : r.checks)
    if (c.name == check) return c.verdict;
  return "";
}

}  // namespace

TEST_CASE("weight encodings") {
  auto a2 = rootdata::RootSystem::build(rootdata::TypeLabel::A, 2);
  CHECK(io::parse_weight("1,0", a2) == rootdata::Weight{{1, 0}});
  CHECK(io::parse_weight("root:1,1", a2) == rootdata::Weight{{1, 1}});
  CHECK(io::parse_weight("root:2/3,1/3", a2) == rootdata::Weight{{1, 0}});
  CHECK_THROWS_AS(io::parse_weight("root:1/2,0", a2), InputError);
  CHECK_THROWS_AS(io::parse_weight("1", a2), InputError);
  CHECK_THROWS_AS(io::parse_weight("sideways:1,1", a2), InputError);

  auto w = rootdata::Weight{{3, -2}};
  CHECK(io::weight_from_json(io::weight_to_json(w), a2) == w);
  auto j = json::parse(R"j({"basis":"root","coords":["1/3","2/3"]})j");
  CHECK(io::weight_from_json(j, a2) == rootdata::Weight{{0, 1}});
  CHECK(io::weight_from_json(json::array({1, 1}), a2) == rootdata::Weight{{1, 1}});
  CHECK_THROWS_AS(io::parse_grading("2,x"), InputError);
}

TEST_CASE("pinned pipelines pass") {
  JobConfig c;
  c.form = realform::standard_form_catalog("su(1,1)");
  c.H = grading::GradingElement{{2}};
  auto r = run(c);
  CHECK(r.exit_code() == 0);
  CHECK(r.overall() == "PASS");
  CHECK(verdict_of(r, "components") == "PASS");
  CHECK(verdict_of(r, "qct") == "EVIDENCE");

  c.form = realform::standard_form_catalog("su(2,1)");
  c.H = grading::GradingElement{{2, 2}};
  c.lambdas = {rootdata::Weight{{0, 0}}};
  auto r2 = run(c);
  CHECK(r2.exit_code() == 0);
  for (const auto& check : r2.checks)
    if (check.name == "canonical-weight") CHECK(check.detail["oracle"]["coords"] == json::array({0, 0}));
}

TEST_CASE("checks can be selected") {
  JobConfig c;
  c.form = realform::standard_form_catalog("su(2,1)");
  c.H = grading::GradingElement{{2, 2}};
  c.checks = {"vanishing", "hilbert"};
  auto r = run(c);
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].name == "vanishing");
  CHECK(r.checks[1].name == "hilbert");
}

TEST_CASE("non-K-dominant H leaves the series hypotheses unmet") {
  JobConfig c;
  c.form = realform::standard_form_catalog("su(2,1)");
  c.H = grading::GradingElement{{-4, 2}};
  c.checks = {"grading", "vanishing"};
  auto r = run(c);
  CHECK(verdict_of(r, "vanishing") == "HYPOTHESIS-UNMET");
  CHECK(r.exit_code() == 2);
}

TEST_CASE("reports are reproducible") {
  JobConfig c;
  c.form = realform::standard_form_catalog("sp(4,R)");
  c.seed = 17;
  c.N = 4;
  auto a = run(c).to_json().dump();
  CHECK(a == run(c).to_json().dump());
  c.use_cache = false;
  auto b = run(c);
  CHECK(b.to_json().dump() == a);
  c.timings = true;
  CHECK(run(c).to_json()["checks"][0].contains("millis"));
}

TEST_CASE("cached and uncached runs agree") {
  auto dir = std::filesystem::temp_directory_path() / "ksr_pipeline_cache_test";
  std::filesystem::remove_all(dir);
  ::setenv(rootdata::WeylCache::kEnvVar, dir.c_str(), 1);
  JobConfig c;
  c.form = realform::standard_form_catalog("su(2,2)");
  c.checks = {"blattner"};
  auto first = run(c).to_json().dump();
  auto second = run(c).to_json().dump();
  c.use_cache = false;
  auto uncached = run(c).to_json().dump();
  ::unsetenv(rootdata::WeylCache::kEnvVar);
  CHECK(first == second);
  CHECK(first == uncached);
  CHECK(std::filesystem::exists(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("config validation") {
  auto good = json::parse(R"j({"form":"su(2,1)","H":[2,2],"lambda":[[0,0]],"N":3,"seed":5,"checks":["vanishing"]})j");
  auto c = config_from_json(good);
  CHECK(c.N == 3);
  CHECK(c.seed == 5);
  CHECK(c.H == grading::GradingElement{{2, 2}});
  CHECK(c.lambdas.size() == 1);
  auto search = config_from_json(json::parse(R"j({"type":"A","rank":1,"epsilon":[-1],"H":"search"})j"));
  CHECK_FALSE(search.H.has_value());

  const auto bad_eps = json::parse(R"j({"type":"A","rank":2,"epsilon":[-1]})j");
  const auto bad_H = json::parse(R"j({"form":"su(2,1)","H":[2]})j");
  const auto bad_check = json::parse(R"j({"form":"su(2,1)","checks":["nope"]})j");
  const auto bad_lambda = json::parse(R"j({"form":"su(2,1)","lambda":[[1]]})j");
  CHECK_THROWS_AS(config_from_json(bad_eps), InputError);
  CHECK_THROWS_AS(config_from_json(bad_H), InputError);
  CHECK_THROWS_AS(config_from_json(bad_check), InputError);
  CHECK_THROWS_AS(config_from_json(bad_lambda), InputError);
  CHECK_THROWS_AS(verify_form(realform::standard_form_catalog("sl(3,R)")), OutOfScopeError);
}

TEST_CASE("Q∩K-dominant weight enumeration") {
  auto f = realform::standard_form_catalog("su(2,1)");
  auto kd = realform::k_root_datum(realform::cartan_decomposition(f.rs, f.eps));
  auto gd = grading::grade(f.rs, f.eps, grading::GradingElement{{2, 2}});
  auto ws = qk_dominant_weights(gd, kd, 1);
  CHECK_FALSE(ws.empty());
  CHECK(std::find(ws.begin(), ws.end(), rootdata::Weight{{0, 0}}) != ws.end());
  auto pd = grading::parabolic(gd);
  for (const auto& w : ws) CHECK(grading::is_QK_dominant(w, pd, kd));
}

TEST_CASE("verify-form on the pinned forms") {
  for (const auto& name : realform::pinned_forms()) {
    CAPTURE(name);
    auto r = verify_form(realform::standard_form_catalog(name), 3, 4, 3);
    CHECK(r.exit_code() == 0);
    CHECK_FALSE(r.gradings.empty());
  }
}
