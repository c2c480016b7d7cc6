#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ksr/errors.hpp"
#include "ksr/realform.hpp"
#include "ksr/weyl_cache.hpp"

using namespace ksr;
using namespace ksr::realform;
using rootdata::TypeLabel;

namespace {

Root R(std::vector<int> c) { return Root{std::move(c)}; }

std::vector<std::pair<TypeLabel, int>> small_systems() {
  return {{TypeLabel::A, 1}, {TypeLabel::A, 2}, {TypeLabel::A, 3}, {TypeLabel::A, 4}, {TypeLabel::B, 2},
          {TypeLabel::B, 3}, {TypeLabel::B, 4}, {TypeLabel::C, 2}, {TypeLabel::C, 3}, {TypeLabel::C, 4},
          {TypeLabel::D, 4}, {TypeLabel::G, 2}};
}

}  // namespace

TEST_CASE("cartan decomposition examples") {
  auto a1 = RootSystem::build(TypeLabel::A, 1);
  auto compact = cartan_decomposition(a1, {{1}});
  CHECK(compact.k_roots.size() == 2);
  CHECK(compact.p_roots.empty());

  auto su11 = cartan_decomposition(a1, {{-1}});
  CHECK(su11.k_roots.empty());
  CHECK(su11.k_dim == 1);
  CHECK(su11.p_dim == 2);

  auto su21 = cartan_decomposition(RootSystem::build(TypeLabel::A, 2), {{-1, -1}});
  CHECK(su21.k_roots == std::vector<Root>{R({1, 1}), R({-1, -1})});
  CHECK(su21.p_roots.size() == 4);
  CHECK(su21.k_dim == 4);
  CHECK(su21.p_dim == 4);
}

TEST_CASE("cartan decomposition rejects bad epsilon") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK_THROWS_AS(cartan_decomposition(a2, {{-1}}), InputError);
  CHECK_THROWS_AS(cartan_decomposition(a2, {{-1, 0}}), InputError);
}

TEST_CASE("K root datum examples") {
  auto su11 = k_root_datum(cartan_decomposition(RootSystem::build(TypeLabel::A, 1), {{-1}}));
  CHECK(su11.system.positive_roots().empty());
  CHECK(su11.rho_K == RationalVector{0});

  auto su21 = k_root_datum(cartan_decomposition(RootSystem::build(TypeLabel::A, 2), {{-1, -1}}));
  CHECK(su21.simple_k_roots() == std::vector<Root>{R({1, 1})});
  // (alpha1 + alpha2)/2 = (omega1 + omega2)/2
  CHECK(su21.rho_K == RationalVector{ratio(1, 2), ratio(1, 2)});

  auto a2 = RootSystem::build(TypeLabel::A, 2);
  auto compact = k_root_datum(cartan_decomposition(a2, {{1, 1}}));
  CHECK(compact.system.positive_roots().size() == 3);
  CHECK(compact.two_rho_K() == rootdata::Weight{{2, 2}});
}

TEST_CASE("catalog examples") {
  auto su11 = standard_form_catalog("su(1,1)");
  CHECK(su11.rs.name() == "A1");
  CHECK(su11.eps.epsilon_simple == std::vector<int>{-1});

  auto su22 = standard_form_catalog("su(2,2)");
  CHECK(su22.rs.name() == "A3");
  CHECK(su22.eps.epsilon_simple == std::vector<int>{1, -1, 1});

  auto sp4 = standard_form_catalog("sp(4,R)");
  CHECK(sp4.rs.name() == "C2");
  CHECK(sp4.eps.epsilon_simple == std::vector<int>{1, -1});
  auto kd = k_root_datum(cartan_decomposition(sp4.rs, sp4.eps));
  CHECK(kd.system.positive_roots().size() == 1);  // K = GL(2)

  CHECK(standard_form_catalog("su(2,1)").eps.epsilon_simple == std::vector<int>{-1, -1});
  CHECK(standard_form_catalog("SL(2, R)").eps.epsilon_simple == std::vector<int>{-1});
  CHECK(standard_form_catalog("sp(1,2)").eps.epsilon_simple == std::vector<int>{-1, 1, 1});
  CHECK(standard_form_catalog("so*(8)").eps.epsilon_simple == std::vector<int>{1, 1, 1, -1});
}

TEST_CASE("catalog rejections") {
  CHECK_THROWS_AS(standard_form_catalog("sl(3,R)"), OutOfScopeError);
  CHECK_THROWS_AS(standard_form_catalog("sl(2,H)"), OutOfScopeError);
  CHECK_THROWS_AS(standard_form_catalog("su*(4)"), OutOfScopeError);
  CHECK_THROWS_AS(standard_form_catalog("so(3,3)"), OutOfScopeError);
  CHECK_THROWS_AS(standard_form_catalog("e8(8)"), OutOfScopeError);
  CHECK_THROWS_AS(standard_form_catalog("banana"), OutOfScopeError);
  CHECK_THROWS_AS(standard_form_catalog("so*(4)"), InputError);
  CHECK_THROWS_AS(standard_form_catalog("sp(3,R)"), InputError);
}

TEST_CASE("catalog dimension counts") {
  struct Case {
    const char* name;
    int k_dim, p_dim;
  };
  // k = s(u(p) + u(q)), u(n), u(p) + u(q) quaternionic, u(n)
  for (auto c : std::vector<Case>{{"su(1,1)", 1, 2},
                                  {"su(2,1)", 4, 4},
                                  {"su(2,2)", 7, 8},
                                  {"su(3,2)", 12, 12},
                                  {"sp(4,R)", 4, 6},
                                  {"sp(6,R)", 9, 12},
                                  {"sp(1,1)", 6, 4},
                                  {"sp(2,1)", 13, 8},
                                  {"so*(6)", 9, 6},
                                  {"so*(8)", 16, 12}}) {
    CAPTURE(c.name);
    auto f = standard_form_catalog(c.name);
    auto cd = cartan_decomposition(f.rs, f.eps);
    CHECK(cd.k_dim == c.k_dim);
    CHECK(cd.p_dim == c.p_dim);
    CHECK(cd.k_dim + cd.p_dim == f.rs.dimension());
  }
}

TEST_CASE("epsilon is multiplicative on every sign vector up to rank 4") {
  for (auto [t, n] : small_systems()) {
    auto rs = RootSystem::build(t, n);
    const auto roots = rs.roots();
    for (int mask = 0; mask < (1 << n); ++mask) {
      EqualRankInvolution eps;
      for (int i = 0; i < n; ++i) eps.epsilon_simple.push_back((mask >> i) & 1 ? -1 : 1);
      for (const auto& a : roots)
        for (const auto& b : roots)
          if (rs.is_root(a + b)) REQUIRE(eps.sign(a + b) == eps.sign(a) * eps.sign(b));
      auto cd = cartan_decomposition(rs, eps);
      CHECK(cd.k_roots.size() + cd.p_roots.size() == roots.size());
      CHECK_NOTHROW(k_root_datum(cd));
    }
  }
}

TEST_CASE("form config parsing") {
  auto f = form_from_json(nlohmann::json::parse(R"({"type":"A","rank":2,"epsilon":[-1,-1]})"));
  CHECK(f.rs.name() == "A2");
  CHECK(f.eps.epsilon_simple == std::vector<int>{-1, -1});
  CHECK(form_from_json(nlohmann::json{{"form", "sp(4,R)"}}).rs.name() == "C2");
  const auto short_eps = nlohmann::json::parse(R"({"type":"A","rank":2,"epsilon":[-1]})");
  const auto no_rank = nlohmann::json::parse(R"({"type":"A"})");
  CHECK_THROWS_AS(form_from_json(short_eps), InputError);
  CHECK_THROWS_AS(form_from_json(no_rank), InputError);
}

TEST_CASE("weyl cache persists, validates and rejects corrupt files") {
  auto dir = std::filesystem::temp_directory_path() / "ksr_weyl_cache_test";
  std::filesystem::remove_all(dir);
  auto sub = rootdata::Subsystem::full(RootSystem::build(TypeLabel::B, 3));
  {
    rootdata::WeylCache cache(dir);
    auto elems = cache.elements(sub);
    CHECK(elems.size() == 48);
    CHECK(rootdata::validate_elements(sub, elems));
    CHECK(cache.stats().rebuilt == 1);
    cache.elements(sub);
    CHECK(cache.stats().memory_hits == 1);
  }
  {
    rootdata::WeylCache cache(dir);
    CHECK(cache.elements(sub).size() == 48);
    CHECK(cache.stats().disk_hits == 1);
  }
  {
    std::ofstream(rootdata::WeylCache(dir).file_for(sub)) << R"({"schema":1,"key":"x","words":[[0]]})";
    rootdata::WeylCache cache(dir);
    CHECK(cache.elements(sub).size() == 48);
    CHECK(cache.stats().rejected_files == 1);
    CHECK(cache.stats().rebuilt == 1);
  }
  {
    // Right key, but a missing element: closure check must fail.
    rootdata::WeylCache cache(dir);
    auto elems = cache.elements(sub);
    elems.pop_back();
    CHECK_FALSE(rootdata::validate_elements(sub, elems));
  }
  std::filesystem::remove_all(dir);
}
