#include <doctest.h>

#include "ksr/errors.hpp"
#include "ksr/grading.hpp"

using namespace ksr;
using namespace ksr::grading;
using realform::standard_form_catalog;
using rootdata::TypeLabel;

namespace {

Root R(std::vector<int> c) { return Root{std::move(c)}; }

struct Form {
  RootSystem rs;
  EqualRankInvolution eps;
  KRootDatum kd;
};

Form form(const std::string& name) {
  auto f = standard_form_catalog(name);
  return Form{f.rs, f.eps, realform::k_root_datum(realform::cartan_decomposition(f.rs, f.eps))};
}

Form custom(TypeLabel t, int n, std::vector<int> eps) {
  auto rs = RootSystem::build(t, n);
  EqualRankInvolution e{std::move(eps)};
  return Form{rs, e, realform::k_root_datum(realform::cartan_decomposition(rs, e))};
}

}  // namespace

TEST_CASE("grade examples") {
  auto su11 = form("su(1,1)");
  auto gd = grade(su11.rs, su11.eps, {{2}});
  CHECK(gd.blocks.at(2).p_roots == std::vector<Root>{R({1})});
  CHECK(gd.blocks.at(2).k_roots.empty());
  CHECK(gd.blocks.at(-2).p_roots == std::vector<Root>{R({-1})});
  CHECK(gd.dim_k(0) == 1);
  CHECK(gd.u_cap_p == std::vector<Root>{R({1})});
  CHECK(gd.u_cap_k.empty());

  auto su21 = form("su(2,1)");
  auto gd2 = grade(su21.rs, su21.eps, {{2, 2}});
  CHECK(gd2.blocks.at(2).p_roots == std::vector<Root>{R({1, 0}), R({0, 1})});
  CHECK(gd2.blocks.at(2).k_roots.empty());
  CHECK(gd2.blocks.at(4).k_roots == std::vector<Root>{R({1, 1})});
  CHECK(gd2.u_cap_p.size() == 2);
  CHECK(gd2.u_cap_k == std::vector<Root>{R({1, 1})});

  auto gd0 = grade(su21.rs, su21.eps, {{0, 0}});
  CHECK(gd0.u_roots.empty());
  CHECK(gd0.dim_g(0) == 8);
}

TEST_CASE("grade errors") {
  auto su21 = form("su(2,1)");
  CHECK_THROWS_AS(grade(su21.rs, su21.eps, {{2}}), InputError);
  CHECK_THROWS_AS(grade(su21.rs, su21.eps, {{1, 0}}), OddGradingError);
  CHECK_NOTHROW(grade(su21.rs, su21.eps, {{1, 0}}, Parity::Any));
}

TEST_CASE("parabolic examples") {
  auto su11 = form("su(1,1)");
  auto pd = parabolic(grade(su11.rs, su11.eps, {{2}}));
  CHECK(pd.two_rho_u_p == Weight{{2}});
  CHECK(pd.two_rho_u_k == Weight{{0}});
  CHECK(pd.canonical_weight == Weight{{2}});

  auto su21 = form("su(2,1)");
  auto pd2 = parabolic(grade(su21.rs, su21.eps, {{2, 2}}));
  CHECK(pd2.two_rho_u_p == su21.rs.to_weight(R({1, 1})));
  CHECK(pd2.two_rho_u_k == su21.rs.to_weight(R({1, 1})));
  CHECK(pd2.canonical_weight == Weight{{0, 0}});
  CHECK(conormal_canonical_weight(su21.rs, su21.eps, {{2, 2}}) == Weight{{0, 0}});

  auto a2 = custom(TypeLabel::A, 2, {1, 1});
  auto pd3 = parabolic(grade(a2.rs, a2.eps, {{2, 0}}));
  CHECK(pd3.two_rho_u_p == Weight{{0, 0}});
  CHECK(pd3.canonical_weight == -pd3.two_rho_u_k);
}

TEST_CASE("Q cap K dominance examples") {
  auto su21 = form("su(2,1)");
  auto pd = parabolic(grade(su21.rs, su21.eps, {{2, 2}}));
  CHECK(pd.simple_l_k_roots.empty());
  CHECK(is_QK_dominant(Weight{{0, 0}}, pd, su21.kd));
  CHECK(is_QK_dominant(su21.rs.to_weight(R({1, 0})), pd, su21.kd));
  CHECK_FALSE(is_QK_dominant(Weight{{-1, 0}}, pd, su21.kd));

  auto a2 = custom(TypeLabel::A, 2, {1, 1});
  auto pdc = parabolic(grade(a2.rs, a2.eps, {{2, 0}}));
  CHECK(pdc.simple_l_k_roots == std::vector<Root>{R({0, 1})});
  CHECK(is_QK_dominant(Weight{{0, 0}}, pdc, a2.kd));
  CHECK_FALSE(is_QK_dominant(Weight{{0, 1}}, pdc, a2.kd));
  CHECK(is_QK_dominant(Weight{{1, 0}}, pdc, a2.kd));
}

TEST_CASE("search examples") {
  auto su11 = form("su(1,1)");
  CHECK(search_even_gradings(su11.rs, su11.eps) == std::vector<GradingElement>{{{2}}});
  auto su21 = form("su(2,1)");
  auto found = search_even_gradings(su21.rs, su21.eps);
  CHECK(std::find(found.begin(), found.end(), GradingElement{{2, 2}}) != found.end());
  for (const auto& H : found) CHECK(grade(su21.rs, su21.eps, H).dim_p(2) > 0);
  auto compact = custom(TypeLabel::A, 3, {1, 1, 1});
  CHECK(search_even_gradings(compact.rs, compact.eps).empty());
  CHECK(std::is_sorted(found.begin(), found.end()));
}

TEST_CASE("k-chamber search finds both su(1,1) chambers and non-dominant principal gradings") {
  auto su11 = form("su(1,1)");
  auto both = search_even_gradings(su11.rs, su11.eps, 2, SearchMode::KChamber);
  CHECK(both == std::vector<GradingElement>{{{-2}}, {{2}}});
  auto sp4 = form("sp(4,R)");
  auto found = search_even_gradings(sp4.rs, sp4.eps, 2, SearchMode::KChamber);
  CHECK(std::find(found.begin(), found.end(), GradingElement{{4, -2}}) != found.end());
  CHECK(std::find(found.begin(), found.end(), GradingElement{{4, -6}}) != found.end());
  for (const auto& H : found) CHECK(grade(sp4.rs, sp4.eps, H).k_dominant);
}

TEST_CASE("graded decomposition invariants over catalog forms and small H") {
  std::vector<Form> forms;
  for (const char* n : {"su(1,1)", "su(2,1)", "su(2,2)", "su(3,1)", "sp(4,R)", "sp(6,R)", "sp(1,1)", "sp(2,1)",
                        "so*(6)", "so*(8)", "su(3)", "sp(2)"})
    forms.push_back(form(n));
  for (const auto& f : forms) {
    const int n = f.rs.rank();
    std::vector<long> h(static_cast<std::size_t>(n), 0);
    while (true) {
      GradingElement H{h};
      auto gd = grade(f.rs, f.eps, H, Parity::Any);
      CAPTURE(f.rs.name());
      CAPTURE(to_string(H));
      REQUIRE(check_invariants(gd).empty());
      auto pd = parabolic(gd);
      CHECK(pd.contains_positive_borel);
      CHECK(pd.theta_stable);
      CHECK(pd.canonical_weight == pd.two_rho_u_p - pd.two_rho_u_k);
      if (gd.u_cap_k.empty()) CHECK(pd.canonical_weight == pd.two_rho_u_p);
      if (gd.u_cap_p.empty()) CHECK(pd.canonical_weight == -pd.two_rho_u_k);
      std::size_t i = 0;
      while (i < h.size() && h[i] == 2) h[i++] = 0;
      if (i == h.size()) break;
      ++h[i];
    }
  }
}

TEST_CASE("compact canonical weight with regular H is minus the sum of positive K-roots") {
  for (auto [t, n] : std::vector<std::pair<TypeLabel, int>>{{TypeLabel::A, 3}, {TypeLabel::C, 3}, {TypeLabel::G, 2}}) {
    auto f = custom(t, n, std::vector<int>(static_cast<std::size_t>(n), 1));
    auto pd = parabolic(grade(f.rs, f.eps, {std::vector<long>(static_cast<std::size_t>(n), 2)}));
    CHECK(pd.canonical_weight == -f.kd.two_rho_K());
  }
}
