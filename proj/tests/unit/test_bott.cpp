#include <doctest.h>

#include <random>

#include "ksr/bott.hpp"

using namespace ksr;
using namespace ksr::bott;
using rootdata::RootSystem;
using rootdata::TypeLabel;

namespace {

Subsystem full(TypeLabel t, int n) { return Subsystem::full(RootSystem::build(t, n)); }

}  // namespace

TEST_CASE("line cohomology on P^1") {
  auto a1 = full(TypeLabel::A, 1);
  for (long n = 0; n <= 6; ++n) {
    auto res = line_cohomology(Weight{{n}}, a1);
    REQUIRE(res.per_degree.size() == 1);
    CHECK(res.per_degree.at(0) == VirtualCharacter::irreducible(Weight{{n}}));
    CHECK(res.per_degree.at(0).dimension(a1) == n + 1);
  }
  CHECK(line_cohomology(Weight{{-1}}, a1).vanishes());
  auto h1 = line_cohomology(Weight{{-3}}, a1);
  REQUIRE(h1.per_degree.count(1));
  CHECK(h1.per_degree.at(1) == VirtualCharacter::irreducible(Weight{{1}}));
  CHECK(h1.per_degree.at(1).dimension(a1) == 2);
  // dim H^1(P^1, O(-n-2)) = n + 1
  for (long n = 0; n <= 6; ++n) CHECK(line_cohomology(Weight{{-n - 2}}, a1).per_degree.at(1).dimension(a1) == n + 1);
}

TEST_CASE("euler of weights examples") {
  auto a1 = full(TypeLabel::A, 1);
  CHECK(euler_of_weights({{Weight{{0}}, 1}}, a1) == VirtualCharacter::irreducible(Weight{{0}}));
  CHECK(euler_of_weights({{Weight{{-2}}, 1}}, a1) == -VirtualCharacter::irreducible(Weight{{0}}));
  CHECK(euler_of_weights({{Weight{{1}}, 1}, {Weight{{-3}}, 1}}, a1).empty());
}

TEST_CASE("Bott concentration, degree bound and Weyl dimension") {
  std::mt19937_64 rng(11);
  for (auto [t, n] : std::vector<std::pair<TypeLabel, int>>{
           {TypeLabel::A, 2}, {TypeLabel::A, 3}, {TypeLabel::B, 2}, {TypeLabel::C, 3}, {TypeLabel::G, 2}}) {
    auto sub = full(t, n);
    std::uniform_int_distribution<long> coord(-6, 6);
    for (int trial = 0; trial < 60; ++trial) {
      Weight l = Weight::zero(n);
      for (auto& x : l.fw) x = coord(rng);
      auto res = line_cohomology(l, sub);
      CHECK(res.per_degree.size() <= 1);
      for (const auto& [deg, chi] : res.per_degree) {
        CHECK(deg <= static_cast<int>(sub.num_positive()));
        CHECK(chi.all_nonnegative());
        CHECK(chi.terms().size() == 1);
      }
      if (sub.is_dominant(l)) {
        REQUIRE(res.per_degree.count(0));
        CHECK(res.per_degree.at(0).dimension(sub) == rootdata::weyl_dimension(l, sub));
      }
    }
  }
}

TEST_CASE("Serre duality at Euler level, 200 random weights in ranks <= 3") {
  std::mt19937_64 rng(2024);
  std::vector<Subsystem> subs{full(TypeLabel::A, 1), full(TypeLabel::A, 2), full(TypeLabel::B, 2),
                              full(TypeLabel::G, 2), full(TypeLabel::A, 3), full(TypeLabel::C, 3),
                              full(TypeLabel::B, 3)};
  // A proper subsystem too: the compact roots of su(2,1).
  subs.emplace_back(RootSystem::build(TypeLabel::A, 2), std::vector<rootdata::Root>{{{1, 1}}});
  std::uniform_int_distribution<long> coord(-7, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& sub = subs[static_cast<std::size_t>(trial) % subs.size()];
    Weight l = Weight::zero(sub.ambient().rank());
    for (auto& x : l.fw) x = coord(rng);
    auto lhs = euler_of_weights({{l, 1}}, sub);
    auto rhs = euler_of_weights({{-l - sub.two_rho(), 1}}, sub).dual(sub);
    if (sub.num_positive() % 2 == 1) rhs = -rhs;
    CAPTURE(rootdata::to_string(l));
    CHECK(lhs == rhs);
  }
}
