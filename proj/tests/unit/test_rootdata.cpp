#include <random>
#include <set>

#include "doctest.h"
#include "ksr/errors.hpp"
#include "ksr/rootdata.hpp"

using namespace ksr::rootdata;

namespace {

Root R(std::vector<int> c) { return Root{std::move(c)}; }
Weight W(std::vector<long> c) { return Weight{std::move(c)}; }

std::vector<RootSystem> small_systems() {
  std::vector<RootSystem> out;
  for (int n = 1; n <= 3; ++n) {
    out.push_back(RootSystem::build(TypeLabel::A, n));
    out.push_back(RootSystem::build(TypeLabel::B, n));
    out.push_back(RootSystem::build(TypeLabel::C, n));
  }
  out.push_back(RootSystem::build(TypeLabel::D, 3));
  out.push_back(RootSystem::build(TypeLabel::G, 2));
  return out;
}

// Independent count: enumerate multiplicity vectors directly.
long naive_partition(const Weight& mu, const std::vector<Weight>& S, const RootSystem& rs) {
  auto height = [&](const Weight& w) {
    ksr::Rational h = 0;
    for (const auto& c : rs.root_coords(w)) h += c;
    return h;
  };
  const ksr::Rational target = height(mu);
  std::vector<long> bound;
  for (const auto& s : S) {
    ksr::Rational b = target / height(s);
    bound.push_back(static_cast<long>(mpz_class(b.get_num() / b.get_den()).get_si()));
  }
  long count = 0;
  std::vector<long> n(S.size(), 0);
  while (true) {
    Weight sum = Weight::zero(rs.rank());
    for (std::size_t i = 0; i < S.size(); ++i) sum += n[i] * S[i];
    if (sum == mu) ++count;
    std::size_t k = 0;
    while (k < n.size() && n[k] >= bound[k]) n[k++] = 0;
    if (k == n.size()) break;
    ++n[k];
  }
  return count;
}

std::vector<Weight> dominant_weights_up_to(const RootSystem& rs, long level) {
  // All dominant lambda with <lambda, rho^vee> <= level.
  std::vector<Weight> out;
  Subsystem full = Subsystem::full(rs);
  std::vector<long> n(static_cast<std::size_t>(rs.rank()), 0);
  while (true) {
    Weight w{n};
    long s = 0;
    for (const auto& beta : rs.positive_roots()) s += rs.pairing(w, beta);
    // <lambda, 2 rho^vee> = sum over positive coroots.
    if (s <= 2 * level) out.push_back(w);
    std::size_t k = 0;
    while (k < n.size() && n[k] == level) n[k++] = 0;
    if (k == n.size()) break;
    ++n[k];
  }
  return out;
}

}  // namespace

TEST_CASE("build_root_system: standard small systems") {
  auto a1 = RootSystem::build(TypeLabel::A, 1);
  CHECK(a1.positive_roots() == std::vector<Root>{R({1})});

  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK(a2.positive_roots() == std::vector<Root>{R({1, 0}), R({0, 1}), R({1, 1})});

  auto c2 = RootSystem::build(TypeLabel::C, 2);
  CHECK(c2.positive_roots() == std::vector<Root>{R({1, 0}), R({0, 1}), R({1, 1}), R({2, 1})});

  CHECK_THROWS_AS(RootSystem::build(TypeLabel::D, 2), ksr::InputError);
  CHECK_THROWS_AS(RootSystem::build(TypeLabel::A, 0), ksr::InputError);
  CHECK_THROWS_AS(RootSystem::build(TypeLabel::G, 3), ksr::InputError);
  CHECK_THROWS_AS(parse_type_label("E"), ksr::InputError);
}

TEST_CASE("root system invariants across types") {
  const std::map<std::string, std::size_t> counts = {{"A4", 10}, {"B4", 16}, {"C4", 16}, {"D4", 12},
                                                     {"D5", 20}, {"G2", 6},  {"B2", 4}};
  std::vector<RootSystem> systems = small_systems();
  systems.push_back(RootSystem::build(TypeLabel::A, 4));
  systems.push_back(RootSystem::build(TypeLabel::B, 4));
  systems.push_back(RootSystem::build(TypeLabel::C, 4));
  systems.push_back(RootSystem::build(TypeLabel::D, 4));
  systems.push_back(RootSystem::build(TypeLabel::D, 5));
  for (const auto& rs : systems) {
    CAPTURE(rs.name());
    const auto& A = rs.cartan_matrix();
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) {
        if (i == j) CHECK(A[i][j] == 2);
        else CHECK(A[i][j] <= 0);
      }
    if (counts.count(rs.name())) CHECK(rs.positive_roots().size() == counts.at(rs.name()));
    for (int i = 0; i < rs.rank(); ++i) {
      Root e{std::vector<int>(static_cast<std::size_t>(rs.rank()), 0)};
      e.simple_coords[static_cast<std::size_t>(i)] = 1;
      CHECK(rs.simple_root(i) == e);
    }
    // Closure under addition.
    auto all = rs.roots();
    for (const auto& a : all)
      for (const auto& b : all) {
        Root s = a + b;
        if (rs.is_root(s)) CHECK((s.is_positive() ? rs.positive_index(s).has_value() : true));
      }
    // Root/weight round trip.
    for (const auto& r : all) CHECK(rs.root_from_weight(rs.to_weight(r)) == r);
    for (const auto& w : dominant_weights_up_to(rs, 2))
      CHECK(rs.from_root_coords(rs.root_coords(w)) == w);
  }
}

TEST_CASE("pairing examples") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK(a2.pairing(W({1, 0}), R({1, 0})) == 1);
  CHECK(a2.pairing(a2.to_weight(R({1, 0})), R({0, 1})) == -1);
  auto a1 = RootSystem::build(TypeLabel::A, 1);
  CHECK(a1.pairing(W({1}), R({1})) == 1);
  CHECK_THROWS_AS(a2.pairing(W({1, 0}), R({2, 1})), ksr::InputError);
  // Linearity in lambda.
  auto g2 = RootSystem::build(TypeLabel::G, 2);
  for (const auto& beta : g2.roots())
    CHECK(g2.pairing(W({3, -1}) + W({2, 5}), beta) == g2.pairing(W({3, -1}), beta) + g2.pairing(W({2, 5}), beta));
}

TEST_CASE("make_dominant examples on A1") {
  auto a1 = Subsystem::full(RootSystem::build(TypeLabel::A, 1));
  CHECK(make_dominant(W({-1}), a1).singular);
  auto id = make_dominant(W({3}), a1);
  CHECK_FALSE(id.singular);
  CHECK(id.w.length() == 0);
  CHECK(id.dominant == W({3}));
  auto s = make_dominant(W({-3}), a1);
  CHECK_FALSE(s.singular);
  CHECK(s.w.length() == 1);
  CHECK(s.dominant == W({1}));
}

TEST_CASE("Weyl group: length equals number of positive roots sent negative") {
  for (const auto& rs : small_systems()) {
    CAPTURE(rs.name());
    Subsystem full = Subsystem::full(rs);
    auto elems = full.elements();
    std::set<Weight> images;
    for (const auto& w : elems) {
      // Inversions counted via the image of the regular vector 2 rho.
      Weight image = full.apply(w, full.two_rho());
      images.insert(image);
      int negated = 0;
      for (const auto& beta : rs.positive_roots()) {
        Root img = rs.root_from_weight(full.apply(w, rs.to_weight(beta)));
        if (img.is_negative()) ++negated;
      }
      CHECK(negated == w.length());
      // Sign of prod over positive roots of <w(2rho), beta^vee> matches (-1)^length.
      int sign = 1;
      for (const auto& beta : rs.positive_roots()) sign *= rs.pairing(image, beta) > 0 ? 1 : -1;
      CHECK(sign == (w.length() % 2 ? -1 : 1));
      // Dot-action dominance recovers the element from its chamber.
      auto back = make_dominant(full.dot(w, Weight::zero(rs.rank())), full);
      CHECK_FALSE(back.singular);
      CHECK(back.dominant.is_zero());
      CHECK(back.w.length() == w.length());
    }
    CHECK(images.size() == elems.size());
  }
  CHECK(Subsystem::full(RootSystem::build(TypeLabel::B, 3)).elements().size() == 48);
  CHECK(Subsystem::full(RootSystem::build(TypeLabel::G, 2)).elements().size() == 12);
}

TEST_CASE("weyl_dimension examples") {
  auto a1 = Subsystem::full(RootSystem::build(TypeLabel::A, 1));
  for (long n = 0; n < 6; ++n) CHECK(weyl_dimension(W({n}), a1) == n + 1);
  auto a2 = Subsystem::full(RootSystem::build(TypeLabel::A, 2));
  CHECK(weyl_dimension(W({1, 0}), a2) == 3);
  CHECK(weyl_dimension(W({1, 1}), a2) == 8);
  CHECK_THROWS_AS(weyl_dimension(W({-1, 0}), a2), ksr::InputError);
  auto g2 = Subsystem::full(RootSystem::build(TypeLabel::G, 2));
  CHECK(weyl_dimension(W({1, 0}), g2) == 7);
  CHECK(weyl_dimension(W({0, 1}), g2) == 14);
}

TEST_CASE("weyl_dimension agrees with Freudenthal weight count") {
  for (const auto& rs : small_systems()) {
    Subsystem full = Subsystem::full(rs);
    for (const auto& lambda : dominant_weights_up_to(rs, 6)) {
      CAPTURE(rs.name());
      CAPTURE(to_string(lambda));
      long total = 0;
      for (const auto& [mu, m] : irreducible_weights(lambda, full)) {
        CHECK(m > 0);
        total += m;
      }
      CHECK(total == weyl_dimension(lambda, full));
    }
  }
}

TEST_CASE("Freudenthal multiplicities for the A2 adjoint") {
  auto a2 = Subsystem::full(RootSystem::build(TypeLabel::A, 2));
  auto wts = irreducible_weights(W({1, 1}), a2);
  CHECK(wts.at(W({0, 0})) == 2);
  CHECK(wts.size() == 7);
}

TEST_CASE("kostant_partition examples") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  const Weight a1 = a2.to_weight(R({1, 0}));
  const Weight a2w = a2.to_weight(R({0, 1}));
  const std::vector<Weight> S = {a1, a2w, a1 + a2w};
  CHECK(kostant_partition(Weight::zero(2), S, a2) == 1);
  CHECK(kostant_partition(3 * a1, {a1}, a2) == 1);
  CHECK(kostant_partition(a1 + a2w, S, a2) == 2);
  CHECK(kostant_partition(-a1, S, a2) == 0);
  CHECK_THROWS_AS(kostant_partition(a1, {a1, -a1}, a2), ksr::InputError);
}

TEST_CASE("kostant_partition recursion matches naive enumeration") {
  std::mt19937 rng(11);
  for (const auto& rs : small_systems()) {
    std::vector<Weight> S;
    for (const auto& r : rs.positive_roots()) S.push_back(rs.to_weight(r));
    S.push_back(S.front());  // multiset: repeat one element
    PartitionCounter counter(rs, S);
    for (int trial = 0; trial < 25; ++trial) {
      Weight mu = Weight::zero(rs.rank());
      std::uniform_int_distribution<int> pick(0, static_cast<int>(rs.rank()) - 1);
      std::uniform_int_distribution<int> steps(0, 4);
      for (int s = steps(rng); s > 0; --s) mu += rs.to_weight(rs.simple_root(pick(rng)));
      CAPTURE(rs.name());
      CAPTURE(to_string(mu));
      CHECK(counter.count(mu) == naive_partition(mu, S, rs));
    }
  }
}

TEST_CASE("decompose_character examples on A1") {
  auto a1 = Subsystem::full(RootSystem::build(TypeLabel::A, 1));
  auto v2 = decompose_character({{W({2}), 1}, {W({0}), 1}, {W({-2}), 1}}, a1);
  CHECK(v2 == VirtualCharacter::irreducible(W({2})));
  auto two = decompose_character({{W({1}), 2}, {W({-1}), 2}}, a1);
  CHECK(two == VirtualCharacter::irreducible(W({1}), 2));
  auto cg = decompose_character({{W({2}), 1}, {W({0}), 2}, {W({-2}), 1}}, a1);
  CHECK(cg.multiplicity(W({2})) == 1);
  CHECK(cg.multiplicity(W({0})) == 1);
  CHECK_THROWS_AS(decompose_character({{W({1}), 1}}, a1), ksr::ConsistencyError);
}

TEST_CASE("decompose_character inverts weight expansion on random combinations") {
  std::mt19937 rng(5);
  for (const auto& rs : small_systems()) {
    Subsystem full = Subsystem::full(rs);
    auto pool = dominant_weights_up_to(rs, 3);
    for (int trial = 0; trial < 6; ++trial) {
      VirtualCharacter chi;
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::uniform_int_distribution<int> mult(1, 3);
      std::uniform_int_distribution<int> count(1, 4);
      for (int k = count(rng); k > 0; --k) chi.add(pool[pick(rng)], mult(rng));
      CAPTURE(rs.name());
      CHECK(decompose_character(chi.weights(full), full) == chi);
    }
  }
}

TEST_CASE("subsystems: closure and positivity are validated") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK_NOTHROW(Subsystem(a2, {R({1, 1})}));
  CHECK_THROWS_AS(Subsystem(a2, {R({1, 0}), R({0, 1})}), ksr::ConsistencyError);
  CHECK_THROWS_AS(Subsystem(a2, {R({1, 0}), R({-1, 0})}), ksr::ConsistencyError);
  Subsystem k(a2, {R({1, 1})});
  CHECK(k.two_rho() == W({1, 1}));
  CHECK(k.simple_roots().size() == 1);
  CHECK(k.elements().size() == 2);
  // dual of V_{alpha_1} for K = GL(2) inside SL(3) is V_{alpha_2}.
  CHECK(k.dual(a2.to_weight(R({1, 0}))) == a2.to_weight(R({0, 1})));
}
