#pragma once

// Root systems of classical type (plus G2), weights in the fundamental-weight
// basis, closed subsystems with their own Weyl group, Freudenthal weight
// multiplicities, Kostant partition functions and virtual characters.
//
// Conventions
//   * Simple roots follow Bourbaki: A_n, B_n (alpha_n short), C_n (alpha_n
//     long), D_n (alpha_{n-1}, alpha_n the two spin nodes), G2 (alpha_1 short).
//   * cartan_matrix()[i][j] = <alpha_j, alpha_i^vee>, so column j is alpha_j
//     written in fundamental-weight coordinates.
//   * Positive roots are listed by height, ties broken by descending simple
//     coordinates; the first `rank` entries are the simple roots.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ksr/rational.hpp"

namespace ksr::rootdata {

enum class TypeLabel { A, B, C, D, G };

TypeLabel parse_type_label(const std::string& text);
std::string to_string(TypeLabel t);

/// A root written in simple-root coordinates.
struct Root {
  std::vector<int> simple_coords;

  bool is_positive() const;
  bool is_negative() const;
  int height() const;
  Root operator-() const;
  friend Root operator+(const Root& a, const Root& b);
  friend Root operator-(const Root& a, const Root& b) { return a + (-b); }
  friend auto operator<=>(const Root&, const Root&) = default;
};

/// An integral weight in fundamental-weight coordinates.
struct Weight {
  std::vector<long> fw;

  static Weight zero(int rank) { return Weight{std::vector<long>(static_cast<std::size_t>(rank), 0)}; }
  bool is_zero() const;
  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  Weight operator-() const;
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(long s, Weight a) {
    for (auto& x : a.fw) x *= s;
    return a;
  }
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

std::string to_string(const Weight& w);

/// A Weyl group element stored as a word in the simple reflections of some
/// (sub)system. `word[0]` is applied first, so the element is
/// s_{word[last]} ... s_{word[0]}.
struct WeylElement {
  std::vector<int> word;
  int length() const { return static_cast<int>(word.size()); }
  friend bool operator==(const WeylElement&, const WeylElement&) = default;
};

class RootSystem {
 public:
  /// Throws InputError for an invalid label/rank combination.
  static RootSystem build(TypeLabel type, int rank);

  TypeLabel type() const noexcept { return type_; }
  int rank() const noexcept { return rank_; }
  std::string name() const;
  const std::vector<std::vector<int>>& cartan_matrix() const noexcept { return cartan_; }
  const std::vector<Root>& positive_roots() const noexcept { return positive_; }
  /// Positive roots followed by their negatives, in the same order.
  std::vector<Root> roots() const;
  const Root& simple_root(int i) const { return positive_.at(static_cast<std::size_t>(i)); }
  /// Squared length of simple root i under the normalization where the short
  /// roots of A/D/C/G2 have length^2 2 and B_n's short root has length^2 1.
  int simple_length2(int i) const { return gram_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(i)); }
  int dimension() const noexcept { return rank_ + 2 * static_cast<int>(positive_.size()); }

  bool is_root(const Root& r) const;
  /// Index into positive_roots() of r or -r.
  std::optional<std::size_t> positive_index(const Root& r) const;

  Weight to_weight(const Root& r) const;
  /// <lambda, alpha^vee>; throws InputError when alpha is not a root.
  long pairing(const Weight& lambda, const Root& alpha) const;
  /// Exact coordinates of a weight over the simple roots.
  RationalVector root_coords(const Weight& w) const;
  /// Inverse of root_coords; throws InputError when the result is not integral.
  Weight from_root_coords(const RationalVector& coords) const;
  /// Invariant form on weights given by (possibly rational) fundamental-weight coordinates.
  Rational inner(const RationalVector& a_fw, const RationalVector& b_fw) const;
  Rational inner(const Weight& a, const Weight& b) const;
  Root root_from_weight(const Weight& w) const;

 private:
  TypeLabel type_{};
  int rank_ = 0;
  std::vector<std::vector<int>> gram_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> positive_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<RationalVector> fw_to_root_;  // row i: omega_i in root coordinates
};

/// Result of the rho-shifted dominance step.
struct DominanceResult {
  WeylElement w;
  Weight dominant;  // w(lambda + rho) - rho when regular; meaningless when singular
  bool singular = false;
};

/// A closed subsystem of an ambient root system with the positive system
/// inherited from the ambient one. Weights live in the ambient lattice.
class Subsystem {
 public:
  /// Throws ConsistencyError when the roots are not closed or not a valid
  /// positive system.
  Subsystem(RootSystem ambient, std::vector<Root> positive_roots);
  static Subsystem full(const RootSystem& rs);

  const RootSystem& ambient() const noexcept { return ambient_; }
  const std::vector<Root>& positive_roots() const noexcept { return positive_; }
  const std::vector<Root>& simple_roots() const noexcept { return simple_; }
  std::size_t num_positive() const noexcept { return positive_.size(); }
  /// 2 rho of the subsystem; rho itself may be half-integral.
  const Weight& two_rho() const noexcept { return two_rho_; }
  /// Compact label such as "A2|+[1,0][0,1]" used as a cache key.
  std::string signature() const;

  long pairing_simple(const Weight& lambda, std::size_t i) const;
  bool is_dominant(const Weight& lambda) const;
  Weight reflect(const Weight& lambda, std::size_t i) const;
  Weight dot_reflect(const Weight& lambda, std::size_t i) const;
  Weight apply(const WeylElement& w, const Weight& lambda) const;
  Weight dot(const WeylElement& w, const Weight& lambda) const;

  /// Plain (unshifted) dominant conjugate.
  Weight dominant_conjugate(const Weight& lambda) const;
  /// Highest weight of the contragredient of V_lambda.
  Weight dual(const Weight& lambda) const { return dominant_conjugate(-lambda); }
  std::vector<Weight> orbit(const Weight& lambda) const;

  /// Coordinates of a root-lattice vector over the simple roots of the
  /// subsystem, or nullopt when it is not in their rational span.
  std::optional<RationalVector> simple_coords(const Weight& diff) const;

  /// Every element, enumerated by breadth-first search over chambers.
  std::vector<WeylElement> elements() const;

 private:
  RootSystem ambient_;
  std::vector<Root> positive_;
  std::vector<Weight> positive_weights_;
  std::vector<Root> simple_;
  std::vector<Weight> simple_weights_;
  Weight two_rho_;
};

/// Bott's regularity step for `sub`; see DominanceResult.
DominanceResult make_dominant(const Weight& lambda, const Subsystem& sub);

/// Product formula; throws InputError when lambda is not dominant.
long weyl_dimension(const Weight& lambda, const Subsystem& sub);

using WeightMultiset = std::map<Weight, long>;

/// All weights of the irreducible module of highest weight lambda with
/// multiplicities (Freudenthal). Throws InputError when lambda is not dominant.
WeightMultiset irreducible_weights(const Weight& lambda, const Subsystem& sub);

/// Linear functional on weights used to order partition searches:
/// value(nu) = sum_i root_coords(nu)_i * grading[i].
struct Grading {
  std::vector<long> on_simple_roots;
};

/// Number of ways to write mu as a nonnegative integer combination of the
/// multiset S. Requires a functional that is strictly positive on S; the
/// default is root height. Throws InputError when positivity fails.
long kostant_partition(const Weight& mu, const std::vector<Weight>& S, const RootSystem& rs,
                       std::optional<Grading> grading = std::nullopt);

/// Memoizing partition counter over a fixed multiset, for repeated queries.
class PartitionCounter {
 public:
  PartitionCounter(const RootSystem& rs, std::vector<Weight> S, std::optional<Grading> grading = std::nullopt);
  long count(const Weight& mu) const;
  /// Same count restricted to combinations with exactly `parts` summands.
  long count_with_parts(const Weight& mu, int parts) const;

 private:
  long count_from(std::size_t j, const Weight& mu, int parts) const;
  Rational value(const Weight& w) const;

  const RootSystem* rs_;
  std::vector<Weight> S_;
  std::vector<Rational> values_;
  Grading grading_;
  mutable std::map<std::tuple<std::size_t, Weight, int>, long> memo_;
};

/// Integer combination of irreducible characters, keyed by highest weight.
class VirtualCharacter {
 public:
  VirtualCharacter() = default;
  static VirtualCharacter irreducible(const Weight& highest, long mult = 1);

  const std::map<Weight, long>& terms() const noexcept { return terms_; }
  long multiplicity(const Weight& highest) const;
  bool empty() const noexcept { return terms_.empty(); }
  void add(const Weight& highest, long mult);

  VirtualCharacter& operator+=(const VirtualCharacter& o);
  VirtualCharacter& operator-=(const VirtualCharacter& o);
  VirtualCharacter operator-() const;
  friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
  friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
  friend bool operator==(const VirtualCharacter&, const VirtualCharacter&) = default;

  VirtualCharacter dual(const Subsystem& sub) const;
  long dimension(const Subsystem& sub) const;
  /// Expands into the full weight multiset (signed multiplicities).
  WeightMultiset weights(const Subsystem& sub) const;
  bool all_nonnegative() const;

 private:
  std::map<Weight, long> terms_;
};

/// Inverse of VirtualCharacter::weights by leading-term subtraction. Throws
/// ConsistencyError when the multiset is not Weyl-invariant.
VirtualCharacter decompose_character(const WeightMultiset& weights, const Subsystem& sub);

}  // namespace ksr::rootdata
