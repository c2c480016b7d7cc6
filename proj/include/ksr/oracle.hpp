#pragma once

// Exact matrix models of (g, theta) for the classical equal-rank families,
// used as an independent check on the root-level computations: sl(2)-triples,
// ad(H)-gradings, orbit and nilcone dimensions, dense-orbit tests and
// Hilbert functions of orbit closures by evaluation rank. All arithmetic is
// over Q; every random choice is drawn from a seeded generator.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ksr/grading.hpp"
#include "ksr/linalg.hpp"
#include "ksr/realform.hpp"
#include "ksr/series.hpp"

namespace ksr::oracle {

using linalg::RationalMatrix;

/// A linear subspace of n x n matrices with a fixed basis and exact coordinates.
class Subspace {
 public:
  Subspace() = default;
  /// Keeps a maximal independent subset of `spanning`, in order.
  Subspace(std::size_t n, const std::vector<RationalMatrix>& spanning);

  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t matrix_size() const noexcept { return n_; }
  const std::vector<RationalMatrix>& basis() const noexcept { return basis_; }
  const RationalMatrix& operator[](std::size_t i) const { return basis_.at(i); }

  std::optional<RationalVector> coords(const RationalMatrix& m) const;
  bool contains(const RationalMatrix& m) const { return coords(m).has_value(); }
  RationalMatrix element(const RationalVector& c) const;

  /// Direct sum of subspaces with independent bases.
  static Subspace sum(std::size_t n, const std::vector<const Subspace*>& parts);

 private:
  std::size_t n_ = 0;
  std::vector<RationalMatrix> basis_;
  std::vector<std::size_t> pivot_entries_;  // flat indices that determine coordinates
  RationalMatrix inverse_;
};

struct ClassicalRealization {
  std::string family;  // "sl", "sp" or "so"
  std::size_t n = 0;   // size of the defining representation
  rootdata::TypeLabel type{};
  int rank = 0;
  std::vector<int> epsilon;
  RationalMatrix form;  // J for sp/so, empty for sl
  RationalMatrix s;     // theta = Ad(s), s^2 = 1
  Subspace g, k, p, cartan;
  std::vector<RationalMatrix> simple_coroots;                      // h_i with alpha_i(h_i) = 2
  std::vector<std::pair<std::size_t, std::size_t>> simple_entries;  // matrix unit of each simple root vector

  RationalMatrix theta(const RationalMatrix& x) const { return s * x * s; }
  /// Diagonal H in the Cartan with alpha_i(H) = h_i.
  RationalMatrix grading_matrix(const grading::GradingElement& H) const;
  /// Value of simple root i on a diagonal matrix.
  Rational simple_root_value(std::size_t i, const RationalMatrix& diag) const;
};

/// Matrix model for types A, C, D. Throws OutOfScopeError for other types.
ClassicalRealization realize(const rootdata::RootSystem& rs, const realform::EqualRankInvolution& eps);
ClassicalRealization realize(const std::string& form_name);

/// Full invariant check (s^2 = 1, theta preserves g, closure of brackets,
/// nondegenerate trace form, k = Cartan + compact part). Empty when all hold.
std::vector<std::string> validate(const ClassicalRealization& real);

/// Rational eigenvalues of a square matrix (roots of its minimal polynomial).
std::vector<Rational> rational_eigenvalues(const RationalMatrix& m);
/// True when the minimal polynomial is squarefree (m diagonalizable over C).
bool is_semisimple(const RationalMatrix& m);

/// Integer eigenspaces of ad(H) on V (which ad(H) must preserve). Throws
/// InputError when ad(H)|V is not semisimple with integer spectrum.
std::map<long, Subspace> ad_eigenspaces(const Subspace& V, const RationalMatrix& H);

struct SL2Triple {
  RationalMatrix H, X, Y;
};

/// The three bracket identities, exactly.
bool is_sl2_triple(const SL2Triple& t);
/// Bracket identities plus H in k and X, Y in p.
bool is_normalized(const ClassicalRealization& real, const SL2Triple& t);

bool is_nilpotent(const RationalMatrix& x);

/// Throws InputError when X is zero, not in g or not nilpotent.
SL2Triple jm_triple(const ClassicalRealization& real, const RationalMatrix& X);

/// Replaces H by (H + theta H)/2 and solves for Y in p. Throws InputError when X is not in p.
SL2Triple ks_normalize(const ClassicalRealization& real, const SL2Triple& t);

struct GradingDims {
  std::map<long, std::pair<int, int>> dims;  // degree -> (dim k_i, dim p_i)
};

/// Requires H in k.
GradingDims ad_grading_dims(const ClassicalRealization& real, const RationalMatrix& H);
/// The same table computed from the root data, for comparison.
GradingDims root_grading_dims(const grading::GradedDecomposition& gd);

int orbit_dimension(const ClassicalRealization& real, const RationalMatrix& X);

struct DenseOrbitResult {
  bool dense = false;
  bool x_in_p2 = false;
  int rank_k0_to_p2 = 0, dim_p2 = 0;
  int rank_kpos_to_p3 = 0, dim_p3 = 0;
};

DenseOrbitResult dense_orbit_check(const ClassicalRealization& real, const RationalMatrix& H, const RationalMatrix& X);

struct NilconeResult {
  int dimension = 0;
  int cartan_subspace_dim = 0;
  int trials = 0;
  std::uint64_t seed = 0;
};

NilconeResult nilcone_dimension(const ClassicalRealization& real, std::uint64_t seed);

struct PrincipalSearch {
  RationalMatrix X;
  int orbit_dim = 0;
  int nilcone_dim = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::map<int, int> sampled_orbit_dims;  // dimension -> count over all trials
};

/// Random elements of n ∩ p over random chambers; throws DiagnosticError when
/// no sample reaches the nilcone dimension.
PrincipalSearch principal_nilpotent_search(const ClassicalRealization& real, std::uint64_t seed, int trials = 120);

/// Orbit dimensions of sparse random nilpotents in n ∩ p, for parity evidence.
std::map<int, int> sample_orbit_dims(const ClassicalRealization& real, std::uint64_t seed, int trials);

/// Exact ranks over Q, or ranks over F_p for p = 2^61 - 1. A modular rank
/// never exceeds the rational one; the two differ only when p divides every
/// maximal minor, which has not been observed.
enum class RankArithmetic { Exact, Modular };

/// A nonzero nilpotent in p: a sparse combination of root vectors in n ∩ p
/// for a random positive system. Zero when p = 0.
RationalMatrix random_nilpotent(const ClassicalRealization& real, std::uint64_t seed);

struct CoordinateRingResult {
  std::vector<long> dims;
  std::vector<int> points_used;
  std::uint64_t seed = 0;
  RankArithmetic arithmetic = RankArithmetic::Exact;
};

/// Hilbert function of the closure of K.X by evaluation rank of monomials on p.
/// Throws DiagnosticError (with the partial dims in the message) when the
/// rank does not stabilize within budget.
CoordinateRingResult coordinate_ring_dims(const ClassicalRealization& real, const RationalMatrix& X, int k_max,
                                          std::uint64_t seed, int max_points = 2000,
                                          RankArithmetic arithmetic = RankArithmetic::Exact);

/// Weight of the Cartan on det(u∩p) ⊗ det(u∩k)^*, in fundamental-weight coordinates.
rootdata::Weight canonical_weight(const ClassicalRealization& real, const grading::GradingElement& H);

struct GradingConfirmation {
  grading::GradingElement H;
  bool dims_match = false;
  DenseOrbitResult dense;
  bool triple_ok = false;
  int orbit_dim = 0;
  int nilcone_dim = 0;
  bool principal = false;
  bool centralizer_in_q = false;
  SL2Triple triple;
  bool confirmed() const { return dims_match && dense.dense && triple_ok; }
};

/// Generic X in p_2(H), its triple through H, and the dense-orbit test.
GradingConfirmation confirm_grading(const ClassicalRealization& real, const grading::GradedDecomposition& gd,
                                    int nilcone_dim, std::uint64_t seed);

/// All K-chamber even gradings that carry a principal (nilcone-dimensional) dense orbit.
std::vector<GradingConfirmation> principal_gradings(const ClassicalRealization& real, const rootdata::RootSystem& rs,
                                                    const realform::EqualRankInvolution& eps, std::uint64_t seed,
                                                    long max_h = 2);

/// Principal search, principal component count and sampled orbit dimensions.
series::QctOracleData qct_oracle_data(const ClassicalRealization& real, const rootdata::RootSystem& rs,
                                      const realform::EqualRankInvolution& eps, std::uint64_t seed, int samples = 200);

std::string to_string(const RationalMatrix& m);

}  // namespace ksr::oracle
