#pragma once

// Graded K-character series of sections of O(lambda') on the K-Springer
// resolution K x_{Q∩K} (u∩p), computed by the projection formula: the degree-k
// piece is the Euler characteristic of Sym^k(u∩p)^* ⊗ lambda' on K/B_K.
//
// Conventions (fixed by the su(1,1) and su(2,1) pins):
//   chi_k = dual( sum_{nu in Sym^k(u∩p)} Bott(nu + lambda') )
//   mult(mu) = sum_{w in W_K} (-1)^l(w) P(w.mu^* - lambda')
// with P the partition function over the weights of u∩p.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ksr/bott.hpp"
#include "ksr/grading.hpp"
#include "ksr/weyl_cache.hpp"

namespace ksr::series {

using grading::GradedDecomposition;
using realform::KRootDatum;
using rootdata::VirtualCharacter;
using rootdata::Weight;
using rootdata::WeightMultiset;

/// T-weights of Sym^k of the span of `weights`, with multiplicity.
WeightMultiset sym_weights(const std::vector<Weight>& weights, int k);

struct GradedCharacterSeries {
  int N = 0;
  std::vector<VirtualCharacter> chi;  // chi[k], k = 0..N
  Weight lambda;
  grading::GradingElement H;
  std::vector<long> dims(const KRootDatum& kd) const;
};

/// Requires H to be K-dominant (B_K ⊂ Q_K); throws InputError otherwise.
GradedCharacterSeries euler_series(const Weight& lambda, const GradedDecomposition& gd, const KRootDatum& kd, int N);

enum class Verdict { Pass, Fail, HypothesisUnmet };
std::string to_string(Verdict v);

struct Violation {
  int k;
  Weight mu;
  long mult;
};

struct VanishingReport {
  Verdict verdict = Verdict::Pass;
  std::optional<GradedCharacterSeries> series;  // absent when the hypothesis is unmet
  std::vector<Violation> violations;
  std::string reason;
};

/// PASS iff every multiplicity of chi_k (k <= N) is nonnegative. Weights
/// outside W(Q∩K) give HypothesisUnmet.
VanishingReport verify_vanishing(const Weight& lambda, const GradedDecomposition& gd, const KRootDatum& kd, int N);

std::vector<long> hilbert_series(const GradedDecomposition& gd, const KRootDatum& kd, int N);

struct ComponentsResult {
  std::vector<GradedCharacterSeries> components;
  std::vector<std::vector<long>> component_dims;
  std::vector<VirtualCharacter> total;  // termwise sum
  std::vector<long> total_dims;
};

/// Throws InputError on an empty list.
ComponentsResult components_split(const std::vector<GradedDecomposition>& gds, const KRootDatum& kd, int N);

/// Multiplicity of V_mu in the full (all degrees) series at lambda'.
/// Throws InputError for non-dominant mu.
class BlattnerCalculator {
 public:
  BlattnerCalculator(const GradedDecomposition& gd, const KRootDatum& kd, rootdata::WeylCache& cache);
  BlattnerCalculator(const BlattnerCalculator&) = delete;
  BlattnerCalculator& operator=(const BlattnerCalculator&) = delete;

  long multiplicity(const Weight& mu, const Weight& lambda) const;
  /// Degree-k part only.
  long multiplicity_in_degree(const Weight& mu, const Weight& lambda, int k) const;
  /// Largest degree in which V_mu can occur at lambda.
  int max_degree(const Weight& mu, const Weight& lambda) const;

 private:
  long alternating_sum(const Weight& mu, const Weight& lambda, int parts) const;

  const KRootDatum* kd_;
  rootdata::RootSystem rs_;
  grading::GradingElement H_;
  std::vector<rootdata::WeylElement> weyl_;
  long min_degree_ = 1;
  std::unique_ptr<rootdata::PartitionCounter> counter_;
};

long blattner_multiplicity(const Weight& mu, const Weight& lambda, const GradedDecomposition& gd,
                           const KRootDatum& kd);

/// Oracle measurements behind the QCT/QAT report.
struct QctOracleData {
  int p_dim = 0;
  int nilcone_dim = 0;
  int principal_orbit_dim = 0;
  int principal_components = 0;  // principal K-orbits found through even gradings
  std::map<int, int> sampled_orbit_dims;  // dimension -> samples
  std::uint64_t seed = 0;
};

struct QctReport {
  std::string label = "EVIDENCE";
  bool degenerate = false;  // p = 0, so the nilpotent cone is a point
  bool g1 = false;          // single principal orbit whose closure is the whole cone
  bool g2 = false;          // every sampled orbit dimension is even
  bool g2_prime = false;    // every sampled orbit dimension is divisible by 4
  bool principal_even = false;
  std::map<int, int> parity_table;  // dimension mod 4 -> samples
  std::vector<std::string> notes;
};

/// Evidence only: orbit dimensions are sampled, not enumerated.
QctReport qct_report(const QctOracleData& data);

}  // namespace ksr::series
