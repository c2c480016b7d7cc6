#pragma once

// ad(H)-gradings of g attached to a grading element H in the compact Cartan,
// the theta-stable parabolic q = l + u, and the weights that enter the
// canonical bundle of the K-Springer resolution.

#include <map>
#include <vector>

#include "ksr/realform.hpp"

namespace ksr::grading {

using realform::EqualRankInvolution;
using realform::KRootDatum;
using rootdata::Root;
using rootdata::RootSystem;
using rootdata::Weight;

/// h_i = alpha_i(H).
struct GradingElement {
  std::vector<long> h;
  friend auto operator<=>(const GradingElement&, const GradingElement&) = default;
};

std::string to_string(const GradingElement& H);

enum class Parity { EvenOnly, Any };

struct DegreeBlock {
  std::vector<Root> k_roots;
  std::vector<Root> p_roots;
};

struct GradedDecomposition {
  RootSystem rs;
  EqualRankInvolution eps;
  GradingElement H;
  std::map<long, DegreeBlock> blocks;  // keyed by ad(H) degree
  std::vector<Root> u_roots, l_roots, u_cap_p, u_cap_k, p2_roots, g2plus;
  bool g_dominant = false;  // h_i >= 0
  bool k_dominant = false;  // alpha(H) >= 0 on positive compact roots

  long degree(const Root& r) const;
  /// Dimensions including the Cartan in k_0.
  int dim_k(long i) const;
  int dim_p(long i) const;
  int dim_g(long i) const { return dim_k(i) + dim_p(i); }
};

/// Throws InputError for a wrong-length H and OddGradingError when an odd
/// degree appears in EvenOnly mode.
GradedDecomposition grade(const RootSystem& rs, const EqualRankInvolution& eps, const GradingElement& H,
                          Parity parity = Parity::EvenOnly);

struct ParabolicData {
  std::vector<Root> q_roots;
  Weight two_rho_u_p;
  Weight two_rho_u_k;
  Weight canonical_weight;  // two_rho_u_p - two_rho_u_k
  std::vector<Root> simple_l_k_roots;
  bool contains_positive_borel = false;
  bool contains_k_borel = false;
  bool theta_stable = false;
};

ParabolicData parabolic(const GradedDecomposition& gd);

/// 2 rho(u∩p) - 2 rho(u∩k) for any integral H (odd degrees allowed).
Weight conormal_canonical_weight(const RootSystem& rs, const EqualRankInvolution& eps, const GradingElement& H);

/// <lambda, a^vee> >= 0 on simple K-roots and = 0 on simple K-roots in l.
bool is_QK_dominant(const Weight& lambda, const ParabolicData& pd, const KRootDatum& kd);

/// Structural checks on a decomposition; returns an empty list when all hold.
std::vector<std::string> check_invariants(const GradedDecomposition& gd);

enum class SearchMode {
  Dominant,  // h_i in {0..max_h}
  KChamber,  // W-conjugates of dominant even H with h_i in {0..max_h} that are K-dominant
};

/// Even gradings with dim p_2 > 0, sorted lexicographically.
std::vector<GradingElement> search_even_gradings(const RootSystem& rs, const EqualRankInvolution& eps, long max_h = 2,
                                                 SearchMode mode = SearchMode::Dominant);

/// Weight of sum over a list of roots.
Weight weight_sum(const RootSystem& rs, const std::vector<Root>& roots);

}  // namespace ksr::grading
