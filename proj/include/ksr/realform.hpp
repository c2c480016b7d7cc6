#pragma once

// Equal-rank real forms: theta acts trivially on a compact Cartan and by a
// sign on each root space, so a real form is a root system together with one
// sign per simple root (-1 marks a noncompact simple root).

#include <string>
#include <vector>

#include "json.hpp"
#include "ksr/rootdata.hpp"

namespace ksr::realform {

using rootdata::Root;
using rootdata::RootSystem;
using rootdata::Subsystem;
using rootdata::Weight;

struct EqualRankInvolution {
  std::vector<int> epsilon_simple;

  /// Multiplicative extension: prod eps_i^{c_i}.
  int sign(const Root& r) const;
  bool compact(const Root& r) const { return sign(r) == 1; }
};

struct CartanDecomposition {
  RootSystem rs;
  EqualRankInvolution eps;
  std::vector<Root> k_roots;  // all compact roots, positives first
  std::vector<Root> p_roots;  // all noncompact roots, positives first
  int k_dim = 0;
  int p_dim = 0;
};

/// Throws InputError when eps has the wrong length or entries other than +-1.
CartanDecomposition cartan_decomposition(const RootSystem& rs, const EqualRankInvolution& eps);

struct KRootDatum {
  Subsystem system;  // compact roots with positives inherited from the ambient system
  RationalVector rho_K;  // fundamental-weight coordinates, possibly half-integral

  const std::vector<Root>& simple_k_roots() const { return system.simple_roots(); }
  const Weight& two_rho_K() const { return system.two_rho(); }
};

KRootDatum k_root_datum(const CartanDecomposition& cd);

/// A named (or ad hoc) real form.
struct FormSpec {
  std::string name;
  RootSystem rs;
  EqualRankInvolution eps;
};

/// Catalog lookup. Accepted names:
///   su(p,q), sl(2,R)      A_{p+q-1}, alpha_p noncompact (su(2,1) uses (-,-))
///   sp(2n,R)              C_n, alpha_n noncompact
///   sp(p,q)               C_{p+q}, alpha_p noncompact
///   so*(2n), n >= 3       D_n, alpha_n noncompact
///   su(n), sp(n)          compact forms
/// Non-equal-rank or unknown names raise OutOfScopeError; bad parameters
/// raise InputError.
FormSpec standard_form_catalog(const std::string& name);

/// Ad hoc form from a type label, rank and epsilon vector.
FormSpec custom_form(const std::string& type, int rank, const std::vector<int>& epsilon);

/// {"form": name} or {"type": "A", "rank": 2, "epsilon": [-1,-1]}.
FormSpec form_from_json(const nlohmann::json& config);

/// Names used by tests and the pipeline.
std::vector<std::string> pinned_forms();

}  // namespace ksr::realform
