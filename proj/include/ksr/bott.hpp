#pragma once

// Borel-Weil-Bott for line bundles on K/B_K. Convention: a dominant input
// weight lambda gives H^0 = V_lambda and nothing else.

#include <map>

#include "ksr/rootdata.hpp"

namespace ksr::bott {

using rootdata::Subsystem;
using rootdata::VirtualCharacter;
using rootdata::Weight;
using rootdata::WeightMultiset;

struct CohomologyResult {
  std::map<int, VirtualCharacter> per_degree;  // only nonzero degrees are stored
  bool vanishes() const { return per_degree.empty(); }
};

CohomologyResult line_cohomology(const Weight& lambda, const Subsystem& sub);

/// Signed Bott contribution of a single weight: 0 when lambda + rho is
/// singular, otherwise (-1)^l(w) ch V_{w.lambda}.
VirtualCharacter euler_of_weight(const Weight& lambda, const Subsystem& sub, long mult = 1);

VirtualCharacter euler_of_weights(const WeightMultiset& weights, const Subsystem& sub);

}  // namespace ksr::bott
