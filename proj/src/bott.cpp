#include "ksr/bott.hpp"

namespace ksr::bott {

CohomologyResult line_cohomology(const Weight& lambda, const Subsystem& sub) {
  CohomologyResult out;
  auto dom = rootdata::make_dominant(lambda, sub);
  if (!dom.singular) out.per_degree[dom.w.length()] = VirtualCharacter::irreducible(dom.dominant);
  return out;
}

VirtualCharacter euler_of_weight(const Weight& lambda, const Subsystem& sub, long mult) {
  VirtualCharacter chi;
  auto dom = rootdata::make_dominant(lambda, sub);
  if (!dom.singular) chi.add(dom.dominant, dom.w.length() % 2 == 0 ? mult : -mult);
  return chi;
}

VirtualCharacter euler_of_weights(const WeightMultiset& weights, const Subsystem& sub) {
  VirtualCharacter chi;
  for (const auto& [w, m] : weights) chi += euler_of_weight(w, sub, m);
  return chi;
}

}  // namespace ksr::bott
