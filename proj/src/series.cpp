#include "ksr/series.hpp"

#include <algorithm>
#include <functional>
#include <memory>

#include "ksr/errors.hpp"

namespace ksr::series {

namespace {

constexpr const char* kModule = "series";

void require_k_dominant(const GradedDecomposition& gd) {
  if (!gd.k_dominant)
    throw InputError(kModule, "H = " + grading::to_string(gd.H) + " is not K-dominant, so Q∩K does not contain B∩K");
}

std::vector<Weight> u_cap_p_weights(const GradedDecomposition& gd) {
  std::vector<Weight> out;
  for (const auto& r : gd.u_cap_p) out.push_back(gd.rs.to_weight(r));
  return out;
}

long degree_of(const rootdata::RootSystem& rs, const grading::GradingElement& H, const Weight& w) {
  auto rc = rs.root_coords(w);
  Rational d = 0;
  for (std::size_t i = 0; i < rc.size(); ++i) d += rc[i] * H.h[i];
  if (!is_integer(d)) return std::numeric_limits<long>::min();
  return to_long(d);
}

}  // namespace

WeightMultiset sym_weights(const std::vector<Weight>& weights, int k) {
  if (k < 0) throw InputError(kModule, "symmetric power degree must be nonnegative");
  WeightMultiset out;
  if (weights.empty()) {
    if (k == 0) out[Weight{}] = 1;
    return out;
  }
  const int rank = static_cast<int>(weights.front().fw.size());
  // Grow by one factor at a time with nondecreasing indices.
  std::function<void(std::size_t, int, Weight)> rec = [&](std::size_t start, int left, Weight acc) {
    if (left == 0) {
      ++out[acc];
      return;
    }
    for (std::size_t j = start; j < weights.size(); ++j) rec(j, left - 1, acc + weights[j]);
  };
  rec(0, k, Weight::zero(rank));
  return out;
}

std::vector<long> GradedCharacterSeries::dims(const KRootDatum& kd) const {
  std::vector<long> out;
  for (const auto& c : chi) out.push_back(c.dimension(kd.system));
  return out;
}

GradedCharacterSeries euler_series(const Weight& lambda, const GradedDecomposition& gd, const KRootDatum& kd, int N) {
  if (N < 0) throw InputError(kModule, "truncation N must be nonnegative");
  require_k_dominant(gd);
  if (static_cast<int>(lambda.fw.size()) != gd.rs.rank()) throw InputError(kModule, "lambda has the wrong length");
  GradedCharacterSeries s{N, {}, lambda, gd.H};
  auto upw = u_cap_p_weights(gd);
  for (int k = 0; k <= N; ++k) {
    WeightMultiset shifted;
    if (upw.empty()) {
      if (k == 0) shifted[lambda] = 1;
    } else {
      for (const auto& [nu, m] : sym_weights(upw, k)) shifted[nu + lambda] += m;
    }
    s.chi.push_back(bott::euler_of_weights(shifted, kd.system).dual(kd.system));
  }
  return s;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::HypothesisUnmet: return "HYPOTHESIS-UNMET";
  }
  return "?";
}

VanishingReport verify_vanishing(const Weight& lambda, const GradedDecomposition& gd, const KRootDatum& kd, int N) {
  VanishingReport rep;
  require_k_dominant(gd);
  auto pd = grading::parabolic(gd);
  if (!grading::is_QK_dominant(lambda, pd, kd)) {
    rep.verdict = Verdict::HypothesisUnmet;
    rep.reason = "lambda' = " + rootdata::to_string(lambda) + " is not Q∩K-dominant";
    return rep;
  }
  rep.series = euler_series(lambda, gd, kd, N);
  for (int k = 0; k <= N; ++k)
    for (const auto& [mu, m] : rep.series->chi[static_cast<std::size_t>(k)].terms())
      if (m < 0) rep.violations.push_back({k, mu, m});
  rep.verdict = rep.violations.empty() ? Verdict::Pass : Verdict::Fail;
  return rep;
}

std::vector<long> hilbert_series(const GradedDecomposition& gd, const KRootDatum& kd, int N) {
  return euler_series(Weight::zero(gd.rs.rank()), gd, kd, N).dims(kd);
}

ComponentsResult components_split(const std::vector<GradedDecomposition>& gds, const KRootDatum& kd, int N) {
  if (gds.empty()) throw InputError(kModule, "components_split needs at least one component");
  ComponentsResult out;
  out.total.assign(static_cast<std::size_t>(N) + 1, VirtualCharacter{});
  out.total_dims.assign(static_cast<std::size_t>(N) + 1, 0);
  for (const auto& gd : gds) {
    auto s = euler_series(Weight::zero(gd.rs.rank()), gd, kd, N);
    auto d = s.dims(kd);
    for (int k = 0; k <= N; ++k) {
      out.total[static_cast<std::size_t>(k)] += s.chi[static_cast<std::size_t>(k)];
      out.total_dims[static_cast<std::size_t>(k)] += d[static_cast<std::size_t>(k)];
    }
    out.component_dims.push_back(std::move(d));
    out.components.push_back(std::move(s));
  }
  return out;
}

BlattnerCalculator::BlattnerCalculator(const GradedDecomposition& gd, const KRootDatum& kd, rootdata::WeylCache& cache)
    : kd_(&kd), rs_(gd.rs), H_(gd.H), weyl_(cache.elements(kd.system)) {
  require_k_dominant(gd);
  auto upw = u_cap_p_weights(gd);
  min_degree_ = 0;
  for (const auto& r : gd.u_cap_p) {
    long d = gd.degree(r);
    if (min_degree_ == 0 || d < min_degree_) min_degree_ = d;
  }
  counter_ = std::make_unique<rootdata::PartitionCounter>(rs_, upw, rootdata::Grading{H_.h});
}

long BlattnerCalculator::alternating_sum(const Weight& mu, const Weight& lambda, int parts) const {
  const auto& sub = kd_->system;
  if (!sub.is_dominant(mu)) throw InputError(kModule, "mu = " + rootdata::to_string(mu) + " is not K-dominant");
  const Weight gamma = sub.dual(mu);
  long total = 0;
  for (const auto& w : weyl_) {
    Weight target = sub.dot(w, gamma) - lambda;
    long c = parts < 0 ? counter_->count(target) : counter_->count_with_parts(target, parts);
    total += (w.length() % 2 == 0) ? c : -c;
  }
  return total;
}

long BlattnerCalculator::multiplicity(const Weight& mu, const Weight& lambda) const {
  return alternating_sum(mu, lambda, -1);
}

long BlattnerCalculator::multiplicity_in_degree(const Weight& mu, const Weight& lambda, int k) const {
  return alternating_sum(mu, lambda, k);
}

int BlattnerCalculator::max_degree(const Weight& mu, const Weight& lambda) const {
  if (min_degree_ == 0) return 0;
  const auto& sub = kd_->system;
  const Weight gamma = sub.dual(mu);
  long best = 0;
  for (const auto& w : weyl_) {
    long d = degree_of(rs_, H_, sub.dot(w, gamma) - lambda);
    best = std::max(best, d);
  }
  return static_cast<int>(best / min_degree_);
}

long blattner_multiplicity(const Weight& mu, const Weight& lambda, const GradedDecomposition& gd,
                           const KRootDatum& kd) {
  rootdata::WeylCache cache;
  return BlattnerCalculator(gd, kd, cache).multiplicity(mu, lambda);
}

}  // namespace ksr::series

namespace ksr::series {

QctReport qct_report(const QctOracleData& data) {
  QctReport r;
  if (data.p_dim == 0) {
    r.degenerate = true;
    r.g1 = r.g2 = r.g2_prime = r.principal_even = true;
    r.notes.push_back("p = 0: the nilpotent cone is {0}; both conditions hold vacuously");
    return r;
  }
  r.g1 = data.principal_orbit_dim == data.nilcone_dim && data.principal_components == 1;
  r.principal_even = data.principal_orbit_dim % 2 == 0;
  if (data.principal_orbit_dim != data.nilcone_dim)
    r.notes.push_back("largest sampled orbit has dimension " + std::to_string(data.principal_orbit_dim) +
                      " below the nilcone dimension " + std::to_string(data.nilcone_dim));
  if (data.principal_components == 0)
    r.notes.push_back("no principal orbit arises from an even grading; component count unavailable");
  else
    r.notes.push_back(std::to_string(data.principal_components) + " principal orbit(s) found");
  r.g2 = r.g2_prime = !data.sampled_orbit_dims.empty();
  for (const auto& [d, count] : data.sampled_orbit_dims) {
    r.parity_table[d % 4] += count;
    if (d % 2 != 0) r.g2 = false;
    if (d % 4 != 0) r.g2_prime = false;
  }
  r.notes.push_back("orbit dimensions are sampled, not enumerated");
  return r;
}

}  // namespace ksr::series
