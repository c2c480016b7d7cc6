#include "ksr/grading.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "ksr/errors.hpp"

namespace ksr::grading {

namespace {

constexpr const char* kModule = "grading";

long root_degree(const Root& r, const GradingElement& H) {
  long d = 0;
  for (std::size_t i = 0; i < r.simple_coords.size(); ++i) d += r.simple_coords[i] * H.h[i];
  return d;
}

}  // namespace

std::string to_string(const GradingElement& H) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < H.h.size(); ++i) os << (i ? "," : "") << H.h[i];
  os << ')';
  return os.str();
}

long GradedDecomposition::degree(const Root& r) const { return root_degree(r, H); }

int GradedDecomposition::dim_k(long i) const {
  int d = i == 0 ? rs.rank() : 0;
  if (auto it = blocks.find(i); it != blocks.end()) d += static_cast<int>(it->second.k_roots.size());
  return d;
}

int GradedDecomposition::dim_p(long i) const {
  auto it = blocks.find(i);
  return it == blocks.end() ? 0 : static_cast<int>(it->second.p_roots.size());
}

Weight weight_sum(const RootSystem& rs, const std::vector<Root>& roots) {
  Weight w = Weight::zero(rs.rank());
  for (const auto& r : roots) w += rs.to_weight(r);
  return w;
}

GradedDecomposition grade(const RootSystem& rs, const EqualRankInvolution& eps, const GradingElement& H,
                          Parity parity) {
  if (static_cast<int>(H.h.size()) != rs.rank())
    throw InputError(kModule, "H has " + std::to_string(H.h.size()) + " entries, expected " + std::to_string(rs.rank()));
  auto cd = realform::cartan_decomposition(rs, eps);
  GradedDecomposition gd{rs, eps, H, {}, {}, {}, {}, {}, {}, {}, true, true};
  for (long h : H.h)
    if (h < 0) gd.g_dominant = false;
  gd.blocks[0];
  for (const auto& r : rs.roots()) {
    long d = root_degree(r, H);
    if (parity == Parity::EvenOnly && d % 2 != 0)
      throw OddGradingError(kModule, "H = " + to_string(H) + " gives odd degree " + std::to_string(d) +
                                         "; odd nilpotent orbits are out of scope");
    bool compact = eps.compact(r);
    auto& block = gd.blocks[d];
    (compact ? block.k_roots : block.p_roots).push_back(r);
    if (d > 0) {
      gd.u_roots.push_back(r);
      (compact ? gd.u_cap_k : gd.u_cap_p).push_back(r);
    } else if (d == 0) {
      gd.l_roots.push_back(r);
    }
    if (d == 2 && !compact) gd.p2_roots.push_back(r);
    if (d >= 2) gd.g2plus.push_back(r);
    if (compact && r.is_positive() && d < 0) gd.k_dominant = false;
  }
  return gd;
}

ParabolicData parabolic(const GradedDecomposition& gd) {
  ParabolicData pd;
  pd.q_roots = gd.l_roots;
  pd.q_roots.insert(pd.q_roots.end(), gd.u_roots.begin(), gd.u_roots.end());
  pd.two_rho_u_p = weight_sum(gd.rs, gd.u_cap_p);
  pd.two_rho_u_k = weight_sum(gd.rs, gd.u_cap_k);
  pd.canonical_weight = pd.two_rho_u_p - pd.two_rho_u_k;
  auto kd = realform::k_root_datum(realform::cartan_decomposition(gd.rs, gd.eps));
  for (const auto& a : kd.simple_k_roots())
    if (gd.degree(a) == 0) pd.simple_l_k_roots.push_back(a);
  std::set<Root> q(pd.q_roots.begin(), pd.q_roots.end());
  pd.contains_positive_borel = std::all_of(gd.rs.positive_roots().begin(), gd.rs.positive_roots().end(),
                                           [&](const Root& r) { return q.count(r) > 0; });
  pd.contains_k_borel = std::all_of(kd.system.positive_roots().begin(), kd.system.positive_roots().end(),
                                    [&](const Root& r) { return q.count(r) > 0; });
  // theta acts on each root space by the scalar eps(alpha); q is theta-stable
  // iff every root space of q is an eigenspace, i.e. eps is well defined and
  // multiplicative on the roots of q.
  pd.theta_stable = true;
  for (const auto& a : pd.q_roots)
    for (const auto& b : pd.q_roots) {
      Root s = a + b;
      if (gd.rs.is_root(s) && (!q.count(s) || gd.eps.sign(s) != gd.eps.sign(a) * gd.eps.sign(b)))
        pd.theta_stable = false;
    }
  return pd;
}

Weight conormal_canonical_weight(const RootSystem& rs, const EqualRankInvolution& eps, const GradingElement& H) {
  return parabolic(grade(rs, eps, H, Parity::Any)).canonical_weight;
}

bool is_QK_dominant(const Weight& lambda, const ParabolicData& pd, const KRootDatum& kd) {
  const auto& rs = kd.system.ambient();
  for (const auto& a : kd.simple_k_roots())
    if (rs.pairing(lambda, a) < 0) return false;
  for (const auto& a : pd.simple_l_k_roots)
    if (rs.pairing(lambda, a) != 0) return false;
  return true;
}

std::vector<std::string> check_invariants(const GradedDecomposition& gd) {
  std::vector<std::string> bad;
  for (const auto& [d, block] : gd.blocks) {
    (void)block;
    if (gd.dim_k(d) != gd.dim_k(-d)) bad.push_back("dim k_" + std::to_string(d) + " != dim k_" + std::to_string(-d));
    if (gd.dim_p(d) != gd.dim_p(-d)) bad.push_back("dim p_" + std::to_string(d) + " != dim p_" + std::to_string(-d));
  }
  const auto roots = gd.rs.roots();
  for (const auto& a : roots)
    for (const auto& b : roots) {
      Root s = a + b;
      if (!gd.rs.is_root(s)) continue;
      if (gd.degree(s) != gd.degree(a) + gd.degree(b)) bad.push_back("degree not additive");
      if (gd.eps.sign(s) != gd.eps.sign(a) * gd.eps.sign(b)) bad.push_back("epsilon not multiplicative");
    }
  int total = 0;
  for (const auto& [d, block] : gd.blocks) total += gd.dim_g(d);
  if (total != gd.rs.dimension()) bad.push_back("degree dimensions do not sum to dim g");
  return bad;
}

std::vector<GradingElement> search_even_gradings(const RootSystem& rs, const EqualRankInvolution& eps, long max_h,
                                                 SearchMode mode) {
  if (max_h < 0) throw InputError(kModule, "max_h must be nonnegative");
  const auto n = static_cast<std::size_t>(rs.rank());
  std::vector<GradingElement> dominant;
  std::vector<long> h(n, 0);
  while (true) {
    dominant.push_back(GradingElement{h});
    std::size_t i = 0;
    while (i < n && h[i] == max_h) h[i++] = 0;
    if (i == n) break;
    ++h[i];
  }
  std::set<GradingElement> candidates;
  if (mode == SearchMode::Dominant) {
    candidates.insert(dominant.begin(), dominant.end());
  } else {
    const auto& cartan = rs.cartan_matrix();
    const auto kd = realform::k_root_datum(realform::cartan_decomposition(rs, eps));
    for (const auto& start : dominant) {
      // s_j acts on coweights by h -> h - h_j * (row j of the Cartan matrix).
      std::set<GradingElement> orbit{start};
      std::deque<GradingElement> queue{start};
      while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < n; ++j) {
          if (cur.h[j] == 0) continue;
          GradingElement next = cur;
          for (std::size_t i = 0; i < n; ++i) next.h[i] -= cur.h[j] * cartan[j][i];
          if (orbit.insert(next).second) queue.push_back(next);
        }
      }
      for (const auto& H : orbit) {
        bool ok = std::all_of(kd.system.positive_roots().begin(), kd.system.positive_roots().end(),
                              [&](const Root& r) { return root_degree(r, H) >= 0; });
        if (ok) candidates.insert(H);
      }
    }
  }
  std::vector<GradingElement> out;
  for (const auto& H : candidates) {
    bool even = true;
    int p2 = 0;
    for (const auto& r : rs.positive_roots()) {
      long d = root_degree(r, H);
      if (d % 2 != 0) even = false;
      if ((d == 2 || d == -2) && !eps.compact(r)) ++p2;
    }
    if (even && p2 > 0) out.push_back(H);
  }
  return out;
}

}  // namespace ksr::grading
