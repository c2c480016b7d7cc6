#include "ksr/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "ksr/errors.hpp"
#include "ksr/linalg.hpp"

namespace ksr::rootdata {

namespace {

constexpr const char* kModule = "rootdata";

std::vector<std::vector<int>> gram_matrix(TypeLabel type, int n) {
  std::vector<std::vector<int>> b(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  auto at = [&](int i, int j) -> int& { return b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  auto chain = [&](int upto) {
    for (int i = 0; i < upto; ++i) at(i, i) = 2;
    for (int i = 0; i + 1 < upto; ++i) at(i, i + 1) = at(i + 1, i) = -1;
  };
  switch (type) {
    case TypeLabel::A:
      chain(n);
      break;
    case TypeLabel::B:
      chain(n);
      at(n - 1, n - 1) = 1;
      break;
    case TypeLabel::C:
      chain(n);
      if (n == 1) {
        at(0, 0) = 4;
      } else {
        at(n - 1, n - 1) = 4;
        at(n - 2, n - 1) = at(n - 1, n - 2) = -2;
      }
      break;
    case TypeLabel::D:
      chain(n - 1);
      at(n - 1, n - 1) = 2;
      at(n - 3, n - 1) = at(n - 1, n - 3) = -1;
      break;
    case TypeLabel::G:
      at(0, 0) = 2;
      at(1, 1) = 6;
      at(0, 1) = at(1, 0) = -3;
      break;
  }
  return b;
}

std::size_t expected_positive_count(TypeLabel t, int n) {
  switch (t) {
    case TypeLabel::A: return static_cast<std::size_t>(n * (n + 1) / 2);
    case TypeLabel::B:
    case TypeLabel::C: return static_cast<std::size_t>(n * n);
    case TypeLabel::D: return static_cast<std::size_t>(n * (n - 1));
    case TypeLabel::G: return 6;
  }
  return 0;
}

}  // namespace

TypeLabel parse_type_label(const std::string& text) {
  if (text == "A") return TypeLabel::A;
  if (text == "B") return TypeLabel::B;
  if (text == "C") return TypeLabel::C;
  if (text == "D") return TypeLabel::D;
  if (text == "G" || text == "G2") return TypeLabel::G;
  throw InputError(kModule, "unknown root system type '" + text + "'");
}

std::string to_string(TypeLabel t) {
  switch (t) {
    case TypeLabel::A: return "A";
    case TypeLabel::B: return "B";
    case TypeLabel::C: return "C";
    case TypeLabel::D: return "D";
    case TypeLabel::G: return "G";
  }
  return "?";
}

bool Root::is_positive() const {
  bool any = false;
  for (int c : simple_coords) {
    if (c < 0) return false;
    any = any || c > 0;
  }
  return any;
}

bool Root::is_negative() const { return (-*this).is_positive(); }

int Root::height() const { return std::accumulate(simple_coords.begin(), simple_coords.end(), 0); }

Root Root::operator-() const {
  Root r = *this;
  for (auto& c : r.simple_coords) c = -c;
  return r;
}

Root operator+(const Root& a, const Root& b) {
  if (a.simple_coords.size() != b.simple_coords.size()) throw InputError(kModule, "rank mismatch in root sum");
  Root r = a;
  for (std::size_t i = 0; i < r.simple_coords.size(); ++i) r.simple_coords[i] += b.simple_coords[i];
  return r;
}

bool Weight::is_zero() const {
  return std::all_of(fw.begin(), fw.end(), [](long x) { return x == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (fw.size() != o.fw.size()) throw InputError(kModule, "rank mismatch in weight sum");
  for (std::size_t i = 0; i < fw.size(); ++i) fw[i] += o.fw[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (fw.size() != o.fw.size()) throw InputError(kModule, "rank mismatch in weight difference");
  for (std::size_t i = 0; i < fw.size(); ++i) fw[i] -= o.fw[i];
  return *this;
}

Weight Weight::operator-() const {
  Weight w = *this;
  for (auto& x : w.fw) x = -x;
  return w;
}

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.fw.size(); ++i) os << (i ? "," : "") << w.fw[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// RootSystem

RootSystem RootSystem::build(TypeLabel type, int rank) {
  if (rank < 1) throw InputError(kModule, "rank must be at least 1");
  if (type == TypeLabel::D && rank < 3) throw InputError(kModule, "type D requires rank >= 3");
  if (type == TypeLabel::G && rank != 2) throw InputError(kModule, "type G exists only in rank 2");

  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.gram_ = gram_matrix(type, rank);
  const auto n = static_cast<std::size_t>(rank);
  rs.cartan_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rs.cartan_[i][j] = 2 * rs.gram_[i][j] / rs.gram_[i][i];

  // Grow positive roots by height using alpha_i-strings.
  std::set<std::vector<int>> known;
  std::vector<Root> found;
  for (std::size_t i = 0; i < n; ++i) {
    Root r{std::vector<int>(n, 0)};
    r.simple_coords[i] = 1;
    known.insert(r.simple_coords);
    found.push_back(r);
  }
  for (std::size_t next = 0; next < found.size(); ++next) {
    const Root beta = found[next];
    for (std::size_t i = 0; i < n; ++i) {
      Root up = beta;
      up.simple_coords[i] += 1;
      if (known.count(up.simple_coords)) continue;
      int p = 0;
      for (Root down = beta;;) {
        down.simple_coords[i] -= 1;
        if (!known.count(down.simple_coords)) break;
        ++p;
      }
      int pair = 0;  // <beta, alpha_i^vee>
      for (std::size_t j = 0; j < n; ++j) pair += beta.simple_coords[j] * rs.cartan_[i][j];
      if (p - pair > 0) {
        known.insert(up.simple_coords);
        found.push_back(up);
      }
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.simple_coords > b.simple_coords;
  });
  if (found.size() != expected_positive_count(type, rank))
    throw ConsistencyError(kModule, "positive root count mismatch for " + to_string(type) + std::to_string(rank));
  rs.positive_ = std::move(found);
  for (std::size_t k = 0; k < rs.positive_.size(); ++k) rs.index_[rs.positive_[k].simple_coords] = k;

  // omega_i in root coordinates: solve gram * r = e_i * gram_ii / 2.
  linalg::RationalMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rs.gram_[i][j];
  rs.fw_to_root_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector rhs(n);
    rhs[i] = ratio(rs.gram_[i][i], 2);
    auto sol = linalg::solve(g, rhs);
    if (!sol) throw ConsistencyError(kModule, "singular Gram matrix");
    rs.fw_to_root_[i] = *sol;
  }
  return rs;
}

std::string RootSystem::name() const { return to_string(type_) + std::to_string(rank_); }

std::vector<Root> RootSystem::roots() const {
  std::vector<Root> all = positive_;
  for (const auto& r : positive_) all.push_back(-r);
  return all;
}

bool RootSystem::is_root(const Root& r) const { return positive_index(r).has_value(); }

std::optional<std::size_t> RootSystem::positive_index(const Root& r) const {
  if (static_cast<int>(r.simple_coords.size()) != rank_) return std::nullopt;
  auto it = index_.find(r.simple_coords);
  if (it != index_.end()) return it->second;
  it = index_.find((-r).simple_coords);
  if (it != index_.end()) return it->second;
  return std::nullopt;
}

Weight RootSystem::to_weight(const Root& r) const {
  if (static_cast<int>(r.simple_coords.size()) != rank_) throw InputError(kModule, "root rank mismatch");
  Weight w = Weight::zero(rank_);
  for (std::size_t i = 0; i < w.fw.size(); ++i)
    for (std::size_t j = 0; j < w.fw.size(); ++j) w.fw[i] += static_cast<long>(cartan_[i][j]) * r.simple_coords[j];
  return w;
}

long RootSystem::pairing(const Weight& lambda, const Root& alpha) const {
  if (!is_root(alpha)) throw InputError(kModule, "pairing against a non-root");
  if (static_cast<int>(lambda.fw.size()) != rank_) throw InputError(kModule, "weight rank mismatch");
  long len2 = 0;
  const auto& c = alpha.simple_coords;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) len2 += static_cast<long>(c[i]) * gram_[i][j] * c[j];
  long num = 0;
  for (std::size_t i = 0; i < c.size(); ++i) num += static_cast<long>(c[i]) * gram_[i][i] * lambda.fw[i];
  if (num % len2 != 0) throw ConsistencyError(kModule, "non-integral coroot pairing");
  return num / len2;
}

RationalVector RootSystem::root_coords(const Weight& w) const {
  RationalVector r(static_cast<std::size_t>(rank_));
  for (std::size_t i = 0; i < r.size(); ++i)
    if (w.fw[i] != 0)
      for (std::size_t j = 0; j < r.size(); ++j) r[j] += w.fw[i] * fw_to_root_[i][j];
  return r;
}

Weight RootSystem::from_root_coords(const RationalVector& coords) const {
  if (static_cast<int>(coords.size()) != rank_) throw InputError(kModule, "coordinate length mismatch");
  Weight w = Weight::zero(rank_);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Rational m = 0;
    for (std::size_t j = 0; j < coords.size(); ++j) m += cartan_[i][j] * coords[j];
    if (!is_integer(m)) throw InputError(kModule, "root coordinates do not define an integral weight");
    w.fw[i] = to_long(m);
  }
  return w;
}

Rational RootSystem::inner(const RationalVector& a_fw, const RationalVector& b_fw) const {
  // (omega_i, alpha_j) = delta_ij gram_jj / 2, so (a, b) = sum_j root(a)_j b_j gram_jj / 2.
  RationalVector ra(a_fw.size());
  for (std::size_t i = 0; i < a_fw.size(); ++i)
    if (sgn(a_fw[i]) != 0)
      for (std::size_t j = 0; j < ra.size(); ++j) ra[j] += a_fw[i] * fw_to_root_[i][j];
  Rational s = 0;
  for (std::size_t j = 0; j < ra.size(); ++j) s += ra[j] * b_fw[j] * ratio(gram_[j][j], 2);
  return s;
}

Rational RootSystem::inner(const Weight& a, const Weight& b) const {
  RationalVector qa(a.fw.begin(), a.fw.end()), qb(b.fw.begin(), b.fw.end());
  return inner(qa, qb);
}

Root RootSystem::root_from_weight(const Weight& w) const {
  auto rc = root_coords(w);
  Root r{std::vector<int>(rc.size())};
  for (std::size_t i = 0; i < rc.size(); ++i) {
    if (!is_integer(rc[i])) throw InputError(kModule, "weight " + to_string(w) + " is not in the root lattice");
    r.simple_coords[i] = static_cast<int>(to_long(rc[i]));
  }
  if (!is_root(r)) throw InputError(kModule, "weight " + to_string(w) + " is not a root");
  return r;
}

// ---------------------------------------------------------------------------
// Subsystem

Subsystem::Subsystem(RootSystem ambient, std::vector<Root> positive_roots)
    : ambient_(std::move(ambient)), positive_(std::move(positive_roots)) {
  std::set<Root> pos(positive_.begin(), positive_.end());
  if (pos.size() != positive_.size()) throw ConsistencyError(kModule, "duplicate subsystem roots");
  for (const auto& r : positive_) {
    if (!ambient_.is_root(r)) throw ConsistencyError(kModule, "subsystem element is not a root");
    if (pos.count(-r)) throw ConsistencyError(kModule, "positive system contains a root and its negative");
  }
  // Closure: alpha, beta in +-positive_, alpha+beta a root => alpha+beta in +-positive_.
  std::vector<Root> all = positive_;
  for (const auto& r : positive_) all.push_back(-r);
  std::set<Root> all_set(all.begin(), all.end());
  for (const auto& a : all)
    for (const auto& b : all) {
      Root s = a + b;
      if (ambient_.is_root(s) && !all_set.count(s)) throw ConsistencyError(kModule, "subsystem is not closed");
      // Sums of positives must stay positive.
      if (pos.count(a) && pos.count(b) && all_set.count(s) && !pos.count(s))
        throw ConsistencyError(kModule, "inherited positives are not a positive system");
    }
  std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.simple_coords > b.simple_coords;
  });
  for (const auto& r : positive_) positive_weights_.push_back(ambient_.to_weight(r));
  // Simple roots: positives that are not a sum of two positives.
  for (const auto& r : positive_) {
    bool decomposable = false;
    for (const auto& a : positive_)
      if (pos.count(r - a)) {
        decomposable = true;
        break;
      }
    if (!decomposable) {
      simple_.push_back(r);
      simple_weights_.push_back(ambient_.to_weight(r));
    }
  }
  two_rho_ = Weight::zero(ambient_.rank());
  for (const auto& w : positive_weights_) two_rho_ += w;
}

Subsystem Subsystem::full(const RootSystem& rs) { return Subsystem(rs, rs.positive_roots()); }

std::string Subsystem::signature() const {
  std::ostringstream os;
  os << ambient_.name() << "|+";
  for (const auto& r : simple_) {
    os << '[';
    for (std::size_t i = 0; i < r.simple_coords.size(); ++i) os << (i ? "," : "") << r.simple_coords[i];
    os << ']';
  }
  return os.str();
}

long Subsystem::pairing_simple(const Weight& lambda, std::size_t i) const {
  return ambient_.pairing(lambda, simple_.at(i));
}

bool Subsystem::is_dominant(const Weight& lambda) const {
  for (std::size_t i = 0; i < simple_.size(); ++i)
    if (pairing_simple(lambda, i) < 0) return false;
  return true;
}

Weight Subsystem::reflect(const Weight& lambda, std::size_t i) const {
  long c = pairing_simple(lambda, i);
  return lambda - c * simple_weights_[i];
}

Weight Subsystem::dot_reflect(const Weight& lambda, std::size_t i) const {
  // <rho, beta^vee> = 1 for a simple root beta of the subsystem.
  long c = pairing_simple(lambda, i) + 1;
  return lambda - c * simple_weights_[i];
}

Weight Subsystem::apply(const WeylElement& w, const Weight& lambda) const {
  Weight x = lambda;
  for (int i : w.word) x = reflect(x, static_cast<std::size_t>(i));
  return x;
}

Weight Subsystem::dot(const WeylElement& w, const Weight& lambda) const {
  Weight x = lambda;
  for (int i : w.word) x = dot_reflect(x, static_cast<std::size_t>(i));
  return x;
}

Weight Subsystem::dominant_conjugate(const Weight& lambda) const {
  Weight x = lambda;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < simple_.size(); ++i)
      if (pairing_simple(x, i) < 0) {
        x = reflect(x, i);
        changed = true;
      }
  }
  return x;
}

std::vector<Weight> Subsystem::orbit(const Weight& lambda) const {
  std::set<Weight> seen{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    Weight x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < simple_.size(); ++i) {
      Weight y = reflect(x, i);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

std::optional<RationalVector> Subsystem::simple_coords(const Weight& diff) const {
  const auto n = static_cast<std::size_t>(ambient_.rank());
  linalg::RationalMatrix m(n, simple_.size());
  for (std::size_t c = 0; c < simple_.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = simple_[c].simple_coords[r];
  return linalg::solve(m, ambient_.root_coords(diff));
}

std::vector<WeylElement> Subsystem::elements() const {
  // Chambers are labelled by the image of the regular dominant vector 2 rho.
  std::map<Weight, WeylElement> seen;
  std::vector<Weight> order{two_rho_};
  seen.emplace(two_rho_, WeylElement{});
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Weight x = order[k];
    const WeylElement w = seen.at(x);
    for (std::size_t i = 0; i < simple_.size(); ++i) {
      Weight y = reflect(x, i);
      if (seen.count(y)) continue;
      WeylElement v = w;
      v.word.push_back(static_cast<int>(i));
      seen.emplace(y, std::move(v));
      order.push_back(y);
    }
  }
  std::vector<WeylElement> out;
  out.reserve(order.size());
  for (const auto& x : order) out.push_back(seen.at(x));
  return out;
}

DominanceResult make_dominant(const Weight& lambda, const Subsystem& sub) {
  // Work with lambda + rho through x = lambda and the dot action; singularity
  // means <lambda + rho, beta^vee> = 0 for a simple root once dominant.
  DominanceResult res;
  Weight x = lambda;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < sub.simple_roots().size(); ++i) {
      long c = sub.pairing_simple(x, i) + 1;
      if (c < 0) {
        x = sub.dot_reflect(x, i);
        res.w.word.push_back(static_cast<int>(i));
        changed = true;
      }
    }
  }
  for (std::size_t i = 0; i < sub.simple_roots().size(); ++i)
    if (sub.pairing_simple(x, i) + 1 == 0) res.singular = true;
  res.dominant = x;
  return res;
}

long weyl_dimension(const Weight& lambda, const Subsystem& sub) {
  if (!sub.is_dominant(lambda)) throw InputError(kModule, "weyl_dimension needs a dominant weight, got " + to_string(lambda));
  Rational d = 1;
  const Weight shifted = 2 * lambda + sub.two_rho();
  for (const auto& beta : sub.positive_roots())
    d *= ratio(sub.ambient().pairing(shifted, beta), sub.ambient().pairing(sub.two_rho(), beta));
  return to_long(d);
}

WeightMultiset irreducible_weights(const Weight& lambda, const Subsystem& sub) {
  if (!sub.is_dominant(lambda)) throw InputError(kModule, "irreducible_weights needs a dominant weight");
  const auto& rs = sub.ambient();
  const Weight lowest = -sub.dual(lambda);
  auto span = sub.simple_coords(lambda - lowest);
  if (!span) throw ConsistencyError(kModule, "lambda - w0 lambda outside the subsystem root span");
  std::vector<long> bound;
  for (const auto& c : *span) bound.push_back(to_long(c));

  // Dominant weights lambda - sum n_i beta_i with 0 <= n_i <= bound_i, by depth.
  std::vector<std::pair<long, Weight>> dominant;
  std::vector<long> n(bound.size(), 0);
  const auto& simple = sub.simple_roots();
  while (true) {
    Weight mu = lambda;
    long depth = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      mu -= n[i] * rs.to_weight(simple[i]);
      depth += n[i];
    }
    if (sub.is_dominant(mu)) dominant.emplace_back(depth, mu);
    std::size_t k = 0;
    while (k < n.size() && n[k] == bound[k]) n[k++] = 0;
    if (k == n.size()) break;
    ++n[k];
  }
  std::sort(dominant.begin(), dominant.end());

  auto rho_shift = [&](const Weight& w) {
    RationalVector v(w.fw.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ratio(2 * w.fw[i] + sub.two_rho().fw[i], 2);
    return v;
  };
  const RationalVector lr = rho_shift(lambda);
  const Rational top = rs.inner(lr, lr);

  std::map<Weight, long> mult;
  auto lookup = [&](const Weight& nu) -> long {
    auto it = mult.find(sub.dominant_conjugate(nu));
    return it == mult.end() ? 0 : it->second;
  };
  for (const auto& [depth, mu] : dominant) {
    if (depth == 0) {
      mult[mu] = 1;
      continue;
    }
    Rational num = 0;
    for (const auto& beta : sub.positive_roots()) {
      const Weight bw = rs.to_weight(beta);
      Weight nu = mu + bw;
      for (long m = lookup(nu); m != 0; nu += bw, m = lookup(nu)) num += m * rs.inner(nu, bw);
    }
    const RationalVector mr = rho_shift(mu);
    Rational val = 2 * num / (top - rs.inner(mr, mr));
    mult[mu] = to_long(val);
  }
  WeightMultiset out;
  for (const auto& [mu, m] : mult) {
    if (m == 0) continue;
    for (const auto& nu : sub.orbit(mu)) out[nu] = m;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partitions

PartitionCounter::PartitionCounter(const RootSystem& rs, std::vector<Weight> S, std::optional<Grading> grading)
    : rs_(&rs), S_(std::move(S)) {
  grading_ = grading ? *grading : Grading{std::vector<long>(static_cast<std::size_t>(rs.rank()), 1)};
  if (static_cast<int>(grading_.on_simple_roots.size()) != rs.rank())
    throw InputError(kModule, "grading length does not match rank");
  for (const auto& s : S_) {
    Rational v = value(s);
    if (sgn(v) <= 0)
      throw InputError(kModule, "partition multiset element " + to_string(s) + " is not positive for the grading");
    values_.push_back(v);
  }
}

Rational PartitionCounter::value(const Weight& w) const {
  auto rc = rs_->root_coords(w);
  Rational v = 0;
  for (std::size_t i = 0; i < rc.size(); ++i) v += rc[i] * grading_.on_simple_roots[i];
  return v;
}

long PartitionCounter::count(const Weight& mu) const { return count_from(0, mu, -1); }

long PartitionCounter::count_with_parts(const Weight& mu, int parts) const {
  if (parts < 0) return 0;
  return count_from(0, mu, parts);
}

long PartitionCounter::count_from(std::size_t j, const Weight& mu, int parts) const {
  if (j == S_.size()) return (mu.is_zero() && parts <= 0) ? 1 : 0;
  if (sgn(value(mu)) < 0) return 0;
  auto key = std::make_tuple(j, mu, parts);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  long total = 0;
  Weight rest = mu;
  for (int t = 0;; ++t) {
    if (parts >= 0 && t > parts) break;
    if (sgn(value(rest)) < 0) break;
    total += count_from(j + 1, rest, parts < 0 ? -1 : parts - t);
    rest -= S_[j];
  }
  memo_.emplace(key, total);
  return total;
}

long kostant_partition(const Weight& mu, const std::vector<Weight>& S, const RootSystem& rs,
                       std::optional<Grading> grading) {
  return PartitionCounter(rs, S, std::move(grading)).count(mu);
}

// ---------------------------------------------------------------------------
// VirtualCharacter

VirtualCharacter VirtualCharacter::irreducible(const Weight& highest, long mult) {
  VirtualCharacter v;
  v.add(highest, mult);
  return v;
}

long VirtualCharacter::multiplicity(const Weight& highest) const {
  auto it = terms_.find(highest);
  return it == terms_.end() ? 0 : it->second;
}

void VirtualCharacter::add(const Weight& highest, long mult) {
  if (mult == 0) return;
  auto& m = terms_[highest];
  m += mult;
  if (m == 0) terms_.erase(highest);
}

VirtualCharacter& VirtualCharacter::operator+=(const VirtualCharacter& o) {
  for (const auto& [w, m] : o.terms_) add(w, m);
  return *this;
}

VirtualCharacter& VirtualCharacter::operator-=(const VirtualCharacter& o) {
  for (const auto& [w, m] : o.terms_) add(w, -m);
  return *this;
}

VirtualCharacter VirtualCharacter::operator-() const {
  VirtualCharacter v;
  for (const auto& [w, m] : terms_) v.add(w, -m);
  return v;
}

VirtualCharacter VirtualCharacter::dual(const Subsystem& sub) const {
  VirtualCharacter v;
  for (const auto& [w, m] : terms_) v.add(sub.dual(w), m);
  return v;
}

long VirtualCharacter::dimension(const Subsystem& sub) const {
  long d = 0;
  for (const auto& [w, m] : terms_) d += m * weyl_dimension(w, sub);
  return d;
}

WeightMultiset VirtualCharacter::weights(const Subsystem& sub) const {
  WeightMultiset out;
  for (const auto& [w, m] : terms_)
    for (const auto& [nu, k] : irreducible_weights(w, sub)) {
      auto& slot = out[nu];
      slot += m * k;
      if (slot == 0) out.erase(nu);
    }
  return out;
}

bool VirtualCharacter::all_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

VirtualCharacter decompose_character(const WeightMultiset& weights, const Subsystem& sub) {
  WeightMultiset rest;
  for (const auto& [w, m] : weights)
    if (m != 0) rest[w] = m;
  VirtualCharacter out;
  auto level = [&](const Weight& w) {
    long s = 0;
    for (const auto& beta : sub.positive_roots()) s += sub.ambient().pairing(w, beta);
    return s;
  };
  while (!rest.empty()) {
    const Weight* best = nullptr;
    long best_level = 0;
    for (const auto& [w, m] : rest) {
      if (!sub.is_dominant(w)) continue;
      long l = level(w);
      if (!best || l > best_level) {
        best = &w;
        best_level = l;
      }
    }
    if (!best) throw ConsistencyError(kModule, "weight multiset is not Weyl-invariant (no dominant weight left)");
    const Weight top = *best;
    const long m = rest.at(top);
    for (const auto& [nu, k] : irreducible_weights(top, sub)) {
      auto& slot = rest[nu];
      slot -= m * k;
      if (slot == 0) rest.erase(nu);
    }
    out.add(top, m);
    if (out.terms().size() > 100000) throw ConsistencyError(kModule, "character decomposition did not terminate");
  }
  return out;
}

}  // namespace ksr::rootdata
