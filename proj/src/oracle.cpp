#include "ksr/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "ksr/errors.hpp"

namespace ksr::oracle {

namespace {

constexpr const char* kModule = "oracle";

using linalg::commutator;

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : gen_(seed ^ (stream * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL)) {}
  long uniform(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  long nonzero(long bound) {
    long v = uniform(1, bound);
    return uniform(0, 1) ? v : -v;
  }
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 gen_;
};

RationalVector flatten(const RationalMatrix& m) {
  RationalVector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

RationalMatrix unflatten(const RationalVector& v, std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

RationalMatrix unit(std::size_t n, std::size_t r, std::size_t c) {
  RationalMatrix m(n, n);
  m(r, c) = 1;
  return m;
}

RationalMatrix diagonal(const RationalVector& d) {
  RationalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::vector<RationalMatrix> to_matrices(const std::vector<RationalVector>& vs, std::size_t n) {
  std::vector<RationalMatrix> out;
  for (const auto& v : vs) out.push_back(unflatten(v, n));
  return out;
}

/// Combination of basis elements of V from coordinates.
RationalMatrix combine(const Subspace& V, const std::vector<long>& coeffs) {
  RationalMatrix m(V.matrix_size(), V.matrix_size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) m += V[i] * Rational(coeffs[i]);
  return m;
}

/// Rank of the span of ad(X) applied to the basis of V.
int image_rank(const RationalMatrix& X, const std::vector<RationalMatrix>& V) {
  if (V.empty()) return 0;
  std::vector<RationalVector> cols;
  for (const auto& b : V) cols.push_back(flatten(commutator(X, b)));
  return static_cast<int>(linalg::rank(RationalMatrix::from_columns(cols, cols.front().size())));
}

/// Y in V with [X, Y] = H and [H, Y] = -2Y.
std::optional<RationalMatrix> solve_y(const Subspace& V, const RationalMatrix& H, const RationalMatrix& X) {
  const std::size_t nn = H.rows() * H.cols();
  RationalMatrix A(2 * nn, V.dim());
  for (std::size_t j = 0; j < V.dim(); ++j) {
    auto top = flatten(commutator(X, V[j]));
    auto bottom = flatten(commutator(H, V[j]) + V[j] * Rational(2));
    for (std::size_t r = 0; r < nn; ++r) {
      A(r, j) = top[r];
      A(nn + r, j) = bottom[r];
    }
  }
  RationalVector b(2 * nn);
  auto h = flatten(H);
  std::copy(h.begin(), h.end(), b.begin());
  auto sol = linalg::solve(A, b);
  if (!sol) return std::nullopt;
  return V.element(*sol);
}

// Polynomials over Q, coefficients low to high.
using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  return d;
}

Rational evaluate(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

Poly minimal_polynomial(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<RationalVector> powers{flatten(RationalMatrix::identity(n))};
  RationalMatrix cur = RationalMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    cur = cur * m;
    auto target = flatten(cur);
    auto sol = linalg::solve(RationalMatrix::from_columns(powers, n * n), target);
    if (sol) {
      Poly p;
      for (const auto& c : *sol) p.push_back(-c);
      p.push_back(1);
      return p;
    }
    powers.push_back(std::move(target));
  }
  throw ConsistencyError(kModule, "minimal polynomial degree exceeds matrix size");
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  if (n > mpz_class("100000000000000")) throw DiagnosticError(kModule, "eigenvalue search: constant term too large to factor");
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t n, const std::vector<RationalMatrix>& spanning) : n_(n) {
  if (spanning.empty()) return;
  std::vector<RationalVector> cols;
  for (const auto& m : spanning) cols.push_back(flatten(m));
  auto F = RationalMatrix::from_columns(cols, n * n);
  for (auto j : linalg::independent_columns(F)) basis_.push_back(spanning[j]);
  std::vector<RationalVector> bcols;
  for (const auto& m : basis_) bcols.push_back(flatten(m));
  auto B = RationalMatrix::from_columns(bcols, n * n);
  pivot_entries_ = linalg::independent_columns(B.transpose());
  const std::size_t d = basis_.size();
  RationalMatrix S(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) S(i, j) = B(pivot_entries_[i], j);
  inverse_ = RationalMatrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    RationalVector e(d);
    e[j] = 1;
    auto col = linalg::solve(S, e);
    if (!col) throw ConsistencyError(kModule, "subspace pivot block is singular");
    for (std::size_t i = 0; i < d; ++i) inverse_(i, j) = (*col)[i];
  }
}

std::optional<RationalVector> Subspace::coords(const RationalMatrix& m) const {
  if (basis_.empty()) {
    if (m.is_zero()) return RationalVector{};
    return std::nullopt;
  }
  RationalVector entries;
  for (auto idx : pivot_entries_) entries.push_back(m(idx / n_, idx % n_));
  RationalVector c = inverse_ * entries;
  if (!(element(c) == m)) return std::nullopt;
  return c;
}

RationalMatrix Subspace::element(const RationalVector& c) const {
  RationalMatrix m(n_, n_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (c[i] != 0) m += basis_[i] * c[i];
  return m;
}

Subspace Subspace::sum(std::size_t n, const std::vector<const Subspace*>& parts) {
  std::vector<RationalMatrix> all;
  for (const auto* s : parts) all.insert(all.end(), s->basis().begin(), s->basis().end());
  return Subspace(n, all);
}

// ---------------------------------------------------------------------------
// Realizations

Rational ClassicalRealization::simple_root_value(std::size_t i, const RationalMatrix& diag) const {
  auto [a, b] = simple_entries.at(i);
  return diag(a, a) - diag(b, b);
}

RationalMatrix ClassicalRealization::grading_matrix(const grading::GradingElement& H) const {
  if (H.h.size() != static_cast<std::size_t>(rank)) throw InputError(kModule, "H has the wrong length");
  const auto r = static_cast<std::size_t>(rank);
  RationalMatrix A(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) A(i, j) = simple_root_value(i, simple_coroots[j]);
  RationalVector rhs;
  for (long h : H.h) rhs.push_back(Rational(h));
  auto c = linalg::solve(A, rhs);
  if (!c) throw ConsistencyError(kModule, "simple roots are not independent on the Cartan");
  RationalMatrix out(n, n);
  for (std::size_t j = 0; j < r; ++j) out += simple_coroots[j] * (*c)[j];
  return out;
}

ClassicalRealization realize(const rootdata::RootSystem& rs, const realform::EqualRankInvolution& eps) {
  using rootdata::TypeLabel;
  realform::cartan_decomposition(rs, eps);  // validates epsilon
  ClassicalRealization real;
  real.type = rs.type();
  real.rank = rs.rank();
  real.epsilon = eps.epsilon_simple;
  const auto r = static_cast<std::size_t>(rs.rank());
  const auto& e = eps.epsilon_simple;

  // Defining linear conditions on n x n matrices; g is their common kernel.
  std::vector<RationalVector> constraint_cols;
  RationalVector sdiag;
  switch (rs.type()) {
    case TypeLabel::A: {
      real.family = "sl";
      real.n = r + 1;
      sdiag.push_back(1);
      for (std::size_t i = 0; i < r; ++i) sdiag.push_back(sdiag.back() * e[i]);
      for (std::size_t i = 0; i < r; ++i) {
        real.simple_coroots.push_back(unit(real.n, i, i) - unit(real.n, i + 1, i + 1));
        real.simple_entries.emplace_back(i, i + 1);
      }
      break;
    }
    case TypeLabel::C:
    case TypeLabel::D: {
      const bool sp = rs.type() == TypeLabel::C;
      real.family = sp ? "sp" : "so";
      real.n = 2 * r;
      real.form = RationalMatrix(real.n, real.n);
      for (std::size_t i = 0; i < r; ++i) {
        real.form(i, r + i) = 1;
        real.form(r + i, i) = sp ? -1 : 1;
      }
      RationalVector sigma{1};
      for (std::size_t i = 0; i + 1 < r; ++i) sigma.push_back(sigma.back() * e[i]);
      Rational c = sp ? Rational(e[r - 1]) : Rational(e[r - 2] * e[r - 1]);
      sdiag = sigma;
      for (const auto& x : sigma) sdiag.push_back(c * x);
      auto block = [&](std::size_t a, std::size_t b) {  // diag(E_aa - E_bb, -(E_aa - E_bb))
        return unit(real.n, a, a) - unit(real.n, b, b) - unit(real.n, r + a, r + a) + unit(real.n, r + b, r + b);
      };
      for (std::size_t i = 0; i + 1 < r; ++i) {
        real.simple_coroots.push_back(block(i, i + 1));
        real.simple_entries.emplace_back(i, i + 1);
      }
      if (sp) {
        real.simple_coroots.push_back(unit(real.n, r - 1, r - 1) - unit(real.n, 2 * r - 1, 2 * r - 1));
        real.simple_entries.emplace_back(r - 1, 2 * r - 1);
      } else {
        real.simple_coroots.push_back(unit(real.n, r - 2, r - 2) + unit(real.n, r - 1, r - 1) -
                                      unit(real.n, 2 * r - 2, 2 * r - 2) - unit(real.n, 2 * r - 1, 2 * r - 1));
        real.simple_entries.emplace_back(r - 2, 2 * r - 1);
      }
      break;
    }
    default:
      throw OutOfScopeError(kModule, "no matrix model for type " + rs.name() + " (classical types A, C, D only)");
  }
  const std::size_t n = real.n;
  real.s = diagonal(sdiag);

  RationalMatrix C;
  if (real.family == "sl") {
    C = RationalMatrix(1, n * n);
    for (std::size_t i = 0; i < n; ++i) C(0, i * n + i) = 1;
  } else {
    C = RationalMatrix(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto E = unit(n, a, b);
        auto col = flatten(E.transpose() * real.form + real.form * E);
        for (std::size_t i = 0; i < n * n; ++i) C(i, a * n + b) = col[i];
      }
  }
  real.g = Subspace(n, to_matrices(linalg::nullspace(C), n));

  auto eigen = [&](int sign) {
    const std::size_t d = real.g.dim();
    RationalMatrix T(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      auto img = real.g.coords(real.theta(real.g[j]));
      if (!img) throw ConsistencyError(kModule, "theta does not preserve g");
      for (std::size_t i = 0; i < d; ++i) T(i, j) = (*img)[i] - (i == j ? Rational(sign) : Rational(0));
    }
    std::vector<RationalMatrix> out;
    for (const auto& v : linalg::nullspace(T)) out.push_back(real.g.element(v));
    return Subspace(n, out);
  };
  real.k = eigen(1);
  real.p = eigen(-1);
  real.cartan = Subspace(n, real.simple_coroots);
  if (real.k.dim() + real.p.dim() != real.g.dim()) throw ConsistencyError(kModule, "theta is not an involution on g");
  return real;
}

ClassicalRealization realize(const std::string& form_name) {
  auto f = realform::standard_form_catalog(form_name);
  return realize(f.rs, f.eps);
}

std::vector<std::string> validate(const ClassicalRealization& real) {
  std::vector<std::string> bad;
  const std::size_t n = real.n;
  if (!(real.s * real.s == RationalMatrix::identity(n))) bad.push_back("s^2 != 1");
  for (const auto& b : real.g.basis())
    if (!real.g.contains(real.theta(b))) bad.push_back("theta does not preserve g");
  for (std::size_t i = 0; i < real.g.dim(); ++i)
    for (std::size_t j = i + 1; j < real.g.dim(); ++j)
      if (!real.g.contains(commutator(real.g[i], real.g[j]))) {
        bad.push_back("g is not closed under brackets");
        i = real.g.dim();
        break;
      }
  const std::size_t d = real.g.dim();
  RationalMatrix gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) gram(i, j) = (real.g[i] * real.g[j]).trace();
  if (linalg::rank(gram) != d) bad.push_back("trace form is degenerate on g");
  for (const auto& h : real.simple_coroots)
    if (!real.k.contains(h)) bad.push_back("Cartan is not contained in k");
  auto rs = rootdata::RootSystem::build(real.type, real.rank);
  if (static_cast<int>(d) != rs.dimension()) bad.push_back("dim g does not match the root system");
  auto cd = realform::cartan_decomposition(rs, {real.epsilon});
  if (static_cast<int>(real.k.dim()) != cd.k_dim) bad.push_back("dim k does not match the root data");
  if (static_cast<int>(real.p.dim()) != cd.p_dim) bad.push_back("dim p does not match the root data");
  // Cartan matrix read off the matrices.
  for (std::size_t i = 0; i < real.simple_coroots.size(); ++i)
    for (std::size_t j = 0; j < real.simple_coroots.size(); ++j)
      if (real.simple_root_value(j, real.simple_coroots[i]) != rs.cartan_matrix()[i][j])
        bad.push_back("simple roots and coroots do not reproduce the Cartan matrix");
  return bad;
}

// ---------------------------------------------------------------------------
// Spectra

std::vector<Rational> rational_eigenvalues(const RationalMatrix& m) {
  Poly p = minimal_polynomial(m);
  std::vector<Rational> roots;
  std::size_t lowest = 0;
  while (lowest < p.size() && p[lowest] == 0) ++lowest;
  if (lowest > 0) roots.push_back(0);
  Poly q(p.begin() + static_cast<long>(lowest), p.end());
  if (q.size() <= 1) return roots;
  mpz_class den = 1;
  for (const auto& c : q) den = lcm(den, c.get_den());
  std::vector<mpz_class> ints;
  for (const auto& c : q) {
    Rational scaled = c * Rational(den);
    ints.push_back(scaled.get_num());
  }
  std::set<Rational> found;
  for (const auto& num : divisors(ints.front()))
    for (const auto& dd : divisors(ints.back()))
      for (int sgn : {1, -1}) {
        Rational cand(num * sgn, dd);
        cand.canonicalize();
        if (evaluate(q, cand) == 0) found.insert(cand);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_semisimple(const RationalMatrix& m) {
  Poly p = minimal_polynomial(m);
  Poly g = poly_gcd(p, derivative(p));
  return g.size() <= 1;
}

std::map<long, Subspace> ad_eigenspaces(const Subspace& V, const RationalMatrix& H) {
  const std::size_t d = V.dim();
  const std::size_t n = H.rows();
  std::map<long, Subspace> out;
  if (d == 0) return out;
  RationalMatrix A(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto img = V.coords(commutator(H, V[j]));
    if (!img) throw InputError(kModule, "ad(H) does not preserve the subspace");
    for (std::size_t i = 0; i < d; ++i) A(i, j) = (*img)[i];
  }
  auto ev = rational_eigenvalues(H);
  std::set<long> candidates{0};
  for (const auto& a : ev)
    for (const auto& b : ev) {
      Rational diff = a - b;
      if (is_integer(diff)) candidates.insert(to_long(diff));
    }
  std::size_t total = 0;
  for (long lam : candidates) {
    RationalMatrix shifted = A;
    for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= lam;
    auto ns = linalg::nullspace(shifted);
    if (ns.empty()) continue;
    std::vector<RationalMatrix> mats;
    for (const auto& v : ns) mats.push_back(V.element(v));
    total += ns.size();
    out.emplace(lam, Subspace(n, mats));
  }
  if (total != d) throw InputError(kModule, "ad(H) is not semisimple with integer eigenvalues");
  return out;
}

// ---------------------------------------------------------------------------
// Triples

bool is_sl2_triple(const SL2Triple& t) {
  return commutator(t.H, t.X) == t.X * Rational(2) && commutator(t.X, t.Y) == t.H &&
         commutator(t.H, t.Y) == t.Y * Rational(-2);
}

bool is_normalized(const ClassicalRealization& real, const SL2Triple& t) {
  return is_sl2_triple(t) && real.theta(t.H) == t.H && real.theta(t.X) == t.X * Rational(-1) &&
         real.theta(t.Y) == t.Y * Rational(-1);
}

bool is_nilpotent(const RationalMatrix& x) {
  RationalMatrix cur = x;
  for (std::size_t i = 1; i < x.rows(); ++i) cur = cur * x;
  return cur.is_zero();
}

SL2Triple jm_triple(const ClassicalRealization& real, const RationalMatrix& X) {
  if (X.is_zero()) throw InputError(kModule, "X = 0 has no sl(2)-triple");
  if (!real.g.contains(X)) throw InputError(kModule, "X is not in g");
  if (!is_nilpotent(X)) throw InputError(kModule, "X is not nilpotent");
  const std::size_t n = real.n;
  // A diagonal H first: it gives the familiar normal forms when X is a sum of
  // root vectors for independent roots.
  {
    std::vector<RationalVector> cols;
    for (const auto& h : real.simple_coroots) cols.push_back(flatten(commutator(h, X)));
    auto c = linalg::solve(RationalMatrix::from_columns(cols, n * n), flatten(X * Rational(2)));
    if (c) {
      RationalMatrix H = real.cartan.element(*c);
      if (auto Y = solve_y(real.g, H, X)) return SL2Triple{H, X, *Y};
    }
  }
  std::vector<RationalVector> cols;
  for (const auto& b : real.g.basis()) cols.push_back(flatten(commutator(commutator(X, b), X)));
  auto z = linalg::solve(RationalMatrix::from_columns(cols, n * n), flatten(X * Rational(2)));
  if (!z) throw InputError(kModule, "no H in [X, g] with [H, X] = 2X");
  RationalMatrix H = commutator(X, real.g.element(*z));
  auto Y = solve_y(real.g, H, X);
  if (!Y) throw ConsistencyError(kModule, "Jacobson-Morozov: no Y for the chosen H");
  SL2Triple t{H, X, *Y};
  if (!is_sl2_triple(t)) throw ConsistencyError(kModule, "Jacobson-Morozov triple fails the bracket identities");
  return t;
}

SL2Triple ks_normalize(const ClassicalRealization& real, const SL2Triple& t) {
  if (!real.p.contains(t.X)) throw InputError(kModule, "X is not in p");
  RationalMatrix Hk = (t.H + real.theta(t.H)) * ratio(1, 2);
  if (!(commutator(Hk, t.X) == t.X * Rational(2))) throw ConsistencyError(kModule, "k-part of H does not grade X");
  auto Y = solve_y(real.p, Hk, t.X);
  if (!Y) throw ConsistencyError(kModule, "no Y in p for the normalized H");
  SL2Triple out{Hk, t.X, *Y};
  if (!is_normalized(real, out)) throw ConsistencyError(kModule, "normalized triple fails its identities");
  return out;
}

// ---------------------------------------------------------------------------
// Gradings and orbits

GradingDims ad_grading_dims(const ClassicalRealization& real, const RationalMatrix& H) {
  if (!real.k.contains(H)) throw InputError(kModule, "H is not in k");
  GradingDims out;
  for (const auto& [d, sp] : ad_eigenspaces(real.k, H)) out.dims[d].first = static_cast<int>(sp.dim());
  for (const auto& [d, sp] : ad_eigenspaces(real.p, H)) out.dims[d].second = static_cast<int>(sp.dim());
  return out;
}

GradingDims root_grading_dims(const grading::GradedDecomposition& gd) {
  GradingDims out;
  for (const auto& [d, block] : gd.blocks) {
    (void)block;
    if (gd.dim_g(d) > 0) out.dims[d] = {gd.dim_k(d), gd.dim_p(d)};
  }
  return out;
}

int orbit_dimension(const ClassicalRealization& real, const RationalMatrix& X) {
  return image_rank(X, real.k.basis());
}

DenseOrbitResult dense_orbit_check(const ClassicalRealization& real, const RationalMatrix& H, const RationalMatrix& X) {
  DenseOrbitResult r;
  auto keig = ad_eigenspaces(real.k, H);
  auto peig = ad_eigenspaces(real.p, H);
  auto p2 = peig.find(2);
  r.dim_p2 = p2 == peig.end() ? 0 : static_cast<int>(p2->second.dim());
  r.x_in_p2 = p2 != peig.end() && !X.is_zero() && p2->second.contains(X);
  if (auto k0 = keig.find(0); k0 != keig.end()) r.rank_k0_to_p2 = image_rank(X, k0->second.basis());
  std::vector<RationalMatrix> kpos;
  for (const auto& [d, sp] : keig)
    if (d >= 1) kpos.insert(kpos.end(), sp.basis().begin(), sp.basis().end());
  for (const auto& [d, sp] : peig)
    if (d >= 3) r.dim_p3 += static_cast<int>(sp.dim());
  r.rank_kpos_to_p3 = image_rank(X, kpos);
  r.dense = r.x_in_p2 && r.dim_p2 > 0 && r.rank_k0_to_p2 == r.dim_p2 && r.rank_kpos_to_p3 == r.dim_p3;
  return r;
}

NilconeResult nilcone_dimension(const ClassicalRealization& real, std::uint64_t seed) {
  NilconeResult out;
  out.seed = seed;
  const int dp = static_cast<int>(real.p.dim());
  if (dp == 0) return out;
  Rng rng(seed, 1);
  int best = dp, semisimple_samples = 0;
  for (int trial = 0; trial < 60 && semisimple_samples < 6; ++trial) {
    ++out.trials;
    std::vector<long> c;
    for (int i = 0; i < dp; ++i) c.push_back(rng.uniform(-5, 5));
    RationalMatrix x = combine(real.p, c);
    if (x.is_zero() || !is_semisimple(x)) continue;
    ++semisimple_samples;
    best = std::min(best, dp - image_rank(x, real.p.basis()));
  }
  if (semisimple_samples == 0) throw DiagnosticError(kModule, "no semisimple element of p found within budget");
  out.cartan_subspace_dim = best;
  out.dimension = dp - best;
  return out;
}

namespace {

/// n ∩ p for a random regular element of the Cartan, as a list of root vectors.
std::vector<RationalMatrix> random_chamber_nilradical(const ClassicalRealization& real, Rng& rng,
                                                      std::vector<RationalMatrix>* k_roots = nullptr) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    RationalMatrix h0(real.n, real.n);
    for (const auto& h : real.simple_coroots) h0 += h * Rational(rng.uniform(-4, 4));
    auto keig = ad_eigenspaces(real.k, h0);
    auto peig = ad_eigenspaces(real.p, h0);
    if (peig.count(0) || keig.at(0).dim() != static_cast<std::size_t>(real.rank)) continue;
    std::vector<RationalMatrix> out;
    for (const auto& [d, sp] : peig)
      if (d > 0) out.insert(out.end(), sp.basis().begin(), sp.basis().end());
    if (k_roots)
      for (const auto& [d, sp] : keig)
        if (d != 0) k_roots->insert(k_roots->end(), sp.basis().begin(), sp.basis().end());
    return out;
  }
  throw DiagnosticError(kModule, "no regular element of the Cartan found");
}

}  // namespace

PrincipalSearch principal_nilpotent_search(const ClassicalRealization& real, std::uint64_t seed, int trials) {
  if (real.p.dim() == 0) throw DiagnosticError(kModule, "p = 0: the nilpotent cone is a point");
  PrincipalSearch out;
  out.seed = seed;
  out.nilcone_dim = nilcone_dimension(real, seed).dimension;
  Rng rng(seed, 2);
  std::vector<RationalMatrix> np;
  for (int t = 0; t < std::max(trials, 100); ++t) {
    if (t % 3 == 0) np = random_chamber_nilradical(real, rng);
    std::vector<long> c;
    for (std::size_t i = 0; i < np.size(); ++i) c.push_back(rng.nonzero(5));
    RationalMatrix X(real.n, real.n);
    for (std::size_t i = 0; i < np.size(); ++i) X += np[i] * Rational(c[i]);
    ++out.trials;
    if (X.is_zero()) continue;
    int d = orbit_dimension(real, X);
    ++out.sampled_orbit_dims[d];
    if (d > out.orbit_dim) {
      out.orbit_dim = d;
      out.X = X;
    }
  }
  if (out.orbit_dim != out.nilcone_dim)
    throw DiagnosticError(kModule, "principal search reached orbit dimension " + std::to_string(out.orbit_dim) +
                                       " but the nilcone has dimension " + std::to_string(out.nilcone_dim) +
                                       " (seed " + std::to_string(seed) + ")");
  return out;
}

std::map<int, int> sample_orbit_dims(const ClassicalRealization& real, std::uint64_t seed, int trials) {
  std::map<int, int> out;
  if (real.p.dim() == 0) return out;
  Rng rng(seed, 3);
  std::vector<RationalMatrix> np;
  for (int t = 0; t < trials; ++t) {
    if (t % 8 == 0) np = random_chamber_nilradical(real, rng);
    RationalMatrix X(real.n, real.n);
    for (const auto& v : np)
      if (rng.coin()) X += v * Rational(rng.nonzero(3));
    if (X.is_zero()) continue;
    ++out[orbit_dimension(real, X)];
  }
  return out;
}

RationalMatrix random_nilpotent(const ClassicalRealization& real, std::uint64_t seed) {
  RationalMatrix X(real.n, real.n);
  if (real.p.dim() == 0) return X;
  Rng rng(seed, 6);
  while (X.is_zero()) {
    auto np = random_chamber_nilradical(real, rng);
    for (const auto& v : np)
      if (rng.coin()) X += v * Rational(rng.nonzero(4));
  }
  return X;
}

// ---------------------------------------------------------------------------
// Hilbert functions of orbit closures

namespace {

RationalMatrix exp_nilpotent(const RationalMatrix& E, const Rational& t) {
  RationalMatrix out = RationalMatrix::identity(E.rows());
  RationalMatrix term = RationalMatrix::identity(E.rows());
  for (long j = 1; j <= static_cast<long>(E.rows()); ++j) {
    term = term * E * (t / Rational(j));
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

std::vector<std::vector<int>> monomials(int vars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(vars), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == vars - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[static_cast<std::size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  if (vars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(0, degree);
  return out;
}

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

std::uint64_t reduce(const mpz_class& z) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mpz_class(static_cast<unsigned long>(kPrime)).get_mpz_t());
  return r.get_ui();
}

std::uint64_t reduce(const Rational& q) {
  std::uint64_t den = reduce(q.get_den());
  if (den == 0) throw DiagnosticError(kModule, "denominator divisible by the modulus");
  return mul_mod(reduce(q.get_num()), pow_mod(den, kPrime - 2));
}

/// Row echelon basis over F_p; each stored row is zero at earlier pivots.
class ModularRowSpace {
 public:
  bool add(std::vector<std::uint64_t> row) {
    for (const auto& [pivot, b] : basis_) {
      std::uint64_t f = row[pivot];
      if (f == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (b[j]) row[j] = (row[j] + kPrime - mul_mod(f, b[j])) % kPrime;
    }
    std::size_t pivot = 0;
    while (pivot < row.size() && row[pivot] == 0) ++pivot;
    if (pivot == row.size()) return false;
    std::uint64_t inv = pow_mod(row[pivot], kPrime - 2);
    for (auto& x : row) x = mul_mod(x, inv);
    basis_.emplace_back(pivot, std::move(row));
    return true;
  }
  std::size_t rank() const { return basis_.size(); }

 private:
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> basis_;
};

}  // namespace

CoordinateRingResult coordinate_ring_dims(const ClassicalRealization& real, const RationalMatrix& X, int k_max,
                                          std::uint64_t seed, int max_points, RankArithmetic arithmetic) {
  if (k_max < 0) throw InputError(kModule, "k_max must be nonnegative");
  if (!real.p.contains(X)) throw InputError(kModule, "X is not in p");
  CoordinateRingResult out;
  out.seed = seed;
  out.arithmetic = arithmetic;
  if (X.is_zero()) {
    for (int k = 0; k <= k_max; ++k) {
      out.dims.push_back(k == 0 ? 1 : 0);
      out.points_used.push_back(1);
    }
    return out;
  }
  Rng rng(seed, 4);
  std::vector<RationalMatrix> k_roots;
  random_chamber_nilradical(real, rng, &k_roots);
  const int dp = static_cast<int>(real.p.dim());
  const std::size_t n = real.n;
  const int word_length = std::max<int>(4, static_cast<int>(k_roots.size()));

  std::vector<RationalVector> points;
  auto new_point = [&]() {
    RationalMatrix g = RationalMatrix::identity(n), ginv = RationalMatrix::identity(n);
    if (!k_roots.empty())
      for (int f = 0; f < word_length; ++f) {
        const auto& E = k_roots[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(k_roots.size()) - 1))];
        Rational t(rng.nonzero(2));
        g = exp_nilpotent(E, t) * g;
        ginv = ginv * exp_nilpotent(E, -t);
      }
    // Rational torus element commuting with s.
    RationalVector d(n), dinv(n);
    if (real.family == "sl") {
      Rational prod = 1;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        d[i] = Rational(rng.nonzero(3));
        prod *= d[i];
      }
      d[n - 1] = 1 / prod;
    } else {
      for (std::size_t i = 0; i < n / 2; ++i) {
        d[i] = Rational(rng.nonzero(3));
        d[n / 2 + i] = 1 / d[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) dinv[i] = 1 / d[i];
    RationalMatrix pt = diagonal(d) * g * X * ginv * diagonal(dinv);
    auto c = real.p.coords(pt);
    if (!c) throw ConsistencyError(kModule, "sampled K-translate left p");
    points.push_back(std::move(*c));
  };

  constexpr int kBatch = 6;
  for (int k = 0; k <= k_max; ++k) {
    auto mons = monomials(dp, k);
    linalg::RowSpace rows(mons.size());
    ModularRowSpace mod_rows;
    auto rank = [&] { return arithmetic == RankArithmetic::Exact ? rows.rank() : mod_rows.rank(); };
    std::size_t used = 0;
    int stable_batches = 0;
    while (true) {
      std::size_t before = rank();
      for (int b = 0; b < kBatch; ++b) {
        if (used == points.size()) {
          if (static_cast<int>(points.size()) >= max_points) {
            std::ostringstream msg;
            msg << "evaluation rank did not stabilize within " << max_points << " points; partial dims:";
            for (auto v : out.dims) msg << ' ' << v;
            msg << " (degree " << k << " reached rank " << rank() << ")";
            throw DiagnosticError(kModule, msg.str());
          }
          new_point();
        }
        const auto& x = points[used++];
        if (arithmetic == RankArithmetic::Exact) {
          RationalVector row;
          row.reserve(mons.size());
          for (const auto& m : mons) {
            Rational v = 1;
            for (std::size_t i = 0; i < m.size(); ++i)
              for (int e = 0; e < m[i]; ++e) v *= x[i];
            row.push_back(v);
          }
          rows.add(std::move(row));
        } else {
          std::vector<std::uint64_t> xm;
          for (const auto& c : x) xm.push_back(reduce(c));
          std::vector<std::uint64_t> row;
          row.reserve(mons.size());
          for (const auto& m : mons) {
            std::uint64_t v = 1;
            for (std::size_t i = 0; i < m.size(); ++i)
              for (int e = 0; e < m[i]; ++e) v = mul_mod(v, xm[i]);
            row.push_back(v);
          }
          mod_rows.add(std::move(row));
        }
      }
      if (rank() == mons.size()) break;
      stable_batches = rank() == before ? stable_batches + 1 : 0;
      if (stable_batches >= 2) break;
    }
    out.dims.push_back(static_cast<long>(rank()));
    out.points_used.push_back(static_cast<int>(used));
  }
  return out;
}

rootdata::Weight canonical_weight(const ClassicalRealization& real, const grading::GradingElement& H) {
  RationalMatrix Hm = real.grading_matrix(H);
  auto keig = ad_eigenspaces(real.k, Hm);
  auto peig = ad_eigenspaces(real.p, Hm);
  auto trace_on = [&](const std::map<long, Subspace>& eig, const RationalMatrix& h) {
    Rational tr = 0;
    for (const auto& [d, sp] : eig) {
      if (d <= 0) continue;
      for (std::size_t j = 0; j < sp.dim(); ++j) {
        auto c = sp.coords(commutator(h, sp[j]));
        if (!c) throw ConsistencyError(kModule, "Cartan does not preserve an ad(H) eigenspace");
        tr += (*c)[j];
      }
    }
    return tr;
  };
  rootdata::Weight w;
  for (const auto& h : real.simple_coroots) w.fw.push_back(to_long(trace_on(peig, h) - trace_on(keig, h)));
  return w;
}

GradingConfirmation confirm_grading(const ClassicalRealization& real, const grading::GradedDecomposition& gd,
                                    int nilcone_dim, std::uint64_t seed) {
  GradingConfirmation c;
  c.H = gd.H;
  c.nilcone_dim = nilcone_dim;
  RationalMatrix Hm = real.grading_matrix(gd.H);
  c.dims_match = ad_grading_dims(real, Hm).dims == root_grading_dims(gd).dims;
  auto keig = ad_eigenspaces(real.k, Hm);
  auto peig = ad_eigenspaces(real.p, Hm);
  auto p2 = peig.find(2);
  if (p2 == peig.end()) return c;
  Rng rng(seed, 5);
  std::vector<long> coeffs;
  for (std::size_t i = 0; i < p2->second.dim(); ++i) coeffs.push_back(rng.nonzero(9));
  RationalMatrix X = combine(p2->second, coeffs);
  c.dense = dense_orbit_check(real, Hm, X);
  if (auto Y = solve_y(real.p, Hm, X)) {
    c.triple = SL2Triple{Hm, X, *Y};
    c.triple_ok = is_normalized(real, c.triple);
  }
  c.orbit_dim = orbit_dimension(real, X);
  c.principal = c.orbit_dim == nilcone_dim;
  // k^X inside q ∩ k.
  std::vector<const Subspace*> qk;
  for (const auto& [d, sp] : keig)
    if (d >= 0) qk.push_back(&sp);
  Subspace qk_space = Subspace::sum(real.n, qk);
  std::vector<RationalVector> cols;
  for (const auto& b : real.k.basis()) cols.push_back(flatten(commutator(X, b)));
  c.centralizer_in_q = true;
  for (const auto& v : linalg::nullspace(RationalMatrix::from_columns(cols, real.n * real.n)))
    if (!qk_space.contains(real.k.element(v))) c.centralizer_in_q = false;
  return c;
}

std::vector<GradingConfirmation> principal_gradings(const ClassicalRealization& real, const rootdata::RootSystem& rs,
                                                    const realform::EqualRankInvolution& eps, std::uint64_t seed,
                                                    long max_h) {
  std::vector<GradingConfirmation> out;
  if (real.p.dim() == 0) return out;
  const int nil = nilcone_dimension(real, seed).dimension;
  std::uint64_t stream = 0;
  for (const auto& H : grading::search_even_gradings(rs, eps, max_h, grading::SearchMode::KChamber)) {
    auto conf = confirm_grading(real, grading::grade(rs, eps, H), nil, seed + (++stream));
    if (conf.confirmed() && conf.principal) out.push_back(std::move(conf));
  }
  return out;
}

series::QctOracleData qct_oracle_data(const ClassicalRealization& real, const rootdata::RootSystem& rs,
                                      const realform::EqualRankInvolution& eps, std::uint64_t seed, int samples) {
  series::QctOracleData d;
  d.seed = seed;
  d.p_dim = static_cast<int>(real.p.dim());
  if (d.p_dim == 0) return d;
  auto search = principal_nilpotent_search(real, seed);
  d.nilcone_dim = search.nilcone_dim;
  d.principal_orbit_dim = search.orbit_dim;
  d.principal_components = static_cast<int>(principal_gradings(real, rs, eps, seed).size());
  d.sampled_orbit_dims = sample_orbit_dims(real, seed, samples);
  return d;
}

std::string to_string(const RationalMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << ksr::to_string(m(r, c));
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace ksr::oracle
