#include "ksr/linalg.hpp"

#include <algorithm>

#include "ksr/errors.hpp"

namespace ksr::linalg {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& cols, std::size_t rows) {
  RationalMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw ConsistencyError("linalg", "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ConsistencyError("linalg", "shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ConsistencyError("linalg", "shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s) {
  for (auto& q : data_) q *= s;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw ConsistencyError("linalg", "shape mismatch in *");
  RationalMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) m(i, j) += aik * b(k, j);
    }
  return m;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& v) {
  if (a.cols_ != v.size()) throw ConsistencyError("linalg", "shape mismatch in matrix-vector product");
  RationalVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (sgn(v[k]) != 0 && sgn(a(i, k)) != 0) out[i] += a(i, k) * v[k];
  return out;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead, j));
    Rational inv = 1 / m(lead, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || sgn(m(r, c)) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(lead, j)) != 0) m(r, j) -= f * m(lead, j);
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

std::size_t rank(RationalMatrix m) {
  // Row-echelon only; no back substitution needed for the count.
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead, j));
    for (std::size_t r = lead + 1; r < m.rows(); ++r) {
      if (sgn(m(r, c)) == 0) continue;
      Rational f = m(r, c) / m(lead, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(lead, j)) != 0) m(r, j) -= f * m(lead, j);
    }
    ++lead;
  }
  return lead;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  RationalMatrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw ConsistencyError("linalg", "rhs length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RationalVector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

std::vector<std::size_t> independent_columns(const RationalMatrix& m) {
  RationalMatrix r = m;
  return rref(r);
}

bool RowSpace::add(RationalVector row) {
  if (row.size() != cols_) throw ConsistencyError("linalg", "row length mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational& f = row[pivots_[i]];
    if (sgn(f) == 0) continue;
    Rational factor = f;
    const auto& b = basis_[i];
    for (std::size_t j = pivots_[i]; j < cols_; ++j)
      if (sgn(b[j]) != 0) row[j] -= factor * b[j];
  }
  std::size_t p = 0;
  while (p < cols_ && sgn(row[p]) == 0) ++p;
  if (p == cols_) return false;
  Rational inv = 1 / row[p];
  for (std::size_t j = p; j < cols_; ++j) row[j] *= inv;
  // Keep the basis fully reduced at the new pivot so later reductions stay one-pass.
  for (auto& b : basis_) {
    if (sgn(b[p]) == 0) continue;
    Rational f = b[p];
    for (std::size_t j = p; j < cols_; ++j)
      if (sgn(row[j]) != 0) b[j] -= f * row[j];
  }
  basis_.push_back(std::move(row));
  pivots_.push_back(p);
  return true;
}

}  // namespace ksr::linalg
