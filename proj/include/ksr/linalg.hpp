#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ksr/rational.hpp"

namespace ksr::linalg {

/// Dense matrix over Q, row-major. All arithmetic is exact.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  /// Builds a matrix whose columns are the given vectors (all of equal length).
  static RationalMatrix from_columns(const std::vector<RationalVector>& cols, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector column(std::size_t c) const;
  RationalVector row(std::size_t r) const;
  RationalMatrix transpose() const;

  bool is_zero() const;
  Rational trace() const;

  RationalMatrix& operator+=(const RationalMatrix& other);
  RationalMatrix& operator-=(const RationalMatrix& other);
  RationalMatrix& operator*=(const Rational& s);

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalVector operator*(const RationalMatrix& a, const RationalVector& v);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// [a, b] = ab - ba.
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// Reduced row echelon form in place; returns pivot columns in increasing order.
std::vector<std::size_t> rref(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Basis of {x : m x = 0}, one vector per free column of the RREF.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Some solution of m x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero, which makes the result deterministic.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

/// Indices of a maximal linearly independent subset of the columns, greedy left to right.
std::vector<std::size_t> independent_columns(const RationalMatrix& m);

/// Incremental row-rank tracker: rows are reduced against the current echelon
/// basis as they arrive, so rank can be queried after every batch.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}
  /// Returns true when the row enlarged the span.
  bool add(RationalVector row);
  std::size_t rank() const noexcept { return basis_.size(); }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::size_t cols_;
  std::vector<RationalVector> basis_;  // each row normalized with leading 1 at pivots_[i]
  std::vector<std::size_t> pivots_;
};

}  // namespace ksr::linalg
