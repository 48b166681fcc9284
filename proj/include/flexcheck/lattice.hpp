#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace flexcheck {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of a lattice Z^n with arbitrary-precision coordinates.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t n) : coords_(n) {}
  LatticeVector(std::initializer_list<long> values);
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}

  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  bool is_zero() const;

  LatticeVector& operator+=(const LatticeVector& other);
  LatticeVector& operator-=(const LatticeVector& other);
  LatticeVector& operator*=(const Integer& k);

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) { return a *= k; }
  LatticeVector operator-() const;

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
  /// Lexicographic order on coordinates.
  friend bool operator<(const LatticeVector& a, const LatticeVector& b);

  std::string to_string() const;
  /// Coordinates as machine integers; throws if any does not fit.
  std::vector<long> to_longs() const;

 private:
  std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

struct LatticeVectorHash {
  std::size_t operator()(const LatticeVector& v) const;
};

Integer dot(const LatticeVector& a, const LatticeVector& b);

/// A vector of M_Q or N_Q. Entries are kept canonical by GMP.
using RationalVector = std::vector<Rational>;

/// Dense row-major integer matrix.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);
  /// Matrix whose rows are the given vectors (all of length `cols`).
  static IntegerMatrix from_rows(std::span<const LatticeVector> rows, std::size_t cols);
  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const;
  IntegerMatrix transpose() const;
  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct HermiteResult {
  IntegerMatrix hermite;     // H
  IntegerMatrix transform;   // U, unimodular, U * A = H
};

/// Row-style Hermite normal form: pivots are positive and strictly to the
/// right of the pivot of the previous row; entries above a pivot lie in
/// [0, pivot). Zero rows are moved to the bottom.
HermiteResult hermite_normal_form(const IntegerMatrix& a);

/// Rank over Q.
std::size_t rank(const IntegerMatrix& a);
std::size_t rank(std::span<const LatticeVector> rows, std::size_t cols);

/// Determinant of a square matrix (fraction-free elimination).
Integer determinant(const IntegerMatrix& a);

/// v divided by the gcd of its entries.
LatticeVector primitive(const LatticeVector& v);

/// Z-basis of { x in Z^cols : A x = 0 }.
std::vector<LatticeVector> kernel_lattice(const IntegerMatrix& a);
std::vector<LatticeVector> kernel_lattice(std::span<const LatticeVector> rows, std::size_t cols);

/// Solves sum_i t_i * columns[i] = target over Q. Returns nullopt when the
/// system is inconsistent. Free variables are set to zero.
std::optional<RationalVector> solve_rational(std::span<const LatticeVector> columns,
                                             const LatticeVector& target);

/// Rank over an arbitrary exact field type F providing +,-,*,/ and
/// comparison against a zero F.
template <class F>
std::size_t field_rank(std::vector<std::vector<F>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const F zero{};
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == zero) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    const F inv = F(1) / m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == zero) continue;
      const F factor = m[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) m[r][k] = m[r][k] - factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace flexcheck
