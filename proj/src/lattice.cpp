#include "flexcheck/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace flexcheck {

LatticeVector::LatticeVector(std::initializer_list<long> values) {
  coords_.reserve(values.size());
  for (long v : values) coords_.emplace_back(v);
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
  if (other.size() != size()) throw Error("lattice vector rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
  if (other.size() != size()) throw Error("lattice vector rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator*=(const Integer& k) {
  for (auto& c : coords_) c *= k;
  return *this;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

bool operator<(const LatticeVector& a, const LatticeVector& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                      b.coords_.end(),
                                      [](const Integer& x, const Integer& y) { return cmp(x, y) < 0; });
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << ',';
    os << coords_[i].get_str();
  }
  os << ')';
  return os.str();
}

std::vector<long> LatticeVector::to_longs() const {
  std::vector<long> out;
  out.reserve(size());
  for (const auto& c : coords_) {
    if (!c.fits_slong_p()) throw Error("coordinate does not fit a machine integer: " + c.get_str());
    out.push_back(c.get_si());
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.to_string(); }

std::size_t LatticeVectorHash::operator()(const LatticeVector& v) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : v.coords()) {
    std::size_t x = c.fits_slong_p() ? static_cast<std::size_t>(c.get_si())
                                     : std::hash<std::string>{}(c.get_str());
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error("pairing of vectors of different rank");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::from_rows(std::span<const LatticeVector> rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("row length does not match the column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

LatticeVector IntegerMatrix::row(std::size_t r) const {
  std::vector<Integer> v(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  return LatticeVector(std::move(v));
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product dimension mismatch");
  IntegerMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << row(r).to_string();
  }
  os << ']';
  return os.str();
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) swap(m(a, c), m(b, c));
}

// rows (a, b) <- (p*a + q*b, r*a + s*b)
void combine_rows(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                  const Integer& r, const Integer& s) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Integer x = m(a, c), y = m(b, c);
    m(a, c) = p * x + q * y;
    m(b, c) = r * x + s * y;
  }
}

// row a <- row a - k * row b
void sub_multiple(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& k) {
  if (sgn(k) == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(a, c) -= k * m(b, c);
}

void negate_row(IntegerMatrix& m, std::size_t a) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(a, c) = -m(a, c);
}

}  // namespace

HermiteResult hermite_normal_form(const IntegerMatrix& a) {
  IntegerMatrix h = a;
  IntegerMatrix u = IntegerMatrix::identity(a.rows());
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
    // Collapse column c below pivot_row into a single gcd entry.
    for (std::size_t r = pivot_row + 1; r < h.rows(); ++r) {
      if (sgn(h(r, c)) == 0) continue;
      if (sgn(h(pivot_row, c)) == 0) {
        swap_rows(h, pivot_row, r);
        swap_rows(u, pivot_row, r);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(pivot_row, c).get_mpz_t(),
                 h(r, c).get_mpz_t());
      Integer x = h(pivot_row, c) / g;
      Integer y = h(r, c) / g;
      // [s t; -y x] has determinant s*x + t*y = 1.
      combine_rows(h, pivot_row, r, s, t, -y, x);
      combine_rows(u, pivot_row, r, s, t, -y, x);
    }
    if (sgn(h(pivot_row, c)) == 0) continue;
    if (sgn(h(pivot_row, c)) < 0) {
      negate_row(h, pivot_row);
      negate_row(u, pivot_row);
    }
    const Integer& p = h(pivot_row, c);
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, c).get_mpz_t(), p.get_mpz_t());
      sub_multiple(h, r, pivot_row, q);
      sub_multiple(u, r, pivot_row, q);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u)};
}

std::size_t rank(const IntegerMatrix& a) {
  std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = a(r, c);
  return field_rank(std::move(m));
}

std::size_t rank(std::span<const LatticeVector> rows, std::size_t cols) {
  return rank(IntegerMatrix::from_rows(rows, cols));
}

Integer determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m(r, k)) == 0) ++r;
      if (r == n) return 0;
      swap_rows(m, k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

LatticeVector primitive(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v.coords()) g = gcd(g, c);
  if (sgn(g) == 0) throw Error("no primitive direction: zero vector");
  LatticeVector r = v;
  for (std::size_t i = 0; i < r.size(); ++i) mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

std::vector<LatticeVector> kernel_lattice(const IntegerMatrix& a) {
  // U * A^T = H; rows of U facing zero rows of H span the integer kernel.
  const std::size_t n = a.cols();
  if (a.rows() == 0) {
    std::vector<LatticeVector> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(IntegerMatrix::identity(n).row(i));
    return basis;
  }
  HermiteResult hr = hermite_normal_form(a.transpose());
  std::vector<LatticeVector> basis;
  for (std::size_t r = 0; r < n; ++r) {
    if (hr.hermite.row(r).is_zero()) basis.push_back(hr.transform.row(r));
  }
  return basis;
}

std::vector<LatticeVector> kernel_lattice(std::span<const LatticeVector> rows, std::size_t cols) {
  return kernel_lattice(IntegerMatrix::from_rows(rows, cols));
}

std::optional<RationalVector> solve_rational(std::span<const LatticeVector> columns,
                                             const LatticeVector& target) {
  const std::size_t n = target.size();
  const std::size_t k = columns.size();
  // Augmented matrix n x (k+1).
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r][c] = columns[c][r];
    m[r][k] = target[r];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < n; ++c) {
    std::size_t p = row;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][c];
    for (std::size_t j = c; j <= k; ++j) m[row][j] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = c; j <= k; ++j) m[r][j] -= f * m[row][j];
    }
    pivot_cols.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (sgn(m[r][k]) != 0) return std::nullopt;
  RationalVector t(k);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) t[pivot_cols[i]] = m[i][k];
  return t;
}

}  // namespace flexcheck
