#pragma once

#include <array>
#include <optional>
#include <string>

#include "flexcheck/lattice.hpp"

namespace flexcheck {

/// Element of Q(e) with e^4 = -1, stored as c0 + c1 e + c2 e^2 + c3 e^3.
/// Rational values keep the higher coefficients unallocated.
class Number {
 public:
  Number() = default;
  Number(long v) : c0_(v) {}  // NOLINT(google-explicit-constructor)
  Number(const Rational& v) : c0_(v) {}  // NOLINT(google-explicit-constructor)
  Number(const Integer& v) : c0_(v) {}  // NOLINT(google-explicit-constructor)
  static Number from_coefficients(const std::array<Rational, 4>& c);
  /// The primitive 8th root of unity e.
  static Number epsilon();
  /// e^k for any integer k.
  static Number epsilon_power(long k);

  bool is_zero() const { return sgn(c0_) == 0 && !hi_; }
  bool is_one() const { return c0_ == 1 && !hi_; }
  bool is_rational() const { return !hi_; }
  const Rational& rational_part() const { return c0_; }
  Rational coefficient(int i) const;

  Number operator-() const;
  Number& operator+=(const Number& o);
  Number& operator-=(const Number& o);
  Number& operator*=(const Number& o);
  Number& operator/=(const Number& o) { return *this *= o.inverse(); }
  friend Number operator+(Number a, const Number& b) { return a += b; }
  friend Number operator-(Number a, const Number& b) { return a -= b; }
  friend Number operator*(Number a, const Number& b) { return a *= b; }
  friend Number operator/(Number a, const Number& b) { return a /= b; }
  friend bool operator==(const Number& a, const Number& b) { return a.c0_ == b.c0_ && a.hi_ == b.hi_; }

  /// Throws on zero.
  Number inverse() const;
  Number pow(unsigned long k) const;
  /// Image under the automorphism e -> e^k (k odd).
  Number conjugate(int k) const;
  /// Field norm down to Q.
  Rational norm() const;

  /// Rationals print as "3/2"; others as a sum of powers of e, e.g. "1/2 + 3*e - e^3".
  std::string to_string() const;

 private:
  Rational c0_;
  std::optional<std::array<Rational, 3>> hi_;

  void normalize();
};

}  // namespace flexcheck
