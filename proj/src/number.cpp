#include "flexcheck/number.hpp"

namespace flexcheck {

void Number::normalize() {
  if (hi_ && sgn((*hi_)[0]) == 0 && sgn((*hi_)[1]) == 0 && sgn((*hi_)[2]) == 0) hi_.reset();
}

Number Number::from_coefficients(const std::array<Rational, 4>& c) {
  Number n(c[0]);
  n.hi_ = std::array<Rational, 3>{c[1], c[2], c[3]};
  n.normalize();
  return n;
}

Number Number::epsilon() { return from_coefficients({0, 1, 0, 0}); }

Number Number::epsilon_power(long k) {
  long r = ((k % 8) + 8) % 8;
  std::array<Rational, 4> c{0, 0, 0, 0};
  c[static_cast<std::size_t>(r % 4)] = r < 4 ? 1 : -1;
  return from_coefficients(c);
}

Rational Number::coefficient(int i) const {
  if (i == 0) return c0_;
  if (i < 0 || i > 3) throw Error("coefficient index out of range");
  return hi_ ? (*hi_)[static_cast<std::size_t>(i - 1)] : Rational(0);
}

Number Number::operator-() const {
  Number n = *this;
  n.c0_ = -n.c0_;
  if (n.hi_)
    for (auto& x : *n.hi_) x = -x;
  return n;
}

Number& Number::operator+=(const Number& o) {
  c0_ += o.c0_;
  if (o.hi_) {
    if (!hi_) hi_ = std::array<Rational, 3>{0, 0, 0};
    for (std::size_t i = 0; i < 3; ++i) (*hi_)[i] += (*o.hi_)[i];
  }
  normalize();
  return *this;
}

Number& Number::operator-=(const Number& o) { return *this += -o; }

Number& Number::operator*=(const Number& o) {
  if (!hi_ && !o.hi_) {
    c0_ *= o.c0_;
    return *this;
  }
  if (!o.hi_) {
    c0_ *= o.c0_;
    for (auto& x : *hi_) x *= o.c0_;
    normalize();
    return *this;
  }
  if (!hi_) {
    Rational k = c0_;
    *this = o;
    return *this *= Number(k);
  }
  std::array<Rational, 4> a{c0_, (*hi_)[0], (*hi_)[1], (*hi_)[2]};
  std::array<Rational, 4> b{o.c0_, (*o.hi_)[0], (*o.hi_)[1], (*o.hi_)[2]};
  std::array<Rational, 4> c{0, 0, 0, 0};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i + j < 4)
        c[i + j] += a[i] * b[j];
      else
        c[i + j - 4] -= a[i] * b[j];
    }
  *this = from_coefficients(c);
  return *this;
}

Number Number::conjugate(int k) const {
  if (k % 2 == 0) throw Error("conjugation exponent must be odd");
  Number out(c0_);
  for (int i = 1; i <= 3; ++i) {
    Rational ci = coefficient(i);
    if (sgn(ci) != 0) out += Number(ci) * epsilon_power(static_cast<long>(i) * k);
  }
  return out;
}

Rational Number::norm() const {
  if (!hi_) {
    Rational r = c0_ * c0_;
    return r * r;
  }
  Number n = *this * conjugate(3) * conjugate(5) * conjugate(7);
  return n.c0_;
}

Number Number::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (!hi_) return Number(Rational(1) / c0_);
  Number rest = conjugate(3) * conjugate(5) * conjugate(7);
  Number n = *this * rest;
  return rest * Number(Rational(1) / n.c0_);
}

Number Number::pow(unsigned long k) const {
  Number result(1), base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::string Number::to_string() const {
  if (!hi_) return c0_.get_str();
  std::string out;
  for (int i = 0; i <= 3; ++i) {
    Rational c = coefficient(i);
    if (sgn(c) == 0) continue;
    std::string body;
    Rational a = abs(c);
    if (i == 0)
      body = a.get_str();
    else {
      body = a == 1 ? "" : a.get_str() + "*";
      body += i == 1 ? "e" : "e^" + std::to_string(i);
    }
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + body;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace flexcheck
