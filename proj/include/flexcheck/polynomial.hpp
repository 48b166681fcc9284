#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flexcheck/number.hpp"

namespace flexcheck {

constexpr std::size_t kMaxVariables = 32;

struct Monomial {
  std::array<std::uint16_t, kMaxVariables> exp{};
  std::uint32_t degree = 0;

  static Monomial variable(std::size_t i, unsigned power = 1);

  bool is_one() const { return degree == 0; }
  bool divides(const Monomial& o) const;
  /// Coprime supports.
  bool disjoint(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  /// Requires divides(o, *this).
  Monomial operator/(const Monomial& o) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
};

/// Degree reverse lexicographic comparison: negative, zero or positive.
int compare_degrevlex(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Number coefficient;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial with terms in strictly decreasing degrevlex order and
/// no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Number& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Number(c)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial variable(std::size_t i);
  static Polynomial term(const Monomial& m, const Number& c);
  /// Sorts and combines like terms.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  std::size_t total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree; }
  /// One past the largest variable index that occurs.
  std::size_t variable_bound() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial scaled(const Number& c) const;
  Polynomial times(const Monomial& m, const Number& c) const;
  Polynomial pow(unsigned k) const;

  Polynomial derivative(std::size_t var) const;
  Number evaluate(const std::vector<Number>& point) const;
  /// Replaces variable i by images[i] (variables beyond images.size() are kept).
  Polynomial substitute(const std::vector<Polynomial>& images) const;

 private:
  std::vector<Term> terms_;
};

/// Named variables and the parse/print grammar:
///   expr   := ['+'|'-'] term { ('+'|'-') term }
///   term   := power { ['*'|'/'] power }      juxtaposition means '*'
///   power  := atom [ '^' digits ]
///   atom   := digits | name | 'e' | '(' expr ')'
/// 'e' is the root of e^4 = -1; division is only by nonzero constants.
class Ring {
 public:
  Ring() = default;
  explicit Ring(std::vector<std::string> names, bool allow_epsilon = true);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t index_of(std::string_view name) const;
  bool allows_epsilon() const { return allow_epsilon_; }

  Polynomial var(std::string_view name) const { return Polynomial::variable(index_of(name)); }
  Polynomial parse(std::string_view text) const;
  Number parse_number(std::string_view text) const;
  std::string format(const Polynomial& p) const;
  std::string format(const Monomial& m) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  std::vector<std::string> names_;
  bool allow_epsilon_ = true;
};

}  // namespace flexcheck
