#include "flexcheck/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace flexcheck {

Monomial Monomial::variable(std::size_t i, unsigned power) {
  if (i >= kMaxVariables) throw Error("too many variables (at most " + std::to_string(kMaxVariables) + ")");
  if (power > std::numeric_limits<std::uint16_t>::max()) throw Error("exponent too large");
  Monomial m;
  m.exp[i] = static_cast<std::uint16_t>(power);
  m.degree = power;
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree > o.degree) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exp[i] > o.exp[i]) return false;
  return true;
}

bool Monomial::disjoint(const Monomial& o) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exp[i] && o.exp[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned e = unsigned(exp[i]) + o.exp[i];
    if (e > std::numeric_limits<std::uint16_t>::max()) throw Error("exponent overflow");
    m.exp[i] = static_cast<std::uint16_t>(e);
  }
  m.degree = degree + o.degree;
  return m;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp[i] = static_cast<std::uint16_t>(exp[i] - o.exp[i]);
  m.degree = degree - o.degree;
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    m.exp[i] = std::max(a.exp[i], b.exp[i]);
    m.degree += m.exp[i];
  }
  return m;
}

int compare_degrevlex(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  for (std::size_t i = kMaxVariables; i-- > 0;)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? -1 : 1;
  return 0;
}

Polynomial::Polynomial(const Number& c) {
  if (!c.is_zero()) terms_.push_back(Term{Monomial{}, c});
}

Polynomial Polynomial::variable(std::size_t i) { return term(Monomial::variable(i), Number(1)); }

Polynomial Polynomial::term(const Monomial& m, const Number& c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.push_back(Term{m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare_degrevlex(a.monomial, b.monomial) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coefficient += t.coefficient;
      if (p.terms_.back().coefficient.is_zero()) p.terms_.pop_back();
    } else if (!t.coefficient.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

std::size_t Polynomial::variable_bound() const {
  std::size_t n = 0;
  for (const auto& t : terms_)
    for (std::size_t i = kMaxVariables; i-- > n;)
      if (t.monomial.exp[i]) {
        n = i + 1;
        break;
      }
  return n;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient = -t.coefficient;
  return p;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : compare_degrevlex(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(Term{b[j].monomial, subtract ? -b[j].coefficient : b[j].coefficient});
      ++j;
    } else {
      Number s = subtract ? a[i].coefficient - b[j].coefficient : a[i].coefficient + b[j].coefficient;
      if (!s.is_zero()) out.push_back(Term{a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  const Polynomial& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const Polynomial& large = &small == &a ? b : a;
  Polynomial out;
  for (const auto& t : small.terms_) out += large.times(t.monomial, t.coefficient);
  return out;
}

Polynomial Polynomial::scaled(const Number& c) const {
  if (c.is_zero()) return Polynomial();
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient *= c;
  return p;
}

Polynomial Polynomial::times(const Monomial& m, const Number& c) const {
  if (c.is_zero()) return Polynomial();
  Polynomial p;
  p.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the order.
  for (const auto& t : terms_) p.terms_.push_back(Term{t.monomial * m, t.coefficient * c});
  return p;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(1), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.monomial.exp[var];
    if (!e) continue;
    Monomial m = t.monomial;
    m.exp[var] = static_cast<std::uint16_t>(e - 1);
    m.degree -= 1;
    out.push_back(Term{m, t.coefficient * Number(static_cast<long>(e))});
  }
  return from_terms(std::move(out));
}

Number Polynomial::evaluate(const std::vector<Number>& point) const {
  const std::size_t n = variable_bound();
  if (point.size() < n) throw Error("point has too few coordinates");
  Number sum;
  for (const auto& t : terms_) {
    Number v = t.coefficient;
    for (std::size_t i = 0; i < n && !v.is_zero(); ++i)
      if (t.monomial.exp[i]) v *= point[i].pow(t.monomial.exp[i]);
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial(1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Polynomial out;
  for (const auto& t : terms_) {
    Monomial kept = t.monomial;
    Polynomial v = Polynomial::term(Monomial{}, t.coefficient);
    for (std::size_t i = 0; i < images.size(); ++i) {
      unsigned e = t.monomial.exp[i];
      if (!e) continue;
      kept.exp[i] = 0;
      kept.degree -= e;
      v = v * power(i, e);
      if (v.is_zero()) break;
    }
    if (!kept.is_one()) v = v.times(kept, Number(1));
    out += v;
  }
  return out;
}

Ring::Ring(std::vector<std::string> names, bool allow_epsilon)
    : names_(std::move(names)), allow_epsilon_(allow_epsilon) {
  if (names_.size() > kMaxVariables)
    throw Error("too many variables (at most " + std::to_string(kMaxVariables) + ")");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
      throw Error("invalid variable name \"" + n + "\"");
    for (char c : n)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw Error("invalid variable name \"" + n + "\"");
    if (n == "e") throw Error("variable name \"e\" is reserved for the root of e^4 = -1");
    if (std::find(names_.begin(), names_.begin() + static_cast<long>(i), n) != names_.begin() + static_cast<long>(i))
      throw Error("duplicate variable name \"" + n + "\"");
  }
}

std::size_t Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw Error("unknown variable \"" + std::string(name) + "\"");
}

namespace {

class Parser {
 public:
  Parser(const Ring& ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  const Ring& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse error at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || c == '_' || std::isalpha(static_cast<unsigned char>(c));
  }

  Polynomial expr() {
    Polynomial acc;
    bool negative = false;
    if (peek('-')) {
      negative = true;
      ++pos_;
    } else if (peek('+')) {
      ++pos_;
    }
    acc = term();
    if (negative) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * power();
      } else if (peek('/')) {
        ++pos_;
        std::size_t at = pos_;
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by nonzero constants");
        }
        acc = acc.scaled(d.terms()[0].coefficient.inverse());
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 65535) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial(Number(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (name == "e") {
        if (!ring_.allows_epsilon()) {
          pos_ = start;
          fail("the constant e is not available over Q");
        }
        return Polynomial(Number::epsilon());
      }
      for (std::size_t i = 0; i < ring_.size(); ++i)
        if (ring_.name(i) == name) return Polynomial::variable(i);
      pos_ = start;
      fail("unknown variable \"" + std::string(name) + "\"");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

}  // namespace

Polynomial Ring::parse(std::string_view text) const { return Parser(*this, text).run(); }

Number Ring::parse_number(std::string_view text) const {
  Polynomial p = Ring(std::vector<std::string>{}, allow_epsilon_).parse(text);
  return p.is_zero() ? Number(0) : p.terms()[0].coefficient;
}

std::string Ring::format(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (!m.exp[i]) continue;
    if (!out.empty()) out += "*";
    out += i < names_.size() ? names_[i] : "v" + std::to_string(i);
    if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Ring::format(const Polynomial& p) const {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    const Number& c = t.coefficient;
    bool negative = false;
    std::string body;
    if (c.is_rational()) {
      negative = sgn(c.rational_part()) < 0;
      Rational a = abs(c.rational_part());
      if (t.monomial.is_one())
        body = a.get_str();
      else
        body = (a == 1 ? "" : a.get_str() + "*") + format(t.monomial);
    } else {
      body = "(" + c.to_string() + ")";
      if (!t.monomial.is_one()) body += "*" + format(t.monomial);
    }
    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace flexcheck
