#include "flexcheck/derivation.hpp"

#include <algorithm>

#include "flexcheck/cone.hpp"

namespace flexcheck {

namespace {

long torus_weight(const Monomial& m, const std::vector<long>& w) {
  long total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) total += static_cast<long>(m.exp[i]) * w[i];
  return total;
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a != b) throw Error("derivations live on different algebras");
}

}  // namespace

AlgebraPtr PresentedAlgebra::create(Ring ring, std::vector<Polynomial> relations, std::optional<AmbientModel> ambient) {
  for (const auto& r : relations)
    if (r.variable_bound() > ring.size()) throw Error("relation uses a variable outside the ring");
  std::shared_ptr<PresentedAlgebra> a(new PresentedAlgebra());
  a->ring_ = std::move(ring);
  a->relations_ = std::move(relations);
  if (ambient) {
    if (!ambient->algebra) throw Error("ambient model without an algebra");
    const auto& amb = *ambient->algebra;
    if (ambient->generators.size() != a->ring_.size())
      throw Error("ambient model needs one expression per generator");
    if (ambient->torus_weights.size() != amb.size()) throw Error("ambient model needs one torus weight per variable");
    for (std::size_t i = 0; i < ambient->generators.size(); ++i)
      for (const auto& t : ambient->generators[i].terms())
        if (torus_weight(t.monomial, ambient->torus_weights) != 0)
          throw Error("generator " + a->ring_.name(i) + " is not torus invariant");
    for (std::size_t i = 0; i < a->relations_.size(); ++i) {
      auto image = amb.reduce(a->relations_[i].substitute(ambient->generators));
      if (!image.is_zero())
        throw Error("relation " + a->ring_.format(a->relations_[i]) + " does not hold in the ambient algebra");
    }
    a->ambient_ = std::move(ambient);
  }
  return a;
}

const std::vector<Polynomial>& PresentedAlgebra::basis() const {
  std::call_once(basis_once_, [this] {
    if (relations_.size() == 1) {
      const auto& r = relations_.front();
      basis_ = {r.is_zero() ? r : r.scaled(r.terms().front().coefficient.inverse())};
      if (basis_.front().is_zero()) basis_.clear();
    } else if (!relations_.empty()) {
      basis_ = groebner_basis(relations_);
    }
  });
  return basis_;
}

Polynomial PresentedAlgebra::reduce(const Polynomial& f) const {
  if (relations_.empty()) return f;
  return normal_form(f, basis());
}

GradingSpec GradingSpec::from_longs(const std::vector<long>& degrees) {
  GradingSpec g;
  g.rank = 1;
  for (long d : degrees) g.degrees.push_back(LatticeVector{d});
  return g;
}

LatticeVector GradingSpec::degree(const Monomial& m) const {
  LatticeVector d(rank);
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (m.exp[i] != 0) d += Integer(static_cast<unsigned long>(m.exp[i])) * degrees[i];
  return d;
}

std::optional<LatticeVector> GradingSpec::homogeneous_degree(const Polynomial& f) const {
  if (f.is_zero()) return std::nullopt;
  auto d = degree(f.terms().front().monomial);
  for (const auto& t : f.terms())
    if (degree(t.monomial) != d) return std::nullopt;
  return d;
}

void GradingSpec::validate(const PresentedAlgebra& algebra) const {
  if (degrees.size() != algebra.size())
    throw Error("grading assigns " + std::to_string(degrees.size()) + " degrees to " +
                std::to_string(algebra.size()) + " generators");
  for (const auto& d : degrees)
    if (d.size() != rank) throw Error("grading degree " + d.to_string() + " has the wrong length");
  for (const auto& r : algebra.relations())
    if (!r.is_zero() && !homogeneous_degree(r))
      throw Error("relation " + algebra.ring().format(r) + " is not homogeneous for the grading");
}

Derivation::Derivation(AlgebraPtr algebra, std::vector<Polynomial> images)
    : algebra_(std::move(algebra)), images_(std::move(images)) {
  if (!algebra_) throw Error("derivation without an algebra");
  if (images_.size() != algebra_->size()) throw Error("derivation needs one image per generator");
  for (const auto& p : images_)
    if (p.variable_bound() > algebra_->size()) throw Error("variable mismatch in derivation image");
}

Derivation Derivation::zero(AlgebraPtr algebra) {
  auto n = algebra->size();
  return Derivation(std::move(algebra), std::vector<Polynomial>(n));
}

Derivation Derivation::from_strings(AlgebraPtr algebra, const std::map<std::string, std::string>& images) {
  std::vector<Polynomial> v(algebra->size());
  for (const auto& [name, text] : images) v[algebra->ring().index_of(name)] = algebra->ring().parse(text);
  return Derivation(std::move(algebra), std::move(v));
}

bool Derivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial Derivation::operator()(const Polynomial& f) const {
  if (f.variable_bound() > images_.size()) throw Error("variable mismatch: polynomial is not over this algebra");
  Polynomial out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].is_zero()) continue;
    auto partial = f.derivative(i);
    if (!partial.is_zero()) out += partial * images_[i];
  }
  return out;
}

Derivation Derivation::operator+(const Derivation& o) const {
  require_same_algebra(algebra_, o.algebra_);
  auto v = images_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.images_[i];
  return Derivation(algebra_, std::move(v));
}

Derivation Derivation::operator-(const Derivation& o) const { return *this + o.scaled(Number(-1)); }

Derivation Derivation::scaled(const Number& c) const {
  auto v = images_;
  for (auto& p : v) p = p.scaled(c);
  return Derivation(algebra_, std::move(v));
}

bool Derivation::equivalent(const Derivation& o) const {
  require_same_algebra(algebra_, o.algebra_);
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!algebra_->in_ideal(images_[i] - o.images_[i])) return false;
  return true;
}

Polynomial derive(const Derivation& d, const Polynomial& f) { return d(f); }

RelationCheck preserves_relations(const Derivation& d) {
  const auto& alg = *d.algebra();
  for (std::size_t i = 0; i < alg.relations().size(); ++i) {
    auto residue = alg.reduce(d(alg.relations()[i]));
    if (!residue.is_zero()) return {false, i, residue};
  }
  return {};
}

RelationCheck restricts_to(const Derivation& ambient, const Derivation& d) {
  const auto& model = d.algebra()->ambient();
  if (!model) throw Error("algebra has no ambient model");
  if (ambient.algebra() != model->algebra) throw Error("derivation is not on the ambient algebra");
  const auto& amb = *model->algebra;
  for (std::size_t i = 0; i < d.images().size(); ++i) {
    auto lhs = ambient(model->generators[i]);
    auto rhs = d.image(i).substitute(model->generators);
    auto residue = amb.reduce(lhs - rhs);
    if (!residue.is_zero()) return {false, i, residue};
  }
  return {};
}

RelationCheck preserves_ideal(const Derivation& d, const std::vector<Polynomial>& ideal) {
  auto gens = d.algebra()->relations();
  gens.insert(gens.end(), ideal.begin(), ideal.end());
  auto basis = groebner_basis(gens);
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    auto residue = normal_form(d(ideal[i]), basis);
    if (!residue.is_zero()) return {false, i, residue};
  }
  return {};
}

NilpotencyResult is_locally_nilpotent_bounded(const Derivation& d, std::size_t cap) {
  const auto& alg = *d.algebra();
  NilpotencyResult res;
  res.cap = cap;
  res.chain_lengths.assign(alg.size(), 0);
  for (std::size_t i = 0; i < alg.size(); ++i) {
    auto a = alg.reduce(Polynomial::variable(i));
    std::size_t n = 0;
    while (!a.is_zero() && n < cap) {
      a = alg.reduce(d(a));
      ++n;
    }
    if (!a.is_zero()) {
      if (!res.stuck) res.stuck = i;
      continue;
    }
    res.chain_lengths[i] = n;
  }
  res.nilpotent = !res.stuck;
  return res;
}

std::map<LatticeVector, Derivation> graded_decompose(const Derivation& d, const GradingSpec& g) {
  g.validate(*d.algebra());
  std::map<LatticeVector, std::vector<std::vector<Term>>> pieces;
  const auto n = d.images().size();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : d.image(i).terms()) {
      auto gamma = g.degree(t.monomial) - g.degrees[i];
      auto& slot = pieces[gamma];
      if (slot.empty()) slot.resize(n);
      slot[i].push_back(t);
    }
  std::map<LatticeVector, Derivation> out;
  for (auto& [gamma, slots] : pieces) {
    std::vector<Polynomial> images;
    for (auto& s : slots) images.push_back(Polynomial::from_terms(std::move(s)));
    out.emplace(gamma, Derivation(d.algebra(), std::move(images)));
  }
  return out;
}

std::optional<LatticeVector> derivation_degree(const Derivation& d, const GradingSpec& g) {
  auto parts = graded_decompose(d, g);
  if (parts.size() != 1) return std::nullopt;
  return parts.begin()->first;
}

std::vector<LatticeVector> support_vertices(const std::vector<LatticeVector>& points) {
  if (points.empty()) return {};
  const auto k = points.front().size();
  std::vector<LatticeVector> lifted;
  for (const auto& p : points) {
    LatticeVector v(k + 1);
    for (std::size_t i = 0; i < k; ++i) v[i] = p[i];
    v[k] = 1;
    lifted.push_back(std::move(v));
  }
  auto cone = RationalCone::from_generators(k + 1, lifted);
  std::vector<LatticeVector> out;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (std::find(cone.rays().begin(), cone.rays().end(), lifted[j]) != cone.rays().end()) out.push_back(points[j]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LatticeVector> support_vertices(const std::map<LatticeVector, Derivation>& decomposition) {
  std::vector<LatticeVector> pts;
  for (const auto& [gamma, _] : decomposition) pts.push_back(gamma);
  return support_vertices(pts);
}

Derivation semisimple_from_grading(AlgebraPtr algebra, const GradingSpec& g) {
  if (g.rank != 1) throw Error("a semisimple derivation needs a Z-grading");
  g.validate(*algebra);
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < algebra->size(); ++i)
    images.push_back(Polynomial::variable(i).scaled(Number(Rational(g.degrees[i][0]))));
  return Derivation(std::move(algebra), std::move(images));
}

Polynomial Automorphism::apply(const Polynomial& f) const { return algebra->reduce(f.substitute(images)); }

std::vector<Number> Automorphism::apply_to_point(const std::vector<Number>& p) const {
  check_on_variety(*algebra, p);
  std::vector<Number> out;
  for (const auto& im : images) out.push_back(im.evaluate(p));
  return out;
}

bool Automorphism::preserves_relations() const {
  return std::all_of(algebra->relations().begin(), algebra->relations().end(),
                     [&](const Polynomial& r) { return apply(r).is_zero(); });
}

bool Automorphism::equivalent(const Automorphism& o) const {
  require_same_algebra(algebra, o.algebra);
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!algebra->in_ideal(images[i] - o.images[i])) return false;
  return true;
}

Automorphism identity_automorphism(AlgebraPtr algebra) {
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < algebra->size(); ++i) v.push_back(Polynomial::variable(i));
  auto inv = v;
  return Automorphism{std::move(algebra), std::move(v), std::move(inv)};
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  require_same_algebra(a.algebra, b.algebra);
  Automorphism c{a.algebra, {}, std::nullopt};
  for (const auto& im : b.images) c.images.push_back(a.algebra->reduce(im.substitute(a.images)));
  if (a.inverse && b.inverse) {
    std::vector<Polynomial> inv;
    for (const auto& im : *a.inverse) inv.push_back(a.algebra->reduce(im.substitute(*b.inverse)));
    c.inverse = std::move(inv);
  }
  return c;
}

namespace {

std::vector<Polynomial> exp_images(const Derivation& d, const Number& s, std::size_t cap) {
  const auto& alg = *d.algebra();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    Polynomial term = alg.reduce(Polynomial::variable(i));
    Polynomial sum;
    Number coeff(1);
    std::size_t j = 0;
    while (!term.is_zero()) {
      if (j >= cap) throw Error("exponential needs a locally nilpotent derivation: chain on " + alg.ring().name(i) +
                                " exceeds " + std::to_string(cap) + " steps");
      sum += term.scaled(coeff);
      ++j;
      coeff = coeff * s / Number(static_cast<long>(j));
      term = alg.reduce(d(term));
    }
    images.push_back(std::move(sum));
  }
  return images;
}

}  // namespace

Automorphism exp_derivation(const Derivation& d, const Number& s, std::size_t cap) {
  auto fwd = exp_images(d, s, cap);
  auto back = exp_images(d, -s, cap);
  return Automorphism{d.algebra(), std::move(fwd), std::move(back)};
}

void check_on_variety(const PresentedAlgebra& algebra, const std::vector<Number>& p) {
  if (p.size() != algebra.size())
    throw Error("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(algebra.size()));
  for (const auto& r : algebra.relations()) {
    auto v = r.evaluate(p);
    if (!v.is_zero())
      throw Error("point is not on the variety: relation " + algebra.ring().format(r) + " evaluates to " +
                  v.to_string());
  }
}

std::vector<Number> vector_field_at(const Derivation& d, const std::vector<Number>& p) {
  check_on_variety(*d.algebra(), p);
  std::vector<Number> out;
  for (const auto& im : d.images()) out.push_back(im.evaluate(p));
  return out;
}

std::size_t tangent_rank(const std::vector<Derivation>& ds, const std::vector<Number>& p) {
  std::vector<std::vector<Number>> rows;
  for (const auto& d : ds) rows.push_back(vector_field_at(d, p));
  return field_rank(std::move(rows));
}

std::size_t jacobian_rank(const std::vector<Polynomial>& relations, std::size_t variable_count,
                          const std::vector<Number>& p) {
  if (p.size() != variable_count) throw Error("point has the wrong number of coordinates");
  std::vector<std::vector<Number>> rows;
  for (const auto& r : relations) {
    if (!r.evaluate(p).is_zero()) throw Error("point does not satisfy every relation");
    std::vector<Number> row;
    for (std::size_t j = 0; j < variable_count; ++j) row.push_back(r.derivative(j).evaluate(p));
    rows.push_back(std::move(row));
  }
  return field_rank(std::move(rows));
}

}  // namespace flexcheck
