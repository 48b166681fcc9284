#include "flexcheck/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <sstream>

namespace flexcheck {

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (block == 0) return compare_degrevlex(a, b);
  unsigned da = 0, db = 0;
  for (std::size_t i = 0; i < block; ++i) {
    da += a.exp[i];
    db += b.exp[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = block; i-- > 0;)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? -1 : 1;
  unsigned ra = a.degree - da, rb = b.degree - db;
  if (ra != rb) return ra < rb ? -1 : 1;
  for (std::size_t i = kMaxVariables; i-- > block;)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? -1 : 1;
  return 0;
}

double default_effort_cap() {
  if (const char* env = std::getenv("FLEXCHECK_EFFORT_CAP")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 60.0;
}

namespace {

using Terms = std::vector<Term>;
using Clock = std::chrono::steady_clock;

struct Engine {
  MonomialOrder order;
  Clock::time_point deadline;
  double effort = 0;
  unsigned long steps = 0;

  void tick() {
    if ((++steps & 63) == 0) check();
  }
  void check() const {
    if (Clock::now() > deadline) {
      std::ostringstream msg;
      msg << "Groebner computation exceeded the effort cap of " << effort << " s";
      throw EffortExceeded(msg.str());
    }
  }

  Terms sorted(const Polynomial& p) const {
    Terms t = p.terms();
    if (order.block != 0)
      std::sort(t.begin(), t.end(),
                [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
    return t;
  }

  static void make_monic(Terms& t) {
    if (t.empty() || t.front().coefficient.is_one()) return;
    Number inv = t.front().coefficient.inverse();
    for (auto& x : t) x.coefficient *= inv;
  }

  // p[from..] - c * m * g
  Terms sub_mul(const Terms& p, std::size_t from, const Number& c, const Monomial& m, const Terms& g) const {
    Terms out;
    out.reserve(p.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < p.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back(p[i++]);
        continue;
      }
      Monomial gm = g[j].monomial * m;
      int cmp = i == p.size() ? -1 : order.compare(p[i].monomial, gm);
      if (cmp > 0) {
        out.push_back(p[i++]);
      } else if (cmp < 0) {
        out.push_back(Term{gm, -(c * g[j].coefficient)});
        ++j;
      } else {
        Number s = p[i].coefficient - c * g[j].coefficient;
        if (!s.is_zero()) out.push_back(Term{gm, std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Full reduction; reducers are monic.
  Terms reduce(Terms p, const std::vector<const Terms*>& reducers) {
    Terms r;
    std::size_t start = 0;
    while (start < p.size()) {
      tick();
      const Term& lt = p[start];
      const Terms* g = nullptr;
      for (const Terms* cand : reducers)
        if (cand->front().monomial.divides(lt.monomial)) {
          g = cand;
          break;
        }
      if (!g) {
        r.push_back(lt);
        ++start;
        continue;
      }
      Number c = lt.coefficient;
      Monomial m = lt.monomial / g->front().monomial;
      p = sub_mul(p, start, c, m, *g);
      start = 0;
    }
    return r;
  }

  Polynomial to_polynomial(Terms t) const { return Polynomial::from_terms(std::move(t)); }
};

struct Element {
  Terms terms;
  unsigned sugar = 0;
  bool active = true;
  const Monomial& lm() const { return terms.front().monomial; }
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

void update(std::vector<Element>& g, std::vector<Pair>& pairs, std::size_t k) {
  const Monomial& h = g[k].lm();
  auto pair_sugar = [&](std::size_t i, const Monomial& l) {
    unsigned a = g[i].sugar + (l.degree - g[i].lm().degree);
    unsigned b = g[k].sugar + (l.degree - h.degree);
    return std::max(a, b);
  };

  std::vector<std::pair<std::size_t, Monomial>> c;
  for (std::size_t i = 0; i < k; ++i)
    if (g[i].active) c.emplace_back(i, Monomial::lcm(h, g[i].lm()));

  std::vector<std::pair<std::size_t, Monomial>> d;
  for (std::size_t a = 0; a < c.size(); ++a) {
    const auto& [i, l] = c[a];
    bool keep = h.disjoint(g[i].lm());
    if (!keep) {
      keep = true;
      for (std::size_t b = a + 1; b < c.size() && keep; ++b)
        if (c[b].second.divides(l)) keep = false;
      for (const auto& e : d)
        if (keep && e.second.divides(l)) keep = false;
    }
    if (keep) d.push_back(c[a]);
  }

  std::vector<Pair> kept;
  for (auto& p : pairs) {
    bool drop = h.divides(p.lcm) && !(Monomial::lcm(g[p.i].lm(), h) == p.lcm) &&
                !(Monomial::lcm(g[p.j].lm(), h) == p.lcm);
    if (!drop) kept.push_back(std::move(p));
  }
  for (const auto& [i, l] : d)
    if (!h.disjoint(g[i].lm())) kept.push_back(Pair{i, k, l, pair_sugar(i, l)});
  pairs = std::move(kept);

  for (std::size_t i = 0; i < k; ++i)
    if (g[i].active && h.divides(g[i].lm())) g[i].active = false;
}

std::vector<const Terms*> active_reducers(const std::vector<Element>& g) {
  std::vector<const Terms*> out;
  for (const auto& e : g)
    if (e.active) out.push_back(&e.terms);
  return out;
}

std::vector<Polynomial> buchberger(Engine& eng, const std::vector<Polynomial>& generators) {
  std::vector<Element> g;
  std::vector<Pair> pairs;

  std::vector<Terms> inputs;
  for (const auto& f : generators)
    if (!f.is_zero()) inputs.push_back(eng.sorted(f));
  std::sort(inputs.begin(), inputs.end(), [&](const Terms& a, const Terms& b) {
    return eng.order.compare(a.front().monomial, b.front().monomial) < 0;
  });
  for (auto& f : inputs) {
    Terms r = eng.reduce(std::move(f), active_reducers(g));
    if (r.empty()) continue;
    Engine::make_monic(r);
    unsigned sugar = 0;
    for (const auto& t : r) sugar = std::max(sugar, t.monomial.degree);
    g.push_back(Element{std::move(r), sugar, true});
    update(g, pairs, g.size() - 1);
  }

  while (!pairs.empty()) {
    eng.check();
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      int c = eng.order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    Pair p = *best;
    pairs.erase(best);

    // Monomial multiples keep the term order, so the merge stays valid.
    Terms shifted;
    const Monomial mi = p.lcm / g[p.i].lm();
    for (const auto& t : g[p.i].terms) shifted.push_back(Term{t.monomial * mi, t.coefficient});
    Terms s = eng.sub_mul(shifted, 0, Number(1), p.lcm / g[p.j].lm(), g[p.j].terms);
    Terms r = eng.reduce(std::move(s), active_reducers(g));
    if (r.empty()) continue;
    Engine::make_monic(r);
    unsigned sugar = p.sugar;
    for (const auto& t : r) sugar = std::max(sugar, t.monomial.degree);
    g.push_back(Element{std::move(r), sugar, true});
    update(g, pairs, g.size() - 1);
  }

  // Interreduce the minimal basis.
  std::vector<Terms> basis;
  for (const auto& e : g)
    if (e.active) basis.push_back(e.terms);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<const Terms*> others;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (j != i) others.push_back(&basis[j]);
    Terms head{basis[i].front()};
    Terms tail(basis[i].begin() + 1, basis[i].end());
    Terms reduced = eng.reduce(std::move(tail), others);
    head.insert(head.end(), reduced.begin(), reduced.end());
    basis[i] = std::move(head);
  }
  std::sort(basis.begin(), basis.end(), [&](const Terms& x, const Terms& y) {
    return eng.order.compare(x.front().monomial, y.front().monomial) < 0;
  });
  std::vector<Polynomial> out;
  for (auto& t : basis) out.push_back(eng.to_polynomial(std::move(t)));
  return out;
}

Polynomial remap(const Polynomial& p, const std::vector<std::size_t>& to) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (t.monomial.exp[i]) m.exp[to.at(i)] = t.monomial.exp[i];
    m.degree = t.monomial.degree;
    terms.push_back(Term{m, t.coefficient});
  }
  return Polynomial::from_terms(std::move(terms));
}

}  // namespace

Term leading_term(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw Error("zero polynomial has no leading term");
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms())
    if (order.compare(t.monomial, best->monomial) > 0) best = &t;
  return *best;
}

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators, const MonomialOrder& order,
                                       double effort_seconds) {
  Engine eng;
  eng.order = order;
  eng.effort = effort_seconds;
  eng.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(effort_seconds));
  return buchberger(eng, generators);
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  Engine eng;
  eng.order = order;
  eng.effort = 0;
  eng.deadline = Clock::time_point::max();
  std::vector<Terms> reducers;
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    Terms t = eng.sorted(b);
    Engine::make_monic(t);
    reducers.push_back(std::move(t));
  }
  std::vector<const Terms*> ptrs;
  for (const auto& r : reducers) ptrs.push_back(&r);
  return eng.to_polynomial(eng.reduce(eng.sorted(f), ptrs));
}

std::vector<Polynomial> eliminate(const std::vector<Polynomial>& generators, const std::vector<std::size_t>& eliminate,
                                  std::size_t variable_count, double effort_seconds) {
  std::vector<std::size_t> to(kMaxVariables), back(kMaxVariables);
  std::vector<bool> gone(variable_count, false);
  for (std::size_t v : eliminate) {
    if (v >= variable_count) throw Error("eliminated variable out of range");
    gone[v] = true;
  }
  std::size_t next = 0;
  for (std::size_t v : eliminate) to[v] = next++;
  const std::size_t block = next;
  for (std::size_t v = 0; v < variable_count; ++v)
    if (!gone[v]) to[v] = next++;
  for (std::size_t v = variable_count; v < kMaxVariables; ++v) to[v] = v;
  for (std::size_t v = 0; v < kMaxVariables; ++v) back[to[v]] = v;

  std::vector<Polynomial> mapped;
  for (const auto& g : generators) {
    if (g.variable_bound() > variable_count) throw Error("generator uses a variable outside the ring");
    mapped.push_back(remap(g, to));
  }
  auto basis = groebner_basis(mapped, MonomialOrder{block}, effort_seconds);
  std::vector<Polynomial> out;
  for (const auto& b : basis) {
    bool free_of = std::all_of(b.terms().begin(), b.terms().end(), [&](const Term& t) {
      for (std::size_t i = 0; i < block; ++i)
        if (t.monomial.exp[i]) return false;
      return true;
    });
    if (free_of) out.push_back(remap(b, back));
  }
  return out;
}

}  // namespace flexcheck
