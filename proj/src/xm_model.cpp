#include <algorithm>
#include <sstream>

#include "flexcheck/paper_examples.hpp"

namespace flexcheck {

namespace {

std::string ambient_row_name(int k, int row) {
  if (row == 0) return "y";
  if (k == 2) return row == 1 ? "z" : "w";
  return "z" + std::to_string(row);
}

std::string dz_name(int k, int row) { return "d" + ambient_row_name(k, row); }

// Nondecreasing tuples of length n over 1..m.
void multisets(int n, int m, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= m; ++i) {
    cur.push_back(i);
    multisets(n, m, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string XmModel::invariant_name(int row, int column) const {
  auto c = std::to_string(column);
  if (row == 0) return "y" + c;
  if (k == 2) return (row == 1 ? "z" : "w") + c;
  return "z" + std::to_string(row) + "_" + c;
}

std::size_t XmModel::invariant_index(int row, int column) const {
  return 1 + static_cast<std::size_t>(row) * static_cast<std::size_t>(m) + static_cast<std::size_t>(column - 1);
}

std::string XmModel::rho_name(int i, int j) const {
  if (m < 10) return "rho" + std::to_string(i) + std::to_string(j);
  return "rho" + std::to_string(i) + "_" + std::to_string(j);
}

const CatalogDerivation& XmModel::find(const std::string& name) const {
  for (const auto& c : catalog)
    if (c.name == name) return c;
  throw Error("no catalog derivation named " + name);
}

std::vector<Polynomial> XmModel::d_ideal() const {
  std::vector<Polynomial> out;
  for (int i = 1; i <= m; ++i) out.push_back(Polynomial::variable(invariant_index(0, i)));
  return out;
}

std::vector<Polynomial> XmModel::dj_ideal(int j) const {
  if (!has_quartic_roots()) throw Error("the divisors D_j are only modelled for x y^4 = z^4 + w^4");
  if (j < 1 || j > 4) throw Error("D_j is indexed by j = 1..4");
  auto out = d_ideal();
  Number ej = Number::epsilon_power(2 * j - 1);
  for (int i = 1; i <= m; ++i)
    out.push_back(Polynomial::variable(invariant_index(1, i)) + Polynomial::variable(invariant_index(2, i)).scaled(ej));
  return out;
}

std::vector<std::string> XmModel::generic_field_names() const {
  std::vector<std::string> out;
  for (int j = 1; j <= k; ++j) out.push_back(dz_name(k, j));
  out.push_back(rho_name(1, 2));
  for (int i = 2; i <= m; ++i) out.push_back(rho_name(i, 1));
  return out;
}

std::vector<std::string> XmModel::u1_field_names() const {
  std::vector<std::string> out{dz_name(k, 1), rho_name(1, 2)};
  for (int i = 2; i <= m; ++i) out.push_back(rho_name(i, 1));
  return out;
}

std::vector<Derivation> XmModel::fields(const std::vector<std::string>& names) const {
  std::vector<Derivation> out;
  for (const auto& n : names) out.push_back(find(n).invariant);
  return out;
}

XmModel build_xm(int m) { return build_xm_general(4, 2, m); }

XmModel build_xm_general(int n, int k, int m) {
  if (k < 1 || !(k + 1 < n))
    throw Error("the family x*y^n = z_1^n + ... + z_k^n requires k+1 < n (got n=" + std::to_string(n) +
                ", k=" + std::to_string(k) + ")");
  if (m < 2) throw Error("X_m requires m >= 2 (got m=" + std::to_string(m) + ")");
  const auto ambient_vars = static_cast<std::size_t>(2 + k + m);
  const auto invariant_vars = static_cast<std::size_t>(1 + m * (k + 1));
  if (ambient_vars > kMaxVariables || invariant_vars > kMaxVariables)
    throw Error("model needs more than " + std::to_string(kMaxVariables) + " variables");

  XmModel model;
  model.n = n;
  model.k = k;
  model.m = m;
  const auto un = static_cast<unsigned>(n);

  // Ambient ring: x, y, z_1..z_k, u_1..u_m.
  std::vector<std::string> anames{"x"};
  for (int r = 0; r <= k; ++r) anames.push_back(ambient_row_name(k, r));
  for (int i = 1; i <= m; ++i) anames.push_back("u" + std::to_string(i));
  Ring aring(anames);
  auto a_row = [](int r) { return static_cast<std::size_t>(1 + r); };
  auto a_u = [k](int i) { return static_cast<std::size_t>(1 + k + i); };

  Polynomial t = Polynomial::variable(0) * Polynomial::variable(a_row(0)).pow(un);
  for (int j = 1; j <= k; ++j) t -= Polynomial::variable(a_row(j)).pow(un);
  model.ambient = PresentedAlgebra::create(aring, {t});

  std::vector<long> weights{0};
  for (int r = 0; r <= k; ++r) weights.push_back(1);
  for (int i = 1; i <= m; ++i) weights.push_back(-1);
  model.g_ambient = GradingSpec::from_longs(weights);

  // Invariant ring: x, then rows y, z_1.., each over columns 1..m.
  std::vector<std::string> inames{"x"};
  std::vector<Polynomial> gens{Polynomial::variable(0)};
  for (int r = 0; r <= k; ++r)
    for (int i = 1; i <= m; ++i) {
      inames.push_back(model.invariant_name(r, i));
      gens.push_back(Polynomial::variable(a_row(r)) * Polynomial::variable(a_u(i)));
    }
  Ring iring(inames);
  auto v = [&](int r, int i) { return Polynomial::variable(model.invariant_index(r, i)); };

  std::vector<Polynomial> rels;
  for (int a = 0; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      for (int i = 1; i <= m; ++i)
        for (int l = i + 1; l <= m; ++l) rels.push_back(v(a, i) * v(b, l) - v(a, l) * v(b, i));
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur;
  multisets(n, m, 1, cur, tuples);
  for (const auto& tup : tuples) {
    Polynomial lead = Polynomial::variable(0);
    for (int i : tup) lead *= v(0, i);
    for (int j = 1; j <= k; ++j) {
      Polynomial mono(1);
      for (int i : tup) mono *= v(j, i);
      lead -= mono;
    }
    rels.push_back(lead);
  }
  model.invariant = PresentedAlgebra::create(iring, rels, AmbientModel{model.ambient, gens, weights});

  model.g_invariant = GradingSpec::from_longs(std::vector<long>(invariant_vars, 0));
  std::vector<long> fdeg{-n};
  for (int r = 0; r <= k; ++r)
    for (int i = 1; i <= m; ++i) fdeg.push_back(r == 0 ? 1 : 0);
  model.f = GradingSpec::from_longs(fdeg);
  model.z2.rank = 2;
  model.z2.degrees.push_back(LatticeVector{0, -n});
  for (int r = 0; r <= k; ++r)
    for (int i = 1; i <= m; ++i) model.z2.degrees.push_back(r == 0 ? LatticeVector{1, 1} : LatticeVector{1, 0});

  // delta_{z_j}.
  for (int j = 1; j <= k; ++j) {
    std::vector<Polynomial> amb(aring.size()), inv(iring.size());
    auto u1 = Polynomial::variable(a_u(1)).pow(un - 1);
    amb[0] = (Polynomial::variable(a_row(j)).pow(un - 1) * u1).scaled(Number(static_cast<long>(n)));
    amb[a_row(j)] = Polynomial::variable(a_row(0)).pow(un) * u1;
    inv[0] = v(j, 1).pow(un - 1).scaled(Number(static_cast<long>(n)));
    for (int i = 1; i <= m; ++i) inv[model.invariant_index(j, i)] = v(0, 1).pow(un - 1) * v(0, i);
    model.catalog.push_back({dz_name(k, j), Derivation(model.ambient, amb), Derivation(model.invariant, inv), true});
  }
  // rho_ij.
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      if (i == j) continue;
      std::vector<Polynomial> amb(aring.size()), inv(iring.size());
      amb[a_u(i)] = Polynomial::variable(a_u(j));
      for (int r = 0; r <= k; ++r) inv[model.invariant_index(r, i)] = v(r, j);
      model.catalog.push_back({model.rho_name(i, j), Derivation(model.ambient, amb), Derivation(model.invariant, inv), true});
    }

  for (const auto& c : model.catalog) {
    auto deg = derivation_degree(c.ambient, model.g_ambient);
    if (!deg || !deg->is_zero()) throw Error("catalog derivation " + c.name + " is not torus invariant");
  }
  for (auto* g : {&model.g_invariant, &model.f, &model.z2}) g->validate(*model.invariant);
  model.g_ambient.validate(*model.ambient);
  return model;
}

std::vector<Polynomial> eliminated_relations(const XmModel& model, double effort_seconds) {
  const auto& aring = model.ambient->ring();
  const auto& iring = model.invariant->ring();
  const std::size_t na = aring.size(), ni = iring.size();
  if (na + ni > kMaxVariables) throw Error("elimination ring needs more than " + std::to_string(kMaxVariables) + " variables");
  // Ambient variables first (eliminated), invariant variables after.
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < ni; ++i) shift.push_back(Polynomial::variable(na + i));
  std::vector<Polynomial> ideal = model.ambient->relations();
  const auto& gens = model.invariant->ambient()->generators;
  for (std::size_t i = 0; i < ni; ++i) ideal.push_back(Polynomial::variable(na + i) - gens[i]);
  std::vector<std::size_t> drop;
  for (std::size_t i = 0; i < na; ++i) drop.push_back(i);
  auto kernel = eliminate(ideal, drop, na + ni, effort_seconds);
  // Back to invariant variable indices.
  std::vector<Polynomial> back(na + ni);
  for (std::size_t i = 0; i < ni; ++i) back[na + i] = Polynomial::variable(i);
  std::vector<Polynomial> out;
  for (const auto& g : kernel) out.push_back(g.substitute(back));
  return out;
}

Rational Sampler::rational(bool nonzero) {
  for (;;) {
    Rational q(static_cast<long>(next(9)) - 4, static_cast<long>(1 + next(3)));
    q.canonicalize();
    if (!nonzero || sgn(q) != 0) return q;
  }
}

Number Sampler::number(bool nonzero) {
  for (;;) {
    std::array<Rational, 4> c;
    for (auto& x : c) {
      x = Rational(static_cast<long>(next(5)) - 2, static_cast<long>(1 + next(2)));
      x.canonicalize();
    }
    auto v = Number::from_coefficients(c);
    if (!nonzero || !v.is_zero()) return v;
  }
}

std::vector<Number> invariant_point(const XmModel& model, const std::vector<Number>& ambient_point) {
  check_on_variety(*model.ambient, ambient_point);
  std::vector<Number> out;
  for (const auto& g : model.invariant->ambient()->generators) out.push_back(g.evaluate(ambient_point));
  return out;
}

std::vector<Number> generic_sample(const XmModel& model, Sampler& s) {
  std::vector<Number> p(model.ambient->size());
  p[1] = s.rational(true);
  Number sum;
  for (int j = 1; j <= model.k; ++j) {
    p[static_cast<std::size_t>(1 + j)] = s.rational(true);
    sum += p[static_cast<std::size_t>(1 + j)].pow(static_cast<unsigned long>(model.n));
  }
  p[0] = sum / p[1].pow(static_cast<unsigned long>(model.n));
  for (int i = 1; i <= model.m; ++i) p[static_cast<std::size_t>(1 + model.k + i)] = s.rational(true);
  return invariant_point(model, p);
}

std::vector<Number> u1_sample(const XmModel& model, Sampler& s) {
  if (!model.has_quartic_roots()) throw Error("U_1 samples are only modelled for x y^4 = z^4 + w^4");
  std::vector<Number> p(model.ambient->size());
  p[0] = s.rational(false);
  p[2] = s.rational(true);
  p[3] = p[2] * Number::epsilon_power(3);
  for (int i = 1; i <= model.m; ++i) p[static_cast<std::size_t>(3 + i)] = s.rational(true);
  return invariant_point(model, p);
}

std::vector<Number> l_sample(const XmModel& model, Sampler& s) {
  std::vector<Number> p(model.invariant->size());
  p[0] = s.rational(false);
  return p;
}

std::vector<Number> d_sample(const XmModel& model, Sampler& s) {
  if (!model.has_quartic_roots()) throw Error("D samples are only modelled for x y^4 = z^4 + w^4");
  std::vector<Number> p(model.ambient->size());
  p[0] = s.number(false);
  p[2] = s.number(true);
  p[3] = p[2] * Number::epsilon_power(static_cast<long>(2 * s.next(4) + 1));
  for (int i = 1; i <= model.m; ++i) p[static_cast<std::size_t>(3 + i)] = s.number(false);
  return invariant_point(model, p);
}

std::optional<int> d_component(const XmModel& model, const std::vector<Number>& p) {
  if (!model.has_quartic_roots()) return std::nullopt;
  for (int i = 1; i <= model.m; ++i)
    if (!p[model.invariant_index(0, i)].is_zero()) return std::nullopt;
  for (int j = 1; j <= 4; ++j) {
    Number ej = Number::epsilon_power(2 * j - 1);
    bool all = true;
    for (int i = 1; i <= model.m && all; ++i)
      all = (p[model.invariant_index(1, i)] + ej * p[model.invariant_index(2, i)]).is_zero();
    if (all) return j;
  }
  return std::nullopt;
}

Scenario xm_scenario(const XmModel& model, std::uint64_t seed) {
  Scenario s;
  std::ostringstream name;
  if (model.n == 4 && model.k == 2) name << "xm:m=" << model.m;
  else name << "xm-general:n=" << model.n << ",k=" << model.k << ",m=" << model.m;
  s.name = name.str();
  s.algebra = model.invariant;
  for (const auto& c : model.catalog) {
    s.derivations.emplace_back(c.name, c.invariant);
    s.ambient_derivations.emplace_back(c.name, c.ambient);
  }
  s.gradings = {{"F", model.f}, {"G", model.g_invariant}, {"Z2", model.z2}};
  Sampler sampler(seed);
  s.points.emplace_back("generic", generic_sample(model, sampler));
  std::vector<Number> ones(model.ambient->size(), Number(1));
  ones[0] = Number(static_cast<long>(model.k));
  s.points.emplace_back("unit", invariant_point(model, ones));
  if (model.has_quartic_roots()) s.points.emplace_back("U1", u1_sample(model, sampler));
  std::vector<Number> l(model.invariant->size());
  l[0] = Number(5);
  s.points.emplace_back("L", l);
  s.points.emplace_back("origin", std::vector<Number>(model.invariant->size()));
  return s;
}

bool is_xm_name(const std::string& name) { return name.rfind("xm:", 0) == 0 || name.rfind("xm-general:", 0) == 0; }

XmModel xm_from_name(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos || !is_xm_name(name)) throw Error("unknown built-in model \"" + name + "\"");
  std::map<std::string, int> params;
  std::stringstream in(name.substr(colon + 1));
  std::string kv;
  while (std::getline(in, kv, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error("expected key=value in \"" + name + "\"");
    try {
      std::size_t used = 0;
      params[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw Error("malformed parameter \"" + kv + "\" in \"" + name + "\"");
    }
  }
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) throw Error(std::string("missing parameter ") + key + " in \"" + name + "\"");
    return it->second;
  };
  if (name.rfind("xm:", 0) == 0) {
    if (params.size() != 1) throw Error("xm takes only m, e.g. xm:m=2");
    return build_xm(get("m"));
  }
  if (params.size() != 3) throw Error("xm-general takes n, k and m, e.g. xm-general:n=5,k=3,m=2");
  return build_xm_general(get("n"), get("k"), get("m"));
}

}  // namespace flexcheck
