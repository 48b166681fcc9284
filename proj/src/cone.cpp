#include "flexcheck/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace flexcheck {

namespace {

void sort_unique(std::vector<LatticeVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

LatticeVector unit(std::size_t n, std::size_t i) {
  LatticeVector e(n);
  e[i] = 1;
  return e;
}

// Primitive integer vector along a rational direction.
LatticeVector clear_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  LatticeVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    r[i] = s.get_num();
  }
  return primitive(r);
}

// Projection of r onto the orthogonal complement of span(basis).
LatticeVector project_out(const LatticeVector& r, const std::vector<LatticeVector>& basis) {
  const std::size_t k = basis.size();
  std::vector<LatticeVector> gram(k, LatticeVector(k));
  LatticeVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = dot(basis[i], r);
    for (std::size_t j = 0; j < k; ++j) gram[j][i] = dot(basis[i], basis[j]);
  }
  auto c = solve_rational(gram, rhs);
  if (!c) throw Error("internal: singular Gram matrix");
  RationalVector out(r.size());
  for (std::size_t t = 0; t < r.size(); ++t) {
    out[t] = r[t];
    for (std::size_t i = 0; i < k; ++i) out[t] -= (*c)[i] * Rational(basis[i][t]);
  }
  return clear_denominators(out);
}

// Reduced row echelon basis of span(rows), each row made primitive.
std::vector<LatticeVector> canonical_span_basis(const std::vector<LatticeVector>& rows, std::size_t n) {
  std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(n));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m[r][c] = rows[r][c];
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) m[r][j] -= f * m[row][j];
    }
    ++row;
  }
  std::vector<LatticeVector> out;
  for (std::size_t r = 0; r < row; ++r) out.push_back(clear_denominators(m[r]));
  sort_unique(out);
  return out;
}

std::vector<LatticeVector> with_negatives(const std::vector<LatticeVector>& base,
                                          const std::vector<LatticeVector>& symmetric) {
  std::vector<LatticeVector> out = base;
  for (const auto& l : symmetric) {
    out.push_back(l);
    out.push_back(-l);
  }
  sort_unique(out);
  return out;
}

}  // namespace

GeneratorForm double_description(std::size_t n, std::span<const LatticeVector> normals) {
  std::vector<LatticeVector> lineality;
  for (std::size_t i = 0; i < n; ++i) lineality.push_back(unit(n, i));
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> processed;

  for (const auto& a : normals) {
    if (a.size() != n) throw Error("inequality normal has wrong rank");
    if (a.is_zero()) continue;

    auto it = std::find_if(lineality.begin(), lineality.end(),
                           [&](const LatticeVector& l) { return sgn(dot(a, l)) != 0; });
    if (it != lineality.end()) {
      LatticeVector l0 = *it;
      lineality.erase(it);
      Integer c0 = dot(a, l0);
      if (sgn(c0) < 0) {
        l0 = -l0;
        c0 = -c0;
      }
      for (auto& l : lineality) l = primitive(c0 * l - dot(a, l) * l0);
      for (auto& r : rays) r = primitive(c0 * r - dot(a, r) * l0);
      rays.push_back(primitive(l0));
    } else {
      std::vector<LatticeVector> pos, neg, next;
      for (const auto& r : rays) {
        int s = sgn(dot(a, r));
        if (s > 0) pos.push_back(r);
        else if (s < 0) neg.push_back(r);
        else next.push_back(r);
      }
      if (!neg.empty()) {
        const std::size_t full = rank(processed, n);
        for (const auto& p : pos) {
          for (const auto& q : neg) {
            std::vector<LatticeVector> common;
            for (const auto& b : processed)
              if (sgn(dot(b, p)) == 0 && sgn(dot(b, q)) == 0) common.push_back(b);
            if (rank(common, n) + 2 != full) continue;
            next.push_back(primitive(dot(a, p) * q - dot(a, q) * p));
          }
        }
        next.insert(next.end(), pos.begin(), pos.end());
        rays = std::move(next);
      }
    }
    processed.push_back(a);
  }

  GeneratorForm out;
  out.lineality = canonical_span_basis(lineality, n);
  for (const auto& r : rays) {
    LatticeVector p = out.lineality.empty() ? r : project_out(r, out.lineality);
    if (!p.is_zero()) out.rays.push_back(p);
  }
  sort_unique(out.rays);
  return out;
}

RationalCone::RationalCone(std::size_t n, GeneratorForm gens, GeneratorForm dual)
    : n_(n),
      rays_(std::move(gens.rays)),
      lineality_(std::move(gens.lineality)),
      facets_(std::move(dual.rays)),
      equalities_(std::move(dual.lineality)) {
  dim_ = n_ - equalities_.size();
}

RationalCone RationalCone::from_generators(std::size_t n, std::span<const LatticeVector> generators) {
  for (const auto& g : generators)
    if (g.size() != n) throw Error("generator has wrong rank");
  GeneratorForm dual = double_description(n, generators);
  auto normals = with_negatives(dual.rays, dual.lineality);
  GeneratorForm primal = double_description(n, normals);
  return RationalCone(n, std::move(primal), std::move(dual));
}

RationalCone RationalCone::from_inequalities(std::size_t n, std::span<const LatticeVector> normals) {
  GeneratorForm primal = double_description(n, normals);
  auto gens = with_negatives(primal.rays, primal.lineality);
  GeneratorForm dual = double_description(n, gens);
  return RationalCone(n, std::move(primal), std::move(dual));
}

std::vector<LatticeVector> RationalCone::v_rep() const { return with_negatives(rays_, lineality_); }

std::vector<LatticeVector> RationalCone::h_rep() const { return with_negatives(facets_, equalities_); }

bool RationalCone::contains(const LatticeVector& v) const {
  if (v.size() != n_) throw Error("point has wrong rank");
  for (const auto& e : equalities_)
    if (sgn(dot(e, v)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(dot(f, v)) < 0) return false;
  return true;
}

bool RationalCone::contains_in_relative_interior(const LatticeVector& v) const {
  if (!contains(v)) return false;
  for (const auto& f : facets_)
    if (sgn(dot(f, v)) == 0) return false;
  return true;
}

RationalCone dual_cone(const RationalCone& cone) {
  // The canonical forms of a cone and its dual are exchanged verbatim.
  return RationalCone::from_generators(cone.ambient_rank(), cone.h_rep());
}

Face face_from_rays(const RationalCone& cone, std::span<const std::size_t> ray_indices) {
  const auto& rays = cone.rays();
  const auto& facets = cone.facets();
  Face face;
  for (std::size_t j = 0; j < facets.size(); ++j) {
    bool tight = std::all_of(ray_indices.begin(), ray_indices.end(),
                             [&](std::size_t i) { return sgn(dot(facets[j], rays.at(i))) == 0; });
    if (tight) face.tight_facets.push_back(j);
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    bool inside = std::all_of(face.tight_facets.begin(), face.tight_facets.end(),
                              [&](std::size_t j) { return sgn(dot(facets[j], rays[i])) == 0; });
    if (inside) face.rays.push_back(i);
  }
  std::vector<LatticeVector> rows;
  for (std::size_t j : face.tight_facets) rows.push_back(facets[j]);
  for (const auto& e : cone.equalities()) rows.push_back(e);
  face.span_basis = kernel_lattice(rows, cone.ambient_rank());
  face.dim = face.span_basis.size();
  return face;
}

std::vector<Face> face_lattice(const RationalCone& cone) {
  std::vector<std::size_t> all(cone.rays().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::map<std::vector<std::size_t>, Face> seen;
  std::vector<Face> queue{face_from_rays(cone, all)};
  seen.emplace(queue.front().rays, queue.front());
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Face current = queue[q];
    for (std::size_t j = 0; j < cone.facets().size(); ++j) {
      if (std::binary_search(current.tight_facets.begin(), current.tight_facets.end(), j)) continue;
      std::vector<std::size_t> sub;
      for (std::size_t i : current.rays)
        if (sgn(dot(cone.facets()[j], cone.rays()[i])) == 0) sub.push_back(i);
      Face f = face_from_rays(cone, sub);
      if (seen.emplace(f.rays, f).second) queue.push_back(f);
    }
  }
  std::vector<Face> out;
  for (auto& [key, f] : seen) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.tight_facets > b.tight_facets;
  });
  return out;
}

std::vector<LatticeVector> face_generators(const RationalCone& cone, const Face& face) {
  std::vector<LatticeVector> out;
  for (std::size_t i : face.rays) out.push_back(cone.rays().at(i));
  for (const auto& l : cone.lineality()) out.push_back(l);
  return out;
}

Face face_orthogonal_to(const RationalCone& cone, const LatticeVector& normal) {
  std::vector<std::size_t> sub;
  for (std::size_t i = 0; i < cone.rays().size(); ++i)
    if (sgn(dot(normal, cone.rays()[i])) == 0) sub.push_back(i);
  return face_from_rays(cone, sub);
}

Face dual_face(const RationalCone& cone, const Face& tau) {
  RationalCone dual = dual_cone(cone);
  for (std::size_t i : tau.rays)
    if (i >= dual.rays().size()) throw Error("not a face of the dual cone: ray index out of range");
  if (face_from_rays(dual, tau.rays) != tau) throw Error("not a face of the dual cone");
  const auto gens = face_generators(dual, tau);
  std::vector<std::size_t> sub;
  for (std::size_t i = 0; i < cone.rays().size(); ++i) {
    bool orth = std::all_of(gens.begin(), gens.end(),
                            [&](const LatticeVector& g) { return sgn(dot(g, cone.rays()[i])) == 0; });
    if (orth) sub.push_back(i);
  }
  return face_from_rays(cone, sub);
}

namespace {

bool in_some_piece(const std::vector<std::vector<LatticeVector>>& pieces, const LatticeVector& v) {
  for (const auto& piece : pieces) {
    auto t = solve_rational(piece, v);
    if (!t) continue;
    if (std::all_of(t->begin(), t->end(), [](const Rational& x) { return sgn(x) >= 0; })) return true;
  }
  return false;
}

// A functional vanishing on `facet` and positive on `opposite`.
LatticeVector facet_normal(const std::vector<LatticeVector>& facet, const LatticeVector& opposite) {
  const std::size_t n = opposite.size();
  for (const auto& k : kernel_lattice(facet, n)) {
    int s = sgn(dot(k, opposite));
    if (s > 0) return k;
    if (s < 0) return -k;
  }
  throw Error("internal: degenerate simplicial piece");
}

}  // namespace

std::vector<SimplicialPiece> triangulate(const RationalCone& cone, std::span<const LatticeVector> vectors) {
  const std::size_t n = cone.ambient_rank();
  std::vector<LatticeVector> used;
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error("triangulation vector has wrong rank");
    if (!cone.contains(v)) throw Error("vector " + v.to_string() + " lies outside the cone");
    if (v.is_zero()) continue;
    LatticeVector p = primitive(v);
    bool dup = std::any_of(used.begin(), used.end(), [&](const LatticeVector& u) { return primitive(u) == p; });
    if (!dup) used.push_back(v);
  }
  RationalCone hull = RationalCone::from_generators(n, used);
  if (!(hull == cone)) {
    for (const auto& r : cone.v_rep())
      if (!hull.contains(r)) throw Error("vectors do not generate the cone; ray " + r.to_string() + " is missed");
    throw Error("vectors do not generate the cone");
  }

  std::vector<std::vector<LatticeVector>> pieces;
  std::vector<LatticeVector> processed;
  for (const auto& v : used) {
    if (processed.empty()) {
      pieces.push_back({v});
      processed.push_back(v);
      continue;
    }
    std::vector<LatticeVector> extended = processed;
    extended.push_back(v);
    if (rank(extended, n) > rank(processed, n)) {
      for (auto& piece : pieces) piece.push_back(v);
    } else if (in_some_piece(pieces, v)) {
      continue;
    } else {
      std::vector<std::vector<LatticeVector>> added;
      for (const auto& piece : pieces) {
        for (std::size_t i = 0; i < piece.size(); ++i) {
          std::vector<LatticeVector> facet;
          for (std::size_t j = 0; j < piece.size(); ++j)
            if (j != i) facet.push_back(piece[j]);
          LatticeVector h = facet_normal(facet, piece[i]);
          if (sgn(dot(h, v)) >= 0) continue;
          bool supporting = std::all_of(processed.begin(), processed.end(),
                                        [&](const LatticeVector& g) { return sgn(dot(h, g)) >= 0; });
          if (!supporting) continue;
          facet.push_back(v);
          added.push_back(std::move(facet));
        }
      }
      pieces.insert(pieces.end(), added.begin(), added.end());
    }
    processed.push_back(v);
  }

  std::vector<SimplicialPiece> out;
  for (auto& gens : pieces) {
    std::sort(gens.begin(), gens.end());
    SimplicialPiece p;
    p.parallelepiped_points = parallelepiped_points(gens);
    p.generators = std::move(gens);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const SimplicialPiece& a, const SimplicialPiece& b) { return a.generators < b.generators; });
  return out;
}

namespace {

struct SpanCoordinates {
  std::vector<LatticeVector> basis;  // Z-basis of span cap Z^n
  IntegerMatrix coords;              // column j = generator j in that basis
};

SpanCoordinates span_coordinates(std::span<const LatticeVector> generators) {
  if (generators.empty()) throw Error("empty generator list");
  const std::size_t n = generators[0].size();
  const std::size_t d = generators.size();
  if (rank(generators, n) != d) throw Error("parallelepiped generators are linearly dependent");
  auto perp = kernel_lattice(generators, n);
  SpanCoordinates sc;
  sc.basis = kernel_lattice(perp, n);
  sc.coords = IntegerMatrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto t = solve_rational(sc.basis, generators[j]);
    if (!t) throw Error("internal: generator outside its own span");
    for (std::size_t i = 0; i < d; ++i) {
      if ((*t)[i].get_den() != 1) throw Error("internal: span basis is not saturated");
      sc.coords(i, j) = (*t)[i].get_num();
    }
  }
  return sc;
}

}  // namespace

Integer lattice_volume(std::span<const LatticeVector> generators) {
  return abs(determinant(span_coordinates(generators).coords));
}

std::vector<LatticeVector> parallelepiped_points(std::span<const LatticeVector> generators) {
  const std::size_t n = generators[0].size();
  const std::size_t d = generators.size();
  SpanCoordinates sc = span_coordinates(generators);
  // Rows of H span the same lattice as the generator coordinates and are
  // upper triangular, so a box of residues gives one point per coset.
  IntegerMatrix h = hermite_normal_form(sc.coords.transpose()).hermite;
  std::vector<Integer> bounds(d);
  for (std::size_t i = 0; i < d; ++i) bounds[i] = h(i, i);

  std::vector<LatticeVector> gen_coords;
  for (std::size_t j = 0; j < d; ++j) {
    LatticeVector c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = sc.coords(i, j);
    gen_coords.push_back(c);
  }

  std::vector<LatticeVector> out;
  LatticeVector x(d);
  while (true) {
    auto t = solve_rational(gen_coords, x);
    LatticeVector point(n);
    for (std::size_t i = 0; i < d; ++i) point += x[i] * sc.basis[i];
    for (std::size_t j = 0; j < d; ++j) {
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), (*t)[j].get_num_mpz_t(), (*t)[j].get_den_mpz_t());
      point -= fl * generators[j];
    }
    out.push_back(point);
    std::size_t k = 0;
    while (k < d) {
      x[k] += 1;
      if (x[k] < bounds[k]) break;
      x[k] = 0;
      ++k;
    }
    if (k == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticeVector> hilbert_basis(const RationalCone& cone) {
  if (!cone.is_pointed()) throw Error("Hilbert basis requires pointed cone");
  if (cone.rays().empty()) return {};
  std::set<LatticeVector> candidates(cone.rays().begin(), cone.rays().end());
  for (const auto& piece : triangulate(cone, cone.rays()))
    for (const auto& p : piece.parallelepiped_points)
      if (!p.is_zero()) candidates.insert(p);
  std::vector<LatticeVector> out;
  for (const auto& c : candidates) {
    bool reducible = std::any_of(candidates.begin(), candidates.end(), [&](const LatticeVector& y) {
      return y != c && cone.contains(c - y);
    });
    if (!reducible) out.push_back(c);
  }
  return out;
}

}  // namespace flexcheck
