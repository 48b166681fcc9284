#pragma once

#include <vector>

#include "flexcheck/polynomial.hpp"

namespace flexcheck {

/// degrevlex, optionally refined into a block order: the first `block`
/// variables are compared first (degrevlex among themselves) and dominate
/// the rest. block = 0 is plain degrevlex.
struct MonomialOrder {
  std::size_t block = 0;
  int compare(const Monomial& a, const Monomial& b) const;
};

/// Raised when a Groebner computation exceeds its time budget.
class EffortExceeded : public Error {
 public:
  using Error::Error;
};

/// Seconds allowed per Groebner computation: FLEXCHECK_EFFORT_CAP if set,
/// otherwise 60.
double default_effort_cap();

/// Reduced Groebner basis, sorted by increasing leading monomial, monic.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators, const MonomialOrder& order = {},
                                       double effort_seconds = default_effort_cap());

/// Fully reduced remainder of f by `basis` (a Groebner basis for `order`
/// gives the unique normal form).
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order = {});

/// Leading term of f in the given order.
Term leading_term(const Polynomial& f, const MonomialOrder& order = {});

/// Generators of the intersection of the ideal with the subring of the
/// variables not listed in `eliminate`, as a reduced Groebner basis.
std::vector<Polynomial> eliminate(const std::vector<Polynomial>& generators, const std::vector<std::size_t>& eliminate,
                                  std::size_t variable_count, double effort_seconds = default_effort_cap());

}  // namespace flexcheck
