#pragma once

// Dense univariate polynomials over Q, ascending coefficients, no trailing
// zeros. Only what root isolation needs.

#include <vector>

#include "qasdyn/numeric.hpp"

namespace qasdyn::detail {

using QPoly = std::vector<Rational>;

void trim(QPoly& p);
int degree(const QPoly& p);  // -1 for zero
Rational eval(const QPoly& p, const Rational& x);
int sign_at(const QPoly& p, const Rational& x);
QPoly derivative(const QPoly& p);
QPoly rem(QPoly a, const QPoly& b);
QPoly quo(QPoly a, const QPoly& b);
QPoly monic_gcd(QPoly a, QPoly b);
QPoly squarefree_part(const QPoly& p);

// Sturm chain of a squarefree polynomial.
std::vector<QPoly> sturm_chain(const QPoly& p);
// Number of distinct real roots in (a, b].
std::size_t count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b);

// Cauchy bound: every root has modulus < bound.
Rational cauchy_bound(const QPoly& p);

// Simplest rational (smallest denominator) in [lo, hi], lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace qasdyn::detail
