#pragma once

#include <functional>
#include <vector>

#include "qasdyn/polynomial.hpp"

namespace qasdyn::detail {

using GcdFn = Polynomial (*)(const Polynomial&, const Polynomial&);
// Accepts or rejects a gcd candidate; may record cofactors on acceptance.
using GcdVerifier = std::function<bool(const Polynomial&)>;

// Variables occurring in a or b, ascending.
std::vector<std::size_t> active_variables(const Polynomial& a, const Polynomial& b);

// Coefficients of p viewed as a polynomial in `var`, indexed by exponent.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);

// Canonical gcd of coefficients_in(p, var) computed with `gcd_fn`.
Polynomial content_in(const Polynomial& p, std::size_t var, GcdFn gcd_fn);

// Recursive subresultant remainder sequence. Canonical result.
Polynomial gcd_subresultant(const Polynomial& a, const Polynomial& b);

// Modular (Brown) gcd for inputs with at most two active variables.
// The candidate is handed to `verify`; a rejection triggers more primes
// and evaluation points. Canonical result.
Polynomial gcd_modular(const Polynomial& a, const Polynomial& b, const GcdVerifier& verify);

}  // namespace qasdyn::detail
