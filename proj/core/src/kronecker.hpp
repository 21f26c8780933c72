#pragma once

// Kronecker substitution: a polynomial is packed into one big integer by
// sending x_i -> 2^(W * stride_i), with signed W-bit slots. Packing is a
// ring homomorphism, so products and whole polynomial compositions can be
// computed with GMP integer arithmetic and unpacked once at the end.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qasdyn/polynomial.hpp"

namespace qasdyn::detail {

struct KroneckerLayout {
  std::size_t nvars = 0;
  // When set, the last variable is dropped (evaluated at 1) and restored
  // from the total degree on unpacking.
  bool homogeneous = false;
  std::uint64_t total_degree = 0;
  std::vector<std::uint64_t> stride;  // one per packed variable
  std::uint64_t slots = 0;
  std::size_t limbs = 0;  // limbs per slot

  std::size_t packed_vars() const { return stride.size(); }
  std::uint64_t slot_of(const Monomial& m) const;
};

// Layout able to hold a result with the given per-variable degree bounds
// (non-homogeneous) or total degree (homogeneous), with coefficients
// bounded in absolute value by `coeff_bound`. nullopt when the packed
// integer would be unreasonably large.
std::optional<KroneckerLayout> make_layout(std::size_t nvars, std::span<const std::uint64_t> degree_bounds,
                                           const Integer& coeff_bound);
std::optional<KroneckerLayout> make_homogeneous_layout(std::size_t nvars, std::uint64_t total_degree,
                                                       const Integer& coeff_bound);

void pack(const Polynomial& p, const KroneckerLayout& layout, Integer& out);
Polynomial unpack(const Integer& packed, const KroneckerLayout& layout);

Polynomial multiply_classical(const Polynomial& a, const Polynomial& b);
std::optional<Polynomial> multiply_kronecker(const Polynomial& a, const Polynomial& b);
std::optional<Polynomial> pow_kronecker(const Polynomial& p, unsigned exponent);
std::optional<Polynomial> substitute_kronecker(const Polynomial& f, std::span<const Polynomial> g);

}  // namespace qasdyn::detail
