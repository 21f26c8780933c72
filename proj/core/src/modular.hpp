#pragma once

// Arithmetic in Z/p for word-sized primes p < 2^63, and dense univariate
// polynomials over it (ascending coefficients, no trailing zeros).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmp.h>

#include "qasdyn/numeric.hpp"

namespace qasdyn::detail {

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {}

  std::uint64_t modulus() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (p_ - b); }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
    return pow(a, p_ - 2);
  }
  std::uint64_t reduce(const Integer& v) const { return mpz_fdiv_ui(v.get_mpz_t(), p_); }

 private:
  std::uint64_t p_;
};

using ModPoly = std::vector<std::uint64_t>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t eval(const PrimeField& F, const ModPoly& a, std::uint64_t x) {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

// a mod b, b nonzero.
inline void rem_in_place(const PrimeField& F, ModPoly& a, const ModPoly& b) {
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv_lead = F.inv(b.back());
  while (a.size() > db) {
    const std::uint64_t c = F.mul(a.back(), inv_lead);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i < db; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    a.pop_back();
    trim(a);
  }
}

inline ModPoly monic_gcd(const PrimeField& F, ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    rem_in_place(F, a, b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::uint64_t inv_lead = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv_lead);
  }
  return a;
}

// Primes just above 2^62, produced in increasing order.
class PrimeSequence {
 public:
  PrimeSequence() { mpz_ui_pow_ui(current_.get_mpz_t(), 2, 62); }
  std::uint64_t next() {
    mpz_nextprime(current_.get_mpz_t(), current_.get_mpz_t());
    return mpz_get_ui(current_.get_mpz_t());
  }

 private:
  Integer current_;
};

}  // namespace qasdyn::detail
