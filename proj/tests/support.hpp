#pragma once

// Test helpers and oracles. The oracles deliberately avoid the library's
// arithmetic kernels: products go through an exponent map, degree
// sequences through binary forms over Z/p restricted to a random line.

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qasdyn/mapspec.hpp"
#include "qasdyn/polynomial.hpp"
#include "qasdyn/projmap.hpp"

namespace qasdyn::testing {

inline const std::vector<std::string>& zwt() {
  static const std::vector<std::string> v{"z", "w", "t"};
  return v;
}

// Integer polynomial from text, e.g. P("2*t*z - (z^2 + w^2)").
inline Polynomial P(std::string_view text, const std::vector<std::string>& vars = zwt()) {
  ScaledPolynomial s = parse_expression(text, vars);
  if (s.denominator != 1) throw std::invalid_argument("P: rational coefficients in " + std::string(text));
  return s.numerator;
}

inline HomogeneousMap map_of(std::initializer_list<std::string_view> comps,
                             const std::vector<std::string>& vars = zwt()) {
  std::vector<Polynomial> v;
  for (auto c : comps) v.push_back(P(c, vars));
  return HomogeneousMap(std::move(v));
}

struct RandomPoly {
  std::size_t nvars = 3;
  unsigned max_degree = 4;
  std::size_t max_terms = 6;
  long coeff_bound = 9;
  bool homogeneous = false;  // all terms of degree max_degree
};

inline Polynomial random_poly(std::mt19937_64& rng, const RandomPoly& cfg) {
  std::uniform_int_distribution<std::size_t> nterms(1, cfg.max_terms);
  std::uniform_int_distribution<long> coeff(-cfg.coeff_bound, cfg.coeff_bound);
  std::uniform_int_distribution<unsigned> deg(0, cfg.max_degree);
  std::vector<Term> terms;
  const std::size_t n = nterms(rng);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Monomial::Exponent> e(cfg.nvars, 0);
    unsigned total = cfg.homogeneous ? cfg.max_degree : deg(rng);
    // Distribute `total` among the variables.
    for (unsigned i = 0; i < total; ++i) e[std::uniform_int_distribution<std::size_t>(0, cfg.nvars - 1)(rng)]++;
    long c = coeff(rng);
    if (c == 0) c = 1;
    terms.push_back({Monomial(e), Integer(c)});
  }
  return Polynomial::from_terms(cfg.nvars, std::move(terms));
}

inline Polynomial random_nonzero(std::mt19937_64& rng, const RandomPoly& cfg) {
  for (;;) {
    Polynomial p = random_poly(rng, cfg);
    if (!p.is_zero()) return p;
  }
}

// Product by accumulating every pair of terms in an exponent-keyed map.
inline Polynomial oracle_product(const Polynomial& a, const Polynomial& b) {
  std::map<std::vector<Monomial::Exponent>, Integer> acc;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      std::vector<Monomial::Exponent> e(a.nvars());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = x.monomial[i] + y.monomial[i];
      acc[e] += x.coeff * y.coeff;
    }
  }
  std::vector<Term> terms;
  for (auto& [e, c] : acc) {
    if (c != 0) terms.push_back({Monomial(e), c});
  }
  return Polynomial::from_terms(a.nvars(), std::move(terms));
}

// ---- degree oracle over Z/p on a random line ----

namespace modp {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) { return (a + b) % kPrime; }
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return (a + kPrime - b) % kPrime; }
inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul(a, a)) {
    if (e & 1) r = mul(r, a);
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a) { return power(a, kPrime - 2); }
inline std::uint64_t reduce(const Integer& c) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), Integer(std::to_string(kPrime)).get_mpz_t());
  return std::stoull(r.get_str());
}

using Poly = std::vector<std::uint64_t>;  // ascending in s

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
  }
  return r;
}
inline Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = add(a[i], b[i]);
  trim(a);
  return a;
}
inline Poly rem(Poly a, const Poly& b) {
  const std::uint64_t lb = inv(b.back());
  while (a.size() >= b.size()) {
    const std::uint64_t c = mul(a.back(), lb);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(c, b[i]));
    trim(a);
  }
  return a;
}
inline Poly quo(Poly a, const Poly& b) {
  const std::uint64_t lb = inv(b.back());
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    const std::uint64_t c = mul(a.back(), lb);
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(c, b[i]));
    trim(a);
  }
  return q;
}
inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace modp

// d(f^0), ..., d(f^horizon) from binary forms: the line x = s*a + u*b is
// pushed forward, and the common factor of the image forms is removed at
// every step. Correct for a generic line with probability ~1.
inline std::vector<std::uint64_t> oracle_degrees(const HomogeneousMap& f, std::size_t horizon, std::uint64_t seed) {
  using namespace modp;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, kPrime - 1);
  const std::size_t n = f.nvars();
  // Forms stored dehomogenized at u = 1 with a declared degree.
  std::vector<Poly> forms(n);
  for (std::size_t i = 0; i < n; ++i) forms[i] = {pick(rng), pick(rng)};
  std::uint64_t degree = 1;
  std::vector<std::uint64_t> out{1};
  for (std::size_t step = 1; step <= horizon; ++step) {
    std::vector<Poly> next;
    for (const auto& comp : f.components()) {
      Poly acc;
      for (const auto& t : comp.terms()) {
        Poly term{reduce(t.coeff)};
        for (std::size_t i = 0; i < n; ++i) {
          for (unsigned k = 0; k < t.monomial[i]; ++k) term = mul(term, forms[i]);
        }
        acc = add(acc, term);
      }
      next.push_back(acc);
    }
    std::uint64_t new_degree = degree * f.degree();
    Poly g;
    std::uint64_t u_power = new_degree;
    for (const auto& p : next) {
      g = gcd(g, p);
      if (!p.empty()) u_power = std::min<std::uint64_t>(u_power, new_degree - (p.size() - 1));
    }
    const std::uint64_t strip = (g.size() - 1) + u_power;
    for (auto& p : next) {
      if (!p.empty()) p = quo(p, g);
    }
    forms = std::move(next);
    degree = new_degree - strip;
    out.push_back(degree);
  }
  return out;
}

}  // namespace qasdyn::testing
