#include "univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace qasdyn::detail {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

Rational eval(const QPoly& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

int sign_at(const QPoly& p, const Rational& x) { return sgn(eval(p, x)); }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

namespace {

// a = q * b + r; returns q, leaves r in a.
QPoly divmod(QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("univariate division by zero");
  trim(a);
  if (a.size() < b.size()) return {};
  QPoly q(a.size() - b.size() + 1);
  const Rational& lb = b.back();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / lb;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

void make_monic(QPoly& p) {
  if (p.empty()) return;
  const Rational lc = p.back();
  for (auto& c : p) c /= lc;
}

}  // namespace

QPoly rem(QPoly a, const QPoly& b) {
  divmod(a, b);
  return a;
}

QPoly quo(QPoly a, const QPoly& b) { return divmod(a, b); }

QPoly monic_gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

QPoly squarefree_part(const QPoly& p) {
  const QPoly g = monic_gcd(p, derivative(p));
  if (degree(g) <= 0) return p;
  return quo(p, g);
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{p, derivative(p)};
  while (!chain.back().empty() && degree(chain.back()) > 0) {
    QPoly r = rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

namespace {

std::size_t variations(const std::vector<QPoly>& chain, const Rational& x) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

std::size_t count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
  const std::size_t va = variations(chain, a);
  const std::size_t vb = variations(chain, b);
  return va > vb ? va - vb : 0;
}

Rational cauchy_bound(const QPoly& p) {
  if (p.size() < 2) return 1;
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max<Rational>(m, abs(p[i] / p.back()));
  return 1 + m;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part fl.
  const Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / inner;
}

}  // namespace qasdyn::detail
