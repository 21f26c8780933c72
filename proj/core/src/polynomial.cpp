#include "qasdyn/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

#include "kronecker.hpp"
#include "qasdyn/errors.hpp"

namespace qasdyn {

namespace {

void require_same_nvars(const Polynomial& a, const Polynomial& b, const char* op) {
  if (a.nvars() != b.nvars()) {
    throw StructuralError(std::string(op) + ": variable count mismatch (" + std::to_string(a.nvars()) + " vs " +
                          std::to_string(b.nvars()) + ")");
  }
}

// Merges two descending term lists; sign = +1 for addition, -1 for subtraction.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = a[i].monomial <=> b[j].monomial;
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].monomial, sign > 0 ? b[j].coeff : Integer(-b[j].coeff)});
      ++j;
    } else {
      Integer s = sign > 0 ? Integer(a[i].coeff + b[j].coeff) : Integer(a[i].coeff - b[j].coeff);
      if (s != 0) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].monomial, sign > 0 ? b[j].coeff : Integer(-b[j].coeff)});
  return out;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Integer& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.push_back({Monomial(nvars), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  assert(index < nvars);
  Polynomial p(nvars);
  p.terms_.push_back({Monomial(nvars).with_exponent(index, 1), Integer(1)});
  return p;
}

Polynomial Polynomial::from_monomial(const Monomial& m, const Integer& c) {
  Polynomial p(m.nvars());
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
  Polynomial p(nvars);
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    assert(t.monomial.nvars() == nvars);
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Polynomial Polynomial::from_sorted_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_.front().monomial.is_one() && terms_.front().coeff == 1;
}

long Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.front().monomial.degree());
}

long Polynomial::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  Monomial::Exponent best = 0;
  for (const auto& t : terms_) best = std::max(best, t.monomial[var]);
  return best;
}

unsigned Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  Monomial::Exponent best = terms_.front().monomial[var];
  for (const auto& t : terms_) best = std::min(best, t.monomial[var]);
  return best;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = terms_.front().monomial.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.monomial.degree() == d; });
}

Integer Polynomial::norm1() const {
  Integer s = 0;
  for (const auto& t : terms_) s += abs(t.coeff);
  return s;
}

Integer Polynomial::norm_inf() const {
  Integer m = 0;
  for (const auto& t : terms_) {
    if (mpz_cmpabs(t.coeff.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.coeff);
  }
  return m;
}

Integer Polynomial::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_nvars(*this, other, "add");
  terms_ = merge_terms(terms_, other.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_nvars(*this, other, "sub");
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial Polynomial::scaled(const Integer& c) const {
  if (c == 0) return Polynomial(nvars_);
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

Polynomial Polynomial::divexact(const Integer& c) const {
  Polynomial out = *this;
  for (auto& t : out.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return out;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Integer& c) const {
  if (c == 0) return Polynomial(nvars_);
  Polynomial out(nvars_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.monomial * m, t.coeff * c});
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  out += b;
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  out -= b;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_nvars(a, b, "mul");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars());
  if (a.size() == 1) return b.times_monomial(a.leading_term().monomial, a.leading_coeff());
  if (b.size() == 1) return a.times_monomial(b.leading_term().monomial, b.leading_coeff());
  if (a.size() * b.size() > 64) {
    if (auto k = detail::multiply_kronecker(a, b)) return std::move(*k);
  }
  return detail::multiply_classical(a, b);
}

Polynomial pow(const Polynomial& p, unsigned exponent) {
  if (exponent == 0) return Polynomial::constant(p.nvars(), 1);
  if (exponent == 1 || p.is_zero()) return p;
  if (p.size() == 1) {
    const auto& t = p.leading_term();
    std::vector<Monomial::Exponent> e(t.monomial.exponents().begin(), t.monomial.exponents().end());
    for (auto& x : e) x *= exponent;
    return Polynomial::from_monomial(Monomial(std::move(e)), ipow(t.coeff, exponent));
  }
  if (auto k = detail::pow_kronecker(p, exponent)) return std::move(*k);
  Polynomial result = Polynomial::constant(p.nvars(), 1);
  Polynomial base = p;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial arith(const Polynomial& p, const Polynomial& q, ArithKind kind) {
  switch (kind) {
    case ArithKind::add:
      return p + q;
    case ArithKind::sub:
      return p - q;
    case ArithKind::mul:
      return p * q;
  }
  return p;
}

Polynomial canonicalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer c = p.content();
  if (p.leading_coeff() < 0) c = -c;
  if (c == 1) return p;
  return p.divexact(c);
}

bool is_canonical(const Polynomial& p) {
  return p.is_zero() || (p.leading_coeff() > 0 && p.content() == 1);
}

Integer evaluate(const Polynomial& p, std::span<const Integer> point) {
  if (point.size() != p.nvars()) {
    throw StructuralError("evaluate: point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                          std::to_string(p.nvars()) + " variables");
  }
  // powers[i][e] = point[i]^e, grown on demand.
  std::vector<std::vector<Integer>> powers(p.nvars(), std::vector<Integer>{Integer(1)});
  Integer sum = 0;
  Integer term;
  for (const auto& t : p.terms()) {
    term = t.coeff;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      const auto e = t.monomial[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
      term *= pw[e];
    }
    sum += term;
  }
  return sum;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw StructuralError("partial_derivative: variable index out of range");
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    const auto e = t.monomial[var];
    if (e == 0) continue;
    out.push_back({t.monomial.with_exponent(var, e - 1), t.coeff * e});
  }
  // Lowering one exponent by one keeps distinct monomials distinct but can
  // reorder them under graded-lex, so re-sort.
  return Polynomial::from_terms(p.nvars(), std::move(out));
}

namespace {

// Horner evaluation over lexicographically sorted terms, with polynomial
// arithmetic. Used when the packed-integer route is not applicable.
Polynomial horner_substitute(std::span<const Term* const> terms, std::size_t var, std::span<const Polynomial> g,
                             std::size_t out_nvars) {
  if (var == g.size()) return Polynomial::constant(out_nvars, terms.front()->coeff);
  Polynomial acc(out_nvars);
  std::size_t i = 0;
  Monomial::Exponent prev = terms.front()->monomial[var];
  while (i < terms.size()) {
    const auto e = terms[i]->monomial[var];
    std::size_t j = i;
    while (j < terms.size() && terms[j]->monomial[var] == e) ++j;
    if (!acc.is_zero() && prev > e) acc = acc * pow(g[var], prev - e);
    acc += horner_substitute(terms.subspan(i, j - i), var + 1, g, out_nvars);
    prev = e;
    i = j;
  }
  if (prev > 0) acc = acc * pow(g[var], prev);
  return acc;
}

}  // namespace

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> g) {
  if (g.size() != f.nvars()) {
    throw StructuralError("substitute: polynomial has " + std::to_string(f.nvars()) + " variables but " +
                          std::to_string(g.size()) + " substitutions were given");
  }
  if (g.empty()) throw StructuralError("substitute: empty substitution");
  const std::size_t n = g.front().nvars();
  for (const auto& gi : g) {
    if (gi.nvars() != n) throw StructuralError("substitute: substitutions disagree on variable count");
  }
  if (f.is_zero()) return Polynomial(n);
  if (auto k = detail::substitute_kronecker(f, g)) return std::move(*k);
  std::vector<const Term*> sorted;
  sorted.reserve(f.size());
  for (const auto& t : f.terms()) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const Term* a, const Term* b) { return lex_compare(a->monomial, b->monomial) > 0; });
  return horner_substitute(sorted, 0, g, n);
}

std::vector<Polynomial> substitute_all(std::span<const Polynomial> fs, std::span<const Polynomial> g) {
  std::vector<Polynomial> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(substitute(f, g));
  return out;
}

std::string term_to_string(const Term& t, std::span<const std::string> names) {
  std::ostringstream os;
  const auto& m = t.monomial;
  const bool unit = abs(t.coeff) == 1 && !m.is_one();
  if (!unit) {
    os << t.coeff.get_str();
  } else if (t.coeff < 0) {
    os << "-";
  }
  bool first = unit;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    if (i < names.size()) {
      os << names[i];
    } else {
      os << "x" << i;
    }
    if (m[i] > 1) os << "^" << m[i];
  }
  return os.str();
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string s = term_to_string(t, names);
    if (first) {
      out = s;
      first = false;
    } else if (s.front() == '-') {
      out += " - " + s.substr(1);
    } else {
      out += " + " + s;
    }
  }
  return out;
}

}  // namespace qasdyn
