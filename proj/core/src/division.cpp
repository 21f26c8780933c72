#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "qasdyn/errors.hpp"
#include "qasdyn/polynomial.hpp"

namespace qasdyn {

namespace {

constexpr std::uint64_t kDenseSlotLimit = 4'000'000;

using TermMap = std::map<Monomial, Integer, std::greater<>>;

void check_operands(const Polynomial& p, const Polynomial& q, const char* op) {
  if (p.nvars() != q.nvars()) {
    throw StructuralError(std::string(op) + ": variable count mismatch (" + std::to_string(p.nvars()) + " vs " +
                          std::to_string(q.nvars()) + ")");
  }
  if (q.is_zero()) throw DomainError(std::string(op) + ": division by the zero polynomial");
}

std::optional<std::uint64_t> dense_slot_count(std::size_t nvars, std::uint64_t degree) {
  unsigned __int128 slots = 1;
  for (std::size_t i = 0; i + 1 < nvars; ++i) {
    slots *= degree + 1;
    if (slots > kDenseSlotLimit) return std::nullopt;
  }
  return static_cast<std::uint64_t>(slots);
}

// Both operands homogeneous. Slots index the exponents of all but the last
// variable with radix deg(p)+1; descending slot order is descending
// graded-lex order within one total degree.
std::optional<Polynomial> dense_homogeneous_div(const Polynomial& p, const Polynomial& q, std::uint64_t slots) {
  const std::size_t n = p.nvars();
  const std::uint64_t degree = static_cast<std::uint64_t>(p.degree());
  const std::uint64_t radix = degree + 1;
  std::vector<std::uint64_t> stride(n - 1, 1);
  for (std::size_t i = n - 1; i-- > 1;) stride[i - 1] = stride[i] * radix;
  auto slot_of = [&](const Monomial& m) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) s += m[i] * stride[i];
    return s;
  };

  std::vector<Integer> rem(slots);
  for (const auto& t : p.terms()) rem[slot_of(t.monomial)] = t.coeff;

  const Term& lead = q.leading_term();
  const std::uint64_t lead_slot = slot_of(lead.monomial);
  std::vector<std::uint64_t> offsets;
  offsets.reserve(q.size() - 1);
  for (std::size_t k = 1; k < q.size(); ++k) offsets.push_back(lead_slot - slot_of(q.terms()[k].monomial));

  std::vector<Term> quotient;
  std::vector<Monomial::Exponent> exps(n);
  Integer c;
  for (std::uint64_t s = slots; s-- > 0;) {
    if (rem[s] == 0) continue;
    if (s < lead_slot) return std::nullopt;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      exps[i] = static_cast<Monomial::Exponent>((s / stride[i]) % radix);
      sum += exps[i];
    }
    exps[n - 1] = static_cast<Monomial::Exponent>(degree - sum);
    for (std::size_t i = 0; i < n; ++i) {
      if (exps[i] < lead.monomial[i]) return std::nullopt;
      exps[i] -= lead.monomial[i];
    }
    if (!mpz_divisible_p(rem[s].get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
    mpz_divexact(c.get_mpz_t(), rem[s].get_mpz_t(), lead.coeff.get_mpz_t());
    rem[s] = 0;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      mpz_submul(rem[s - offsets[k]].get_mpz_t(), c.get_mpz_t(), q.terms()[k + 1].coeff.get_mpz_t());
    }
    quotient.push_back({Monomial(exps), c});
  }
  return Polynomial::from_sorted_terms(n, std::move(quotient));
}

std::optional<Polynomial> sparse_exact_div(const Polynomial& p, const Polynomial& q) {
  TermMap rem;
  for (const auto& t : p.terms()) rem.emplace(t.monomial, t.coeff);
  const Term& lead = q.leading_term();
  std::vector<Term> quotient;
  Integer c;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.monomial.divides(it->first)) return std::nullopt;
    if (!mpz_divisible_p(it->second.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
    mpz_divexact(c.get_mpz_t(), it->second.get_mpz_t(), lead.coeff.get_mpz_t());
    Monomial m = it->first / lead.monomial;
    rem.erase(it);
    for (std::size_t k = 1; k < q.size(); ++k) {
      const Term& t = q.terms()[k];
      auto [pos, inserted] = rem.try_emplace(m * t.monomial);
      mpz_submul(pos->second.get_mpz_t(), c.get_mpz_t(), t.coeff.get_mpz_t());
      if (pos->second == 0) rem.erase(pos);
    }
    quotient.push_back({std::move(m), c});
  }
  return Polynomial::from_sorted_terms(p.nvars(), std::move(quotient));
}

}  // namespace

std::optional<Polynomial> exact_div(const Polynomial& p, const Polynomial& q) {
  check_operands(p, q, "exact_div");
  const std::size_t n = p.nvars();
  if (p.is_zero()) return Polynomial(n);
  if (q.is_constant()) {
    for (const auto& t : p.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), q.leading_coeff().get_mpz_t())) return std::nullopt;
    }
    return p.divexact(q.leading_coeff());
  }
  if (p.degree() < q.degree()) return std::nullopt;
  if (!q.leading_term().monomial.divides(p.leading_term().monomial)) return std::nullopt;
  if (!mpz_divisible_p(p.leading_coeff().get_mpz_t(), q.leading_coeff().get_mpz_t())) return std::nullopt;
  for (std::size_t v = 0; v < n; ++v) {
    if (p.degree_in(v) < q.degree_in(v) || p.min_degree_in(v) < q.min_degree_in(v)) return std::nullopt;
  }
  if (n >= 2 && p.is_homogeneous() && q.is_homogeneous()) {
    if (auto slots = dense_slot_count(n, static_cast<std::uint64_t>(p.degree()))) {
      return dense_homogeneous_div(p, q, *slots);
    }
  }
  return sparse_exact_div(p, q);
}

QuotientRemainder divide(const Polynomial& p, const Polynomial& q) {
  check_operands(p, q, "divide");
  const std::size_t n = p.nvars();
  const Term& lead = q.leading_term();
  const Integer lead_abs = abs(lead.coeff);
  const bool lead_negative = lead.coeff < 0;

  TermMap rem;
  for (const auto& t : p.terms()) rem.emplace(t.monomial, t.coeff);
  TermMap quotient;
  std::vector<Term> remainder;  // descending, terms already final up to scaling
  Integer scale = 1;
  Integer g, mult, c;

  auto scale_all = [&](const Integer& f) {
    for (auto& [m, v] : rem) v *= f;
    for (auto& [m, v] : quotient) v *= f;
    for (auto& t : remainder) t.coeff *= f;
    scale *= f;
  };

  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.monomial.divides(it->first)) {
      remainder.push_back({it->first, std::move(it->second)});
      rem.erase(it);
      continue;
    }
    mpz_gcd(g.get_mpz_t(), it->second.get_mpz_t(), lead_abs.get_mpz_t());
    mpz_divexact(mult.get_mpz_t(), lead_abs.get_mpz_t(), g.get_mpz_t());
    // Coefficient of the quotient term after scaling everything by mult.
    mpz_divexact(c.get_mpz_t(), it->second.get_mpz_t(), g.get_mpz_t());
    if (lead_negative) c = -c;
    if (mult != 1) scale_all(mult);
    it = rem.begin();
    Monomial m = it->first / lead.monomial;
    rem.erase(it);
    for (std::size_t k = 1; k < q.size(); ++k) {
      const Term& t = q.terms()[k];
      auto [pos, inserted] = rem.try_emplace(m * t.monomial);
      mpz_submul(pos->second.get_mpz_t(), c.get_mpz_t(), t.coeff.get_mpz_t());
      if (pos->second == 0) rem.erase(pos);
    }
    quotient[m] += c;
  }

  std::vector<Term> qterms;
  qterms.reserve(quotient.size());
  for (auto& [m, v] : quotient) {
    if (v != 0) qterms.push_back({m, std::move(v)});
  }
  return {Polynomial::from_sorted_terms(n, std::move(qterms)), Polynomial::from_sorted_terms(n, std::move(remainder)),
          scale};
}

}  // namespace qasdyn
