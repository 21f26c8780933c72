#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qasdyn/monomial.hpp"
#include "qasdyn/numeric.hpp"

namespace qasdyn {

struct Term {
  Monomial monomial;
  Integer coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients.
///
/// Terms are stored strictly decreasing in graded-lex order with no zero
/// coefficients, so two polynomials are equal iff their term vectors are.
/// Arithmetic never canonicalizes; call canonicalize() for the
/// content-one, positive-leading-coefficient representative.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Integer& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial from_monomial(const Monomial& m, const Integer& c);
  // Any order, duplicates merged, zeros dropped.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);
  // Caller guarantees strictly decreasing monomials and nonzero coefficients.
  static Polynomial from_sorted_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_.front().monomial.is_one(); }
  bool is_one() const;
  // Total degree; -1 for the zero polynomial.
  long degree() const;
  long degree_in(std::size_t var) const;
  // Smallest exponent of `var` over all terms (0 for the zero polynomial).
  unsigned min_degree_in(std::size_t var) const;
  bool is_homogeneous() const;

  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading_term() const { return terms_.front(); }
  const Integer& leading_coeff() const { return terms_.front().coeff; }

  // Sum of absolute values / largest absolute value of the coefficients.
  Integer norm1() const;
  Integer norm_inf() const;
  Integer content() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);

  Polynomial scaled(const Integer& c) const;
  // Requires every coefficient divisible by c.
  Polynomial divexact(const Integer& c) const;
  Polynomial times_monomial(const Monomial& m, const Integer& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  std::vector<Term> terms_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& p, unsigned exponent);

enum class ArithKind { add, sub, mul };
Polynomial arith(const Polynomial& p, const Polynomial& q, ArithKind kind);

/// Content one and positive leading coefficient (zero stays zero).
Polynomial canonicalize(const Polynomial& p);
bool is_canonical(const Polynomial& p);

/// q * r == p exactly over the integers, or nullopt when q does not divide p.
/// Throws DomainError when q is zero.
std::optional<Polynomial> exact_div(const Polynomial& p, const Polynomial& q);

/// Multivariate division by the single divisor q under graded-lex order,
/// fraction free: scale * p == quotient * q + remainder, where scale is a
/// positive integer and no term of the remainder is divisible by the
/// leading monomial of q. remainder / scale is the normal form of p.
struct QuotientRemainder {
  Polynomial quotient;
  Polynomial remainder;
  Integer scale;
};
QuotientRemainder divide(const Polynomial& p, const Polynomial& q);

/// Canonical greatest common divisor. Throws DomainError when both are zero.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// gcd together with the exact cofactors p / g and q / g (cofactors are
/// not canonicalized; g is).
struct GcdResult {
  Polynomial gcd;
  Polynomial cofactor_p;
  Polynomial cofactor_q;
};
GcdResult gcd_with_cofactors(const Polynomial& p, const Polynomial& q);

struct SquarefreeFactor {
  Polynomial factor;
  unsigned multiplicity;

  friend bool operator==(const SquarefreeFactor&, const SquarefreeFactor&) = default;
};

/// Pairwise coprime canonical square-free layers, highest multiplicity
/// first. Throws DomainError on constant input.
std::vector<SquarefreeFactor> squarefree_decompose(const Polynomial& p);

Integer evaluate(const Polynomial& p, std::span<const Integer> point);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);

/// f(g_0, ..., g_{m-1}) where f has m variables and all g_i share one
/// variable count.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> g);
std::vector<Polynomial> substitute_all(std::span<const Polynomial> fs, std::span<const Polynomial> g);

/// Rendering such as "2*t*z - z^2 - w^2". Missing names fall back to x0, x1...
std::string to_string(const Polynomial& p, std::span<const std::string> names = {});
std::string term_to_string(const Term& t, std::span<const std::string> names = {});

}  // namespace qasdyn
