#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qasdyn/iteration.hpp"
#include "qasdyn/numeric.hpp"

namespace qasdyn {

/// sum_{i=0..order} coefficients[i] * s_{n-i} = 0 for n >= order, with
/// coefficients[0] = 1; seed holds s_0 .. s_{order-1}.
struct RecurrenceModel {
  std::size_t order = 0;
  std::vector<Rational> coefficients;
  std::vector<Rational> seed;

  friend bool operator==(const RecurrenceModel&, const RecurrenceModel&) = default;
};

std::string to_string(const RecurrenceModel& m);

/// Minimal linear recurrence over Q (Berlekamp-Massey). nullopt when the
/// shortest recurrence has order > size/2 or the sequence is all zero.
/// Throws DomainError on fewer than four terms.
std::optional<RecurrenceModel> fit_recurrence(std::span<const Integer> sequence);

/// (d, h, n0) when the model reads (1, -d, 0, ..., 0, h) with integers
/// d, h >= 1; (d, 0, 0) for the order-one model (1, -d).
struct QasShape {
  std::uint64_t d = 0;
  std::uint64_t h = 0;
  std::uint64_t n0 = 0;
};
std::optional<QasShape> qas_shape(const RecurrenceModel& m);

/// P(s) = s^(n0+1) - d s^n0 + h; the algebraically stable form s - d is
/// n0 = h = 0.
struct CharPoly {
  std::uint64_t d = 0;
  std::uint64_t h = 0;
  std::uint64_t n0 = 0;
  std::vector<Integer> coefficients;  // ascending powers, monic

  // Set by build_charpoly when a fitted model is supplied.
  enum class FitCheck { not_checked, matches, divides, incompatible };
  FitCheck fit_check = FitCheck::not_checked;
};

std::string to_string(const CharPoly& p);
std::string to_string(CharPoly::FitCheck c);

/// Throws DomainError unless d >= 1 and either h, n0 >= 1 or h = n0 = 0.
CharPoly build_charpoly(std::uint64_t d, std::uint64_t h, std::uint64_t n0);
/// As above, cross-validated against a fitted model: `divides` when the
/// fitted characteristic polynomial is a proper factor of P.
CharPoly build_charpoly(std::uint64_t d, std::uint64_t h, std::uint64_t n0, const RecurrenceModel& fit);

/// Exact rational root, or an interval (lo, hi] holding the largest real
/// root of a polynomial with no real root in (hi, bound].
struct RootEnclosure {
  std::optional<Rational> exact;
  Rational lo;
  Rational hi;
  Rational bound;
  int sign_lo = 0;  // sign of the polynomial at lo / hi
  int sign_hi = 0;
  bool no_root_above = false;  // Sturm count on (hi, bound] is zero

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return exact ? *exact == x : lo <= x && x <= hi; }
};

enum class RootCase { distinct_roots, double_root, complex_dominant };
std::string to_string(RootCase c);

/// a + b sqrt(radicand), radicand squarefree (1 means b is ignored).
struct QuadNum {
  Rational a;
  Rational b;
  Integer radicand = 1;

  friend bool operator==(const QuadNum&, const QuadNum&) = default;
};
QuadNum operator+(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x, const QuadNum& y);
QuadNum operator*(const QuadNum& x, const QuadNum& y);
QuadNum operator/(const QuadNum& x, const QuadNum& y);
std::string to_string(const QuadNum& q);

/// d(f^n) = sum_j P_j(n) sigma_j^n. ExactClosedForm lives in Q(sqrt D);
/// coefficients[j] are the ascending coefficients of P_j.
struct ExactClosedForm {
  Integer radicand = 1;
  std::vector<QuadNum> roots;
  std::vector<std::vector<QuadNum>> coefficients;
};
QuadNum evaluate(const ExactClosedForm& form, std::uint64_t n);

struct NumericClosedForm {
  unsigned digits = 64;
  struct Root {
    std::string re;
    std::string im;
    unsigned multiplicity = 1;
    std::vector<std::pair<std::string, std::string>> coefficients;  // (re, im), ascending in n
  };
  std::vector<Root> roots;
  std::string max_error;  // over n = 0..20 against the exact sequence
};
/// Rounded real part of the closed form at n = 0..count-1.
std::vector<Integer> evaluate_rounded(const NumericClosedForm& form, std::size_t count);

struct RootAnalysis {
  RootCase kind = RootCase::distinct_roots;
  std::optional<Rational> double_root;  // d n0 / (n0 + 1)
  std::optional<RootEnclosure> dominant;
  std::string dominant_modulus;  // decimal, complex case
  std::string diagnostic;
  std::optional<ExactClosedForm> exact_form;
  std::optional<NumericClosedForm> numeric_form;
};

Rational default_tolerance();  // 10^-12

/// Largest positive real root of P. Throws DomainError when tol <= 0 or
/// P has no positive real root.
RootEnclosure dominant_root(const CharPoly& cp, const Rational& tol = default_tolerance());

RootAnalysis classify_roots(const CharPoly& cp, const Rational& tol = default_tolerance());

/// Largest positive real root of the characteristic polynomial of a
/// fitted model (observational; the model need not have QAS shape).
std::optional<RootEnclosure> dominant_root(const RecurrenceModel& m, const Rational& tol = default_tolerance());

/// Re-checks the sign certificate of an enclosure against P by exact
/// evaluation and a fresh Sturm count.
bool verify_enclosure(const CharPoly& cp, const RootEnclosure& e);

struct Extension {
  std::vector<Rational> terms;  // s_0 .. s_N
  std::optional<Rational> ratio;  // s_N / s_{N-1}
  std::optional<std::size_t> first_non_positive;
};
/// Throws DomainError when N < order.
Extension extend_and_ratio(const RecurrenceModel& m, std::size_t N);

struct Prediction {
  bool ok = true;
  std::optional<std::size_t> first_mismatch;
  Rational predicted;
  Rational actual;
};
Prediction predict_degrees(const RecurrenceModel& m, const IterationLedger& ledger);

/// Decimal upper bound on |ratio - lambda| over the enclosure.
Rational ratio_distance(const Rational& ratio, const RootEnclosure& lambda);

/// Order n0 + 1 model with characteristic polynomial P and seeds
/// d^0 .. d^n0.
RecurrenceModel qas_model(const CharPoly& cp);

/// What lambda_1 rests on: a certified QAS structure, algebraic stability
/// through the horizon, an unconfirmed QAS hypothesis, or only a fit.
enum class LambdaBasis { qas, algebraically_stable, qas_hypothesis, observational };
std::string to_string(LambdaBasis b);

struct RatioCheck {
  std::size_t n = 0;
  Rational ratio;     // s_n / s_{n-1} of the extended model
  Rational distance;  // ratio_distance against lambda_1
};

struct DynamicalDegreeReport {
  LambdaBasis basis = LambdaBasis::observational;
  std::optional<RecurrenceModel> fit;
  std::optional<CharPoly> charpoly;
  std::optional<RootAnalysis> roots;
  std::optional<RootEnclosure> lambda1;
  bool algebraic_integer = false;  // lambda_1 is a root of a monic integer polynomial
  std::optional<RatioCheck> ratio_check;
  std::vector<std::string> flags;
};

/// Fits the observed degrees d_0, d_1, ... and, with a shape, builds and
/// analyses P. Without a shape lambda_1 comes from the fit alone.
DynamicalDegreeReport degree_dynamics(std::span<const std::uint64_t> degrees, const std::optional<QasShape>& shape,
                                      LambdaBasis basis, const Rational& tol = default_tolerance(),
                                      std::size_t ratio_n = 60);

}  // namespace qasdyn
