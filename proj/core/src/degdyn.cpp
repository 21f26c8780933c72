#include "qasdyn/degdyn.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "qasdyn/errors.hpp"
#include "univariate.hpp"

namespace qasdyn {

using detail::QPoly;

std::string to_string(const RecurrenceModel& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.coefficients.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(m.coefficients[i]);
  }
  return out + ")";
}

std::optional<RecurrenceModel> fit_recurrence(std::span<const Integer> sequence) {
  const std::size_t n = sequence.size();
  if (n < 4) throw DomainError("fit_recurrence: need at least 4 terms, got " + std::to_string(n));
  std::vector<Rational> s(sequence.begin(), sequence.end());

  // Berlekamp-Massey over Q.
  std::vector<Rational> c{1}, b{1};
  std::size_t len = 0, shift = 1;
  Rational last = 1;
  for (std::size_t k = 0; k < n; ++k) {
    Rational disc = s[k];
    for (std::size_t i = 1; i <= len; ++i) disc += c[i] * s[k - i];
    if (disc == 0) {
      ++shift;
      continue;
    }
    const Rational factor = disc / last;
    std::vector<Rational> next = c;
    if (next.size() < b.size() + shift) next.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) next[i + shift] -= factor * b[i];
    if (2 * len <= k) {
      b = std::move(c);
      len = k + 1 - len;
      last = disc;
      shift = 1;
    } else {
      ++shift;
    }
    c = std::move(next);
  }
  if (len == 0 || 2 * len > n) return std::nullopt;
  c.resize(len + 1, 0);
  return RecurrenceModel{len, std::move(c), std::vector<Rational>(s.begin(), s.begin() + static_cast<long>(len))};
}

std::optional<QasShape> qas_shape(const RecurrenceModel& m) {
  const auto& c = m.coefficients;
  if (m.order == 0 || c.size() != m.order + 1 || c[0] != 1) return std::nullopt;
  for (const auto& x : c) {
    if (x.get_den() != 1) return std::nullopt;
  }
  const Rational neg_d = -c[1];
  if (neg_d <= 0 || !neg_d.get_num().fits_ulong_p()) return std::nullopt;
  const std::uint64_t d = neg_d.get_num().get_ui();
  if (m.order == 1) return QasShape{d, 0, 0};
  for (std::size_t i = 2; i < m.order; ++i) {
    if (c[i] != 0) return std::nullopt;
  }
  if (c[m.order] <= 0 || !c[m.order].get_num().fits_ulong_p()) return std::nullopt;
  return QasShape{d, c[m.order].get_num().get_ui(), m.order - 1};
}

namespace {

QPoly to_qpoly(const CharPoly& cp) { return QPoly(cp.coefficients.begin(), cp.coefficients.end()); }

// Characteristic polynomial of a fitted model, ascending.
QPoly to_qpoly(const RecurrenceModel& m) {
  QPoly q(m.order + 1);
  for (std::size_t i = 0; i <= m.order; ++i) q[m.order - i] = m.coefficients[i];
  detail::trim(q);
  return q;
}

bool is_algebraically_stable(const CharPoly& cp) { return cp.n0 == 0; }

Rational root_bound(const CharPoly& cp) { return Rational(Integer(static_cast<unsigned long>(cp.d + cp.h))); }

}  // namespace

std::string to_string(const CharPoly& p) {
  std::string out;
  for (std::size_t i = p.coefficients.size(); i-- > 0;) {
    const Integer& c = p.coefficients[i];
    if (c == 0) continue;
    const Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const std::string power = i == 0 ? "" : i == 1 ? "s" : "s^" + std::to_string(i);
    if (mag != 1 || i == 0) {
      out += mag.get_str();
      if (i > 0) out += "*";
    }
    out += power;
  }
  return out.empty() ? "0" : out;
}

std::string to_string(CharPoly::FitCheck c) {
  switch (c) {
    case CharPoly::FitCheck::not_checked:
      return "not-checked";
    case CharPoly::FitCheck::matches:
      return "matches";
    case CharPoly::FitCheck::divides:
      return "divides";
    case CharPoly::FitCheck::incompatible:
      return "incompatible";
  }
  return "unknown";
}

CharPoly build_charpoly(std::uint64_t d, std::uint64_t h, std::uint64_t n0) {
  if (d < 1) throw DomainError("build_charpoly: d must be at least 1");
  if ((h == 0) != (n0 == 0)) throw DomainError("build_charpoly: h and n0 must both be positive or both zero");
  CharPoly cp{d, h, n0, std::vector<Integer>(n0 + 2, 0)};
  cp.coefficients[0] += Integer(static_cast<unsigned long>(h));
  cp.coefficients[n0] -= Integer(static_cast<unsigned long>(d));
  cp.coefficients[n0 + 1] = 1;
  return cp;
}

CharPoly build_charpoly(std::uint64_t d, std::uint64_t h, std::uint64_t n0, const RecurrenceModel& fit) {
  CharPoly cp = build_charpoly(d, h, n0);
  const QPoly p = to_qpoly(cp);
  const QPoly q = to_qpoly(fit);
  if (q == p) {
    cp.fit_check = CharPoly::FitCheck::matches;
  } else if (detail::degree(q) >= 1 && detail::rem(p, q).empty()) {
    cp.fit_check = CharPoly::FitCheck::divides;
  } else {
    cp.fit_check = CharPoly::FitCheck::incompatible;
  }
  return cp;
}

std::string to_string(RootCase c) {
  switch (c) {
    case RootCase::distinct_roots:
      return "distinct-roots";
    case RootCase::double_root:
      return "double-root";
    case RootCase::complex_dominant:
      return "complex-dominant";
  }
  return "unknown";
}

// ---- Q(sqrt D) ----

namespace {

QuadNum fold(QuadNum q) {
  if (q.radicand == 1) {
    q.a += q.b;
    q.b = 0;
  }
  if (q.b == 0) q.radicand = 1;
  return q;
}

Integer common_radicand(const QuadNum& x, const QuadNum& y) {
  if (x.b == 0) return y.radicand;
  if (y.b == 0) return x.radicand;
  if (x.radicand != y.radicand) throw std::logic_error("QuadNum: mixed radicands");
  return x.radicand;
}

}  // namespace

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
  return fold({x.a + y.a, x.b + y.b, common_radicand(x, y)});
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) {
  return fold({x.a - y.a, x.b - y.b, common_radicand(x, y)});
}

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
  const Integer r = common_radicand(x, y);
  return fold({x.a * y.a + x.b * y.b * r, x.a * y.b + x.b * y.a, r});
}

QuadNum operator/(const QuadNum& x, const QuadNum& y) {
  const Integer r = common_radicand(x, y);
  const Rational norm = y.a * y.a - y.b * y.b * r;
  if (norm == 0) throw DomainError("QuadNum: division by zero");
  const QuadNum conj{y.a, -y.b, r};
  QuadNum num = x * conj;
  return fold({num.a / norm, num.b / norm, r});
}

std::string to_string(const QuadNum& q) {
  if (q.b == 0) return to_string(q.a);
  std::string out = q.a == 0 ? "" : to_string(q.a) + (q.b < 0 ? " - " : " + ");
  const Rational mag = q.a == 0 ? q.b : abs(q.b);
  if (mag == -1) {
    out += "-";
  } else if (mag != 1) {
    out += to_string(mag) + "*";
  }
  return out + "sqrt(" + q.radicand.get_str() + ")";
}

QuadNum evaluate(const ExactClosedForm& form, std::uint64_t n) {
  QuadNum total{0, 0, form.radicand};
  for (std::size_t j = 0; j < form.roots.size(); ++j) {
    QuadNum poly{0, 0, form.radicand};
    QuadNum npow{1, 0, form.radicand};
    for (const auto& c : form.coefficients[j]) {
      poly = poly + c * npow;
      npow = npow * QuadNum{Rational(Integer(static_cast<unsigned long>(n))), 0, 1};
    }
    QuadNum p{1, 0, form.radicand};
    for (std::uint64_t k = 0; k < n; ++k) p = p * form.roots[j];
    total = total + poly * p;
  }
  return total;
}

// ---- root isolation ----

Rational default_tolerance() { return make_rational(1, ipow(10, 12)); }

namespace {

// Largest root of p in (0, bound] to width tol; nullopt when there is none.
std::optional<RootEnclosure> isolate_largest(const QPoly& p, const Rational& bound, const Rational& tol) {
  if (tol <= 0) throw DomainError("dominant_root: tolerance must be positive");
  const QPoly s = detail::squarefree_part(p);
  const auto chain = detail::sturm_chain(s);
  if (detail::count_roots(chain, 0, bound) == 0) return std::nullopt;
  Rational lo = 0, hi = bound;
  // Invariant: the largest root lies in (lo, hi] and none lies in (hi, bound].
  while (hi - lo > tol || detail::count_roots(chain, lo, hi) > 1) {
    const Rational mid = (lo + hi) / 2;
    if (detail::count_roots(chain, mid, hi) >= 1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  RootEnclosure e;
  e.bound = bound;
  const Rational guess = detail::simplest_between(lo, hi);
  if (detail::sign_at(s, hi) == 0) {
    e.exact = hi;
  } else if (guess > lo && detail::sign_at(s, guess) == 0) {
    e.exact = guess;
  }
  if (e.exact) {
    e.lo = e.hi = *e.exact;
  } else {
    e.lo = lo;
    e.hi = hi;
  }
  e.sign_lo = detail::sign_at(p, e.lo);
  e.sign_hi = detail::sign_at(p, e.hi);
  e.no_root_above = detail::count_roots(chain, e.hi, bound) == 0 &&
                    (e.exact || detail::sign_at(p, e.hi) == detail::sign_at(p, bound));
  return e;
}

bool has_double_root(const CharPoly& cp) {
  // h (n0+1)^(n0+1) == d^(n0+1) n0^n0
  const Integer d(static_cast<unsigned long>(cp.d));
  const Integer lhs = Integer(static_cast<unsigned long>(cp.h)) * ipow(Integer(static_cast<unsigned long>(cp.n0 + 1)), cp.n0 + 1);
  const Integer rhs = ipow(d, cp.n0 + 1) * ipow(Integer(static_cast<unsigned long>(cp.n0)), cp.n0);
  return lhs == rhs;
}

Rational double_root_value(const CharPoly& cp) {
  return make_rational(Integer(static_cast<unsigned long>(cp.d)) * static_cast<unsigned long>(cp.n0),
                       Integer(static_cast<unsigned long>(cp.n0 + 1)));
}

}  // namespace

RootEnclosure dominant_root(const CharPoly& cp, const Rational& tol) {
  if (tol <= 0) throw DomainError("dominant_root: tolerance must be positive");
  const QPoly p = to_qpoly(cp);
  if (!is_algebraically_stable(cp) && has_double_root(cp)) {
    const Rational r = double_root_value(cp);
    RootEnclosure e;
    e.exact = r;
    e.lo = e.hi = r;
    e.bound = root_bound(cp);
    const auto chain = detail::sturm_chain(detail::squarefree_part(p));
    e.no_root_above = detail::count_roots(chain, r, e.bound) == 0;
    return e;
  }
  auto e = isolate_largest(p, root_bound(cp), tol);
  if (!e) throw DomainError("dominant_root: " + to_string(cp) + " has no positive real root");
  return *e;
}

std::optional<RootEnclosure> dominant_root(const RecurrenceModel& m, const Rational& tol) {
  const QPoly q = to_qpoly(m);
  if (detail::degree(q) < 1) return std::nullopt;
  return isolate_largest(q, detail::cauchy_bound(q), tol);
}

bool verify_enclosure(const CharPoly& cp, const RootEnclosure& e) {
  const QPoly p = to_qpoly(cp);
  const Rational bound = root_bound(cp);
  const auto chain = detail::sturm_chain(detail::squarefree_part(p));
  if (e.exact) return detail::sign_at(p, *e.exact) == 0 && detail::count_roots(chain, *e.exact, bound) == 0;
  if (!(e.lo < e.hi)) return false;
  const int slo = detail::sign_at(p, e.lo);
  const int shi = detail::sign_at(p, e.hi);
  return slo * shi < 0 && detail::count_roots(chain, e.hi, bound) == 0 && shi == detail::sign_at(p, bound);
}

// ---- closed forms ----

namespace {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_100;
using Complex = mp::cpp_complex_100;

constexpr unsigned kDigits = 64;

Real to_real(const Rational& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

std::string decimal(const Real& x) { return x.str(kDigits, std::ios_base::scientific); }

// Exact QAS seeds d^0 .. d^n0 extended by the recurrence through n.
std::vector<Integer> qas_sequence(const CharPoly& cp, std::size_t count) {
  std::vector<Integer> s;
  const Integer d(static_cast<unsigned long>(cp.d));
  const Integer h(static_cast<unsigned long>(cp.h));
  for (std::size_t n = 0; n < count; ++n) {
    if (n <= cp.n0) {
      s.push_back(ipow(d, n));
    } else {
      s.push_back(d * s[n - 1] - h * s[n - cp.n0 - 1]);
    }
  }
  return s;
}

Complex eval(const std::vector<Complex>& p, const Complex& x) {
  Complex v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

// Aberth-Ehrlich on a squarefree polynomial with real coefficients.
std::vector<Complex> all_roots(const QPoly& q) {
  const std::size_t n = static_cast<std::size_t>(detail::degree(q));
  std::vector<Complex> p, dp;
  for (const auto& c : q) p.emplace_back(to_real(c));
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * Real(i));
  const Real radius = to_real(detail::cauchy_bound(q)) / 2;
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real angle = 2 * boost::math::constants::pi<Real>() * (Real(k) + Real(0.25)) / Real(n);
    z[k] = Complex(radius * mp::cos(angle), radius * mp::sin(angle));
  }
  const Real eps = Real("1e-95");
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ratio = eval(p, z[k]) / eval(dp, z[k]);
      Complex sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += Complex(1) / (z[k] - z[j]);
      }
      const Complex step = ratio / (Complex(1) - ratio * sum);
      z[k] -= step;
      worst = std::max<Real>(worst, mp::abs(step));
    }
    if (worst < eps) break;
  }
  return z;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
std::vector<Complex> solve(std::vector<std::vector<Complex>> a, std::vector<Complex> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (mp::abs(a[r][col]) > mp::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex v = b[i];
    for (std::size_t c = i + 1; c < n; ++c) v -= a[i][c] * x[c];
    x[i] = v / a[i][i];
  }
  return x;
}

Complex value_at(const std::vector<Complex>& roots, const std::vector<unsigned>& mult,
                 const std::vector<std::vector<Complex>>& coeffs, std::size_t n) {
  Complex total = 0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    Complex poly = 0, npow = 1;
    for (unsigned k = 0; k < mult[j]; ++k) {
      poly += coeffs[j][k] * npow;
      npow *= Real(n);
    }
    total += poly * mp::pow(roots[j], static_cast<int>(n));
  }
  return total;
}

NumericClosedForm numeric_form(const CharPoly& cp, const std::optional<Rational>& double_root) {
  QPoly rest = to_qpoly(cp);
  std::vector<Complex> roots;
  std::vector<unsigned> mult;
  if (double_root) {
    const QPoly factor{*double_root * *double_root, -2 * *double_root, 1};
    rest = detail::quo(rest, factor);
    roots.emplace_back(to_real(*double_root));
    mult.push_back(2);
  }
  if (detail::degree(rest) >= 1) {
    for (auto& r : all_roots(rest)) {
      roots.push_back(r);
      mult.push_back(1);
    }
  }
  // Rows n = 0 .. n0, columns n^k sigma_j^n.
  const std::size_t m = cp.n0 + 1;
  const auto seq = qas_sequence(cp, 21);
  std::vector<std::vector<Complex>> a(m);
  std::vector<Complex> b(m);
  for (std::size_t n = 0; n < m; ++n) {
    for (std::size_t j = 0; j < roots.size(); ++j) {
      Complex npow = 1;
      for (unsigned k = 0; k < mult[j]; ++k) {
        a[n].push_back(npow * mp::pow(roots[j], static_cast<int>(n)));
        npow *= Real(n);
      }
    }
    b[n] = Complex(Real(seq[n].get_str()));
  }
  const auto x = solve(a, b);
  std::vector<std::vector<Complex>> coeffs;
  std::size_t at = 0;
  for (unsigned mj : mult) {
    coeffs.emplace_back(x.begin() + static_cast<long>(at), x.begin() + static_cast<long>(at + mj));
    at += mj;
  }
  Real err = 0;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    err = std::max<Real>(err, mp::abs(value_at(roots, mult, coeffs, n) - Complex(Real(seq[n].get_str()))));
  }

  NumericClosedForm out;
  out.digits = kDigits;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    NumericClosedForm::Root r{decimal(roots[j].real()), decimal(roots[j].imag()), mult[j], {}};
    for (const auto& c : coeffs[j]) r.coefficients.emplace_back(decimal(c.real()), decimal(c.imag()));
    out.roots.push_back(std::move(r));
  }
  out.max_error = err.str(3, std::ios_base::scientific);
  return out;
}

Real max_modulus(const CharPoly& cp) {
  Real best = 0;
  for (const auto& r : all_roots(detail::squarefree_part(to_qpoly(cp)))) best = std::max<Real>(best, mp::abs(r));
  return best;
}

// D = f^2 * core with core squarefree.
std::pair<Integer, Integer> split_square(const Integer& D) {
  Integer core = abs(D), f = 1;
  for (Integer p = 2; p * p <= core; ++p) {
    while (core % (p * p) == 0) {
      core /= p * p;
      f *= p;
    }
  }
  return {f, D < 0 ? Integer(-core) : core};
}

ExactClosedForm quadratic_form(const CharPoly& cp) {
  // n0 = 1: s^2 - d s + h with seeds 1, d.
  const Rational d(Integer(static_cast<unsigned long>(cp.d)));
  const Rational h(Integer(static_cast<unsigned long>(cp.h)));
  ExactClosedForm form;
  if (has_double_root(cp)) {
    // d(f^n) = (1 + n) (d/2)^n
    form.roots = {QuadNum{d / 2, 0, 1}};
    form.coefficients = {{QuadNum{1, 0, 1}, QuadNum{1, 0, 1}}};
    return form;
  }
  const Integer D = Rational(d * d - 4 * h).get_num();
  const auto [f, core] = split_square(D);
  form.radicand = core;
  const QuadNum s1 = fold({d / 2, Rational(f) / 2, core});
  const QuadNum s2 = fold({d / 2, -Rational(f) / 2, core});
  const QuadNum dd{d, 0, 1};
  const QuadNum one{1, 0, 1};
  const QuadNum c1 = (dd - s2) / (s1 - s2);
  form.radicand = core == 1 ? Integer(1) : core;
  form.roots = {s1, s2};
  form.coefficients = {{c1}, {one - c1}};
  return form;
}

}  // namespace

std::vector<Integer> evaluate_rounded(const NumericClosedForm& form, std::size_t count) {
  std::vector<Complex> roots;
  std::vector<unsigned> mult;
  std::vector<std::vector<Complex>> coeffs;
  for (const auto& r : form.roots) {
    roots.emplace_back(Real(r.re), Real(r.im));
    mult.push_back(r.multiplicity);
    coeffs.emplace_back();
    for (const auto& [re, im] : r.coefficients) coeffs.back().emplace_back(Real(re), Real(im));
  }
  std::vector<Integer> out;
  for (std::size_t n = 0; n < count; ++n) {
    const Real v = mp::round(value_at(roots, mult, coeffs, n).real());
    out.emplace_back(static_cast<mp::cpp_int>(v).str());
  }
  return out;
}

RootAnalysis classify_roots(const CharPoly& cp, const Rational& tol) {
  RootAnalysis ra;
  if (is_algebraically_stable(cp)) {
    ra.kind = RootCase::distinct_roots;
    ra.dominant = dominant_root(cp, tol);
    const Rational d(Integer(static_cast<unsigned long>(cp.d)));
    ra.exact_form = ExactClosedForm{1, {QuadNum{d, 0, 1}}, {{QuadNum{1, 0, 1}}}};
    return ra;
  }
  if (has_double_root(cp)) {
    ra.kind = RootCase::double_root;
    ra.double_root = double_root_value(cp);
    ra.dominant = dominant_root(cp, tol);
  } else {
    ra.dominant = isolate_largest(to_qpoly(cp), root_bound(cp), tol);
    if (!ra.dominant) {
      ra.kind = RootCase::complex_dominant;
      ra.dominant_modulus = max_modulus(cp).str(20, std::ios_base::scientific);
      ra.diagnostic = "no real dominant root of QAS shape; dominant modulus " + ra.dominant_modulus;
    }
  }
  if (cp.n0 == 1) {
    ra.exact_form = quadratic_form(cp);
  } else {
    ra.numeric_form = numeric_form(cp, ra.double_root);
  }
  return ra;
}

// ---- sequences ----

Extension extend_and_ratio(const RecurrenceModel& m, std::size_t N) {
  if (N < m.order) {
    throw DomainError("extend_and_ratio: N = " + std::to_string(N) + " is below the order " + std::to_string(m.order));
  }
  Extension ext;
  ext.terms.assign(m.seed.begin(), m.seed.end());
  while (ext.terms.size() <= N) {
    const std::size_t n = ext.terms.size();
    Rational v = 0;
    for (std::size_t i = 1; i <= m.order; ++i) v -= m.coefficients[i] * ext.terms[n - i];
    ext.terms.push_back(v);
  }
  ext.terms.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    if (ext.terms[n] <= 0) {
      ext.first_non_positive = n;
      break;
    }
  }
  if (N >= 1 && ext.terms[N - 1] != 0) ext.ratio = ext.terms[N] / ext.terms[N - 1];
  return ext;
}

Prediction predict_degrees(const RecurrenceModel& m, const IterationLedger& ledger) {
  if (ledger.steps.empty()) throw DomainError("predict_degrees: empty ledger");
  const std::size_t last = ledger.steps.size() - 1;
  const auto ext = extend_and_ratio(m, std::max(last, m.order));
  Prediction p;
  for (std::size_t n = 0; n <= last; ++n) {
    const Rational actual(Integer(static_cast<unsigned long>(ledger.steps[n].degree)));
    if (ext.terms[n] != actual) {
      return {false, n, ext.terms[n], actual};
    }
  }
  return p;
}

Rational ratio_distance(const Rational& ratio, const RootEnclosure& lambda) {
  if (lambda.exact) return abs(ratio - *lambda.exact);
  return std::max<Rational>(abs(ratio - lambda.lo), abs(ratio - lambda.hi));
}

// ---- aggregate ----

RecurrenceModel qas_model(const CharPoly& cp) {
  RecurrenceModel m;
  m.order = cp.coefficients.size() - 1;
  for (auto it = cp.coefficients.rbegin(); it != cp.coefficients.rend(); ++it) m.coefficients.emplace_back(*it);
  for (const auto& s : qas_sequence(cp, m.order)) m.seed.emplace_back(s);
  return m;
}

std::string to_string(LambdaBasis b) {
  switch (b) {
    case LambdaBasis::qas:
      return "qas";
    case LambdaBasis::algebraically_stable:
      return "algebraically-stable";
    case LambdaBasis::qas_hypothesis:
      return "qas-hypothesis";
    case LambdaBasis::observational:
      return "observational";
  }
  return "unknown";
}

namespace {

void add_ratio_check(DynamicalDegreeReport& r, const RecurrenceModel& m, std::size_t ratio_n) {
  const auto ext = extend_and_ratio(m, std::max(ratio_n, m.order));
  if (ext.first_non_positive) {
    r.flags.push_back("extended sequence has a non-positive term at n=" + std::to_string(*ext.first_non_positive));
  }
  if (ext.ratio && r.lambda1) {
    r.ratio_check = RatioCheck{std::max(ratio_n, m.order), *ext.ratio, ratio_distance(*ext.ratio, *r.lambda1)};
  }
}

}  // namespace

DynamicalDegreeReport degree_dynamics(std::span<const std::uint64_t> degrees, const std::optional<QasShape>& shape,
                                      LambdaBasis basis, const Rational& tol, std::size_t ratio_n) {
  DynamicalDegreeReport r;
  r.basis = basis;
  std::vector<Integer> seq;
  for (auto d : degrees) seq.emplace_back(static_cast<unsigned long>(d));
  if (seq.size() >= 4) {
    r.fit = fit_recurrence(seq);
    if (!r.fit) r.flags.push_back("no linear recurrence of order <= " + std::to_string(seq.size() / 2) + " fits");
  } else {
    r.flags.push_back("only " + std::to_string(seq.size()) + " degrees; no recurrence fitted");
  }

  std::optional<QasShape> use = shape;
  if (!use && r.fit) {
    use = qas_shape(*r.fit);
    if (use) r.flags.push_back("QAS shape read off the fitted recurrence");
  }

  if (use) {
    r.charpoly = r.fit ? build_charpoly(use->d, use->h, use->n0, *r.fit) : build_charpoly(use->d, use->h, use->n0);
    if (r.charpoly->fit_check == CharPoly::FitCheck::incompatible) {
      r.flags.push_back("fitted recurrence " + to_string(*r.fit) + " is incompatible with " + to_string(*r.charpoly));
    }
    r.roots = classify_roots(*r.charpoly, tol);
    if (!r.roots->diagnostic.empty()) r.flags.push_back(r.roots->diagnostic);
    r.lambda1 = r.roots->dominant;
    r.algebraic_integer = r.lambda1.has_value();
    const RecurrenceModel model = qas_model(*r.charpoly);
    const auto ext = extend_and_ratio(model, std::max(model.order, seq.empty() ? 0 : seq.size() - 1));
    for (std::size_t n = 0; n < seq.size(); ++n) {
      if (ext.terms[n] != Rational(seq[n])) {
        r.flags.push_back("degree at n=" + std::to_string(n) + " is " + seq[n].get_str() + ", the model predicts " +
                          to_string(ext.terms[n]));
        break;
      }
    }
    add_ratio_check(r, model, ratio_n);
    return r;
  }

  r.basis = LambdaBasis::observational;
  if (r.fit) {
    r.lambda1 = dominant_root(*r.fit, tol);
    if (!r.lambda1) r.flags.push_back("fitted recurrence has no positive real root");
    r.algebraic_integer = r.lambda1 && std::all_of(r.fit->coefficients.begin(), r.fit->coefficients.end(),
                                                   [](const Rational& c) { return c.get_den() == 1; });
    r.flags.push_back("lambda_1 is observational: the fit is not backed by a certified structure");
    add_ratio_check(r, *r.fit, ratio_n);
  }
  return r;
}

}  // namespace qasdyn
