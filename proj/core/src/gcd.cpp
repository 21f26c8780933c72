#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "gcd_detail.hpp"
#include "modular.hpp"
#include "qasdyn/errors.hpp"
#include "qasdyn/polynomial.hpp"

namespace qasdyn {

namespace detail {

std::vector<std::size_t> active_variables(const Polynomial& a, const Polynomial& b) {
  std::vector<bool> seen(a.nvars(), false);
  for (const auto* p : {&a, &b}) {
    for (const auto& t : p->terms()) {
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (t.monomial[i] != 0) seen[i] = true;
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return {};
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(p.degree_in(var)) + 1);
  for (const auto& t : p.terms()) buckets[t.monomial[var]].push_back({t.monomial.with_exponent(var, 0), t.coeff});
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  // Within one bucket the exponent of `var` is shared, so zeroing it keeps
  // the order.
  for (auto& b : buckets) out.push_back(Polynomial::from_sorted_terms(p.nvars(), std::move(b)));
  return out;
}

Polynomial content_in(const Polynomial& p, std::size_t var, GcdFn gcd_fn) {
  Polynomial g(p.nvars());
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? canonicalize(c) : gcd_fn(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

namespace {

Polynomial require(std::optional<Polynomial> q, const char* what) {
  if (!q) throw std::logic_error(std::string(what) + ": expected exact division failed");
  return std::move(*q);
}

Polynomial from_coefficients_in(const std::vector<Polynomial>& coeffs, std::size_t var, std::size_t nvars) {
  Polynomial out(nvars);
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e].is_zero()) continue;
    out += coeffs[e].times_monomial(Monomial(nvars).with_exponent(var, static_cast<Monomial::Exponent>(e)), 1);
  }
  return out;
}

// Polynomials in one distinguished variable with polynomial coefficients,
// ascending, no trailing zeros.
using UPoly = std::vector<Polynomial>;

void trim_upoly(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const std::size_t n = b.size() - 1;
  const std::size_t delta = a.size() - b.size() + 1;
  const Polynomial& lb = b.back();
  std::size_t steps = 0;
  while (a.size() > n) {
    const Polynomial la = a.back();
    const std::size_t shift = a.size() - 1 - n;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) a[i] = a[i] * lb;
    for (std::size_t i = 0; i < n; ++i) a[shift + i] -= la * b[i];
    a.pop_back();
    trim_upoly(a);
    ++steps;
  }
  if (steps < delta) {
    const Polynomial f = pow(lb, static_cast<unsigned>(delta - steps));
    for (auto& c : a) c = c * f;
  }
  return a;
}

}  // namespace

Polynomial gcd_subresultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd: both operands are zero");
  if (a.is_zero()) return canonicalize(b);
  if (b.is_zero()) return canonicalize(a);
  const std::size_t n = a.nvars();
  const auto vars = active_variables(a, b);
  if (vars.empty()) return Polynomial::constant(n, 1);
  const std::size_t v = vars.front();

  const Polynomial ca = content_in(a, v, gcd_subresultant);
  const Polynomial cb = content_in(b, v, gcd_subresultant);
  const Polynomial c = gcd_subresultant(ca, cb);
  const Polynomial pa = require(exact_div(a, ca), "gcd_subresultant");
  const Polynomial pb = require(exact_div(b, cb), "gcd_subresultant");
  if (pa.degree_in(v) == 0 || pb.degree_in(v) == 0) return canonicalize(c);

  UPoly A = coefficients_in(pa, v);
  UPoly B = coefficients_in(pb, v);
  if (A.size() < B.size()) std::swap(A, B);
  Polynomial g = Polynomial::constant(n, 1);
  Polynomial h = Polynomial::constant(n, 1);
  while (true) {
    const std::size_t d = A.size() - B.size();
    UPoly R = pseudo_remainder(A, B);
    if (R.empty()) break;
    if (R.size() == 1) {
      B = {Polynomial::constant(n, 1)};
      break;
    }
    const Polynomial divisor = g * pow(h, static_cast<unsigned>(d));
    for (auto& r : R) r = require(exact_div(r, divisor), "gcd_subresultant");
    A = std::move(B);
    B = std::move(R);
    g = A.back();
    if (d == 1) {
      h = g;
    } else if (d > 1) {
      h = require(exact_div(pow(g, static_cast<unsigned>(d)), pow(h, static_cast<unsigned>(d - 1))),
                  "gcd_subresultant");
    }
  }
  Polynomial G = from_coefficients_in(B, v, n);
  G = require(exact_div(G, content_in(G, v, gcd_subresultant)), "gcd_subresultant");
  return canonicalize(G * c);
}

namespace {

constexpr std::size_t kNoVar = std::numeric_limits<std::size_t>::max();

// Coefficients of x^i y^j at index i * (dy + 1) + j.
struct Dense {
  std::size_t dx = 0;
  std::size_t dy = 0;
  std::vector<Integer> c;
};

Dense to_dense(const Polynomial& p, std::size_t x, std::size_t y) {
  Dense d;
  d.dx = static_cast<std::size_t>(p.degree_in(x));
  d.dy = y == kNoVar ? 0 : static_cast<std::size_t>(p.degree_in(y));
  d.c.resize((d.dx + 1) * (d.dy + 1));
  for (const auto& t : p.terms()) {
    const std::size_t j = y == kNoVar ? 0 : t.monomial[y];
    d.c[t.monomial[x] * (d.dy + 1) + j] = t.coeff;
  }
  return d;
}

// Rows of y-polynomials, one per power of x.
std::vector<ModPoly> reduce_rows(const PrimeField& F, const Dense& d) {
  std::vector<ModPoly> rows(d.dx + 1, ModPoly(d.dy + 1));
  for (std::size_t i = 0; i <= d.dx; ++i) {
    for (std::size_t j = 0; j <= d.dy; ++j) rows[i][j] = F.reduce(d.c[i * (d.dy + 1) + j]);
    trim(rows[i]);
  }
  return rows;
}

struct Image {
  bool coprime = false;
  std::size_t degree = 0;
  std::vector<ModPoly> rows;
};

// gcd(A, B) mod p scaled so that its leading coefficient in x is gamma,
// by evaluation at y = alpha and Newton interpolation.
std::optional<Image> modular_image(const PrimeField& F, const Dense& A, const Dense& B, const ModPoly& gamma,
                                   std::size_t y_points, bool early) {
  const auto Ap = reduce_rows(F, A);
  const auto Bp = reduce_rows(F, B);
  if (Ap.back().empty() || Bp.back().empty() || gamma.empty()) return std::nullopt;

  std::size_t current = std::numeric_limits<std::size_t>::max();
  std::vector<ModPoly> H;
  ModPoly M;
  std::size_t points = 0;
  std::size_t stable = 0;
  ModPoly a(A.dx + 1), b(B.dx + 1);
  // Random points: a fixed sequence can hit the same unlucky alpha for
  // every prime.
  std::mt19937_64 rng(F.modulus());
  std::uniform_int_distribution<std::uint64_t> pick(1, F.modulus() - 1);
  for (std::size_t attempt = 0; attempt < 64 + 4 * y_points; ++attempt) {
    const std::uint64_t alpha = pick(rng);
    if (eval(F, Ap.back(), alpha) == 0 || eval(F, Bp.back(), alpha) == 0) continue;
    if (!M.empty() && eval(F, M, alpha) == 0) continue;
    a.resize(A.dx + 1);
    b.resize(B.dx + 1);
    for (std::size_t i = 0; i <= A.dx; ++i) a[i] = eval(F, Ap[i], alpha);
    for (std::size_t i = 0; i <= B.dx; ++i) b[i] = eval(F, Bp[i], alpha);
    const ModPoly g = monic_gcd(F, a, b);
    const std::size_t e = g.size() - 1;
    if (e == 0) return Image{true, 0, {}};
    if (e > current) continue;
    if (e < current) {
      current = e;
      H.assign(e + 1, ModPoly{});
      M = {1};
      points = 0;
      stable = 0;
    }
    const std::uint64_t s = eval(F, gamma, alpha);
    const std::uint64_t inv = F.inv(eval(F, M, alpha));
    bool changed = false;
    for (std::size_t i = 0; i <= e; ++i) {
      const std::uint64_t diff = F.sub(F.mul(s, g[i]), eval(F, H[i], alpha));
      if (diff == 0) continue;
      changed = true;
      const std::uint64_t k = F.mul(diff, inv);
      if (H[i].size() < M.size()) H[i].resize(M.size(), 0);
      for (std::size_t j = 0; j < M.size(); ++j) H[i][j] = F.add(H[i][j], F.mul(k, M[j]));
      trim(H[i]);
    }
    ModPoly next(M.size() + 1, 0);
    for (std::size_t j = 0; j < M.size(); ++j) {
      next[j + 1] = F.add(next[j + 1], M[j]);
      next[j] = F.sub(next[j], F.mul(alpha, M[j]));
    }
    M = std::move(next);
    ++points;
    stable = (!changed && points > 1) ? stable + 1 : 0;
    if ((early && stable >= 2) || points >= y_points) return Image{false, e, std::move(H)};
  }
  return std::nullopt;
}

Integer symmetric_lift(std::uint64_t r, std::uint64_t p) {
  Integer v;
  mpz_set_ui(v.get_mpz_t(), r);
  if (r > p / 2) v -= Integer(static_cast<unsigned long>(p));
  return v;
}

// Folds an image modulo p into H (known modulo M). True when some
// coefficient moved.
bool crt_combine(std::vector<std::vector<Integer>>& H, const Integer& M, const Image& img, const PrimeField& F) {
  const std::uint64_t p = F.modulus();
  const std::uint64_t inv = F.inv(F.reduce(M));
  const Integer Mp = M * static_cast<unsigned long>(p);
  const Integer half = Mp / 2;
  bool changed = false;
  for (std::size_t i = 0; i < H.size(); ++i) {
    H[i].resize(std::max(H[i].size(), img.rows[i].size()));
    for (std::size_t j = 0; j < H[i].size(); ++j) {
      const std::uint64_t r = j < img.rows[i].size() ? img.rows[i][j] : 0;
      const std::uint64_t t = F.mul(F.sub(r, F.reduce(H[i][j])), inv);
      if (t == 0) continue;
      changed = true;
      mpz_addmul_ui(H[i][j].get_mpz_t(), M.get_mpz_t(), t);
      if (H[i][j] > half) H[i][j] -= Mp;
    }
  }
  return changed;
}

Polynomial from_rows(const std::vector<std::vector<Integer>>& H, std::size_t nvars, std::size_t x, std::size_t y) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < H.size(); ++i) {
    for (std::size_t j = 0; j < H[i].size(); ++j) {
      if (H[i][j] == 0) continue;
      Monomial m = Monomial(nvars).with_exponent(x, static_cast<Monomial::Exponent>(i));
      if (y != kNoVar) m = m.with_exponent(y, static_cast<Monomial::Exponent>(j));
      terms.push_back({std::move(m), H[i][j]});
    }
  }
  return Polynomial::from_terms(nvars, std::move(terms));
}

}  // namespace

Polynomial gcd_modular(const Polynomial& a, const Polynomial& b, const GcdVerifier& verify) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd: both operands are zero");
  auto accept = [&](const Polynomial& g) {
    Polynomial c = canonicalize(g);
    if (!verify(c)) throw std::logic_error("gcd_modular: exact candidate rejected by verification");
    return c;
  };
  if (a.is_zero()) return accept(b);
  if (b.is_zero()) return accept(a);
  const std::size_t n = a.nvars();
  const auto vars = active_variables(a, b);
  if (vars.size() > 2) throw std::logic_error("gcd_modular: more than two active variables");
  if (vars.empty()) return accept(Polynomial::constant(n, 1));
  const std::size_t x = vars[0];
  const std::size_t y = vars.size() == 2 ? vars[1] : kNoVar;

  Polynomial pa = canonicalize(a);
  Polynomial pb = canonicalize(b);
  Polynomial c = Polynomial::constant(n, 1);
  if (y != kNoVar) {
    const Polynomial ca = content_in(pa, x, gcd);
    const Polynomial cb = content_in(pb, x, gcd);
    c = gcd(ca, cb);
    pa = canonicalize(require(exact_div(pa, ca), "gcd_modular"));
    pb = canonicalize(require(exact_div(pb, cb), "gcd_modular"));
  }
  if (pa.degree_in(x) == 0 || pb.degree_in(x) == 0) return accept(c);

  const Dense A = to_dense(pa, x, y);
  const Dense B = to_dense(pb, x, y);
  const Polynomial la = coefficients_in(pa, x).back();
  const Polynomial lb = coefficients_in(pb, x).back();
  Integer icont;
  mpz_gcd(icont.get_mpz_t(), la.content().get_mpz_t(), lb.content().get_mpz_t());
  const Polynomial gamma = gcd(la, lb).scaled(icont);
  std::vector<Integer> gamma_coeffs(y == kNoVar ? 1 : static_cast<std::size_t>(gamma.degree_in(y)) + 1);
  for (const auto& t : gamma.terms()) gamma_coeffs[y == kNoVar ? 0 : t.monomial[y]] = t.coeff;
  const std::size_t y_points = gamma_coeffs.size() + std::min(A.dy, B.dy);

  PrimeSequence primes;
  bool early = true;
  std::optional<std::size_t> degree;
  Integer modulus;
  std::vector<std::vector<Integer>> H;
  while (true) {
    const PrimeField F(primes.next());
    ModPoly gp(gamma_coeffs.size());
    for (std::size_t j = 0; j < gp.size(); ++j) gp[j] = F.reduce(gamma_coeffs[j]);
    trim(gp);
    auto img = modular_image(F, A, B, gp, y_points, early);
    if (!img) continue;
    if (img->coprime) return accept(c);
    if (degree && img->degree > *degree) continue;
    if (!degree || img->degree < *degree) {
      degree = img->degree;
      H.assign(img->rows.size(), {});
      for (std::size_t i = 0; i < H.size(); ++i) {
        for (auto r : img->rows[i]) H[i].push_back(symmetric_lift(r, F.modulus()));
      }
      mpz_set_ui(modulus.get_mpz_t(), F.modulus());
      continue;
    }
    const bool changed = crt_combine(H, modulus, *img, F);
    modulus *= static_cast<unsigned long>(F.modulus());
    if (changed) continue;

    Polynomial candidate = from_rows(H, n, x, y);
    if (y != kNoVar) candidate = require(exact_div(candidate, content_in(candidate, x, gcd)), "gcd_modular");
    candidate = canonicalize(candidate * c);
    if (verify(candidate)) return candidate;
    early = false;
  }
}

}  // namespace detail

namespace {

Polynomial dehomogenize(const Polynomial& p, std::size_t t) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& term : p.terms()) terms.push_back({term.monomial.with_exponent(t, 0), term.coeff});
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

Polynomial homogenize(const Polynomial& p, std::size_t t, std::uint64_t degree) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& term : p.terms()) {
    const auto e = static_cast<Monomial::Exponent>(degree - term.monomial.degree());
    terms.push_back({term.monomial.with_exponent(t, e), term.coeff});
  }
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

// p / t^k; lowering one exponent uniformly keeps the order.
Polynomial strip_power(const Polynomial& p, std::size_t t, Monomial::Exponent k) {
  if (k == 0) return p;
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& term : p.terms()) terms.push_back({term.monomial.with_exponent(t, term.monomial[t] - k), term.coeff});
  return Polynomial::from_sorted_terms(p.nvars(), std::move(terms));
}

Polynomial reduced_gcd(const Polynomial& a, const Polynomial& b, const detail::GcdVerifier& verify) {
  if (detail::active_variables(a, b).size() <= 2) return detail::gcd_modular(a, b, verify);
  Polynomial g = detail::gcd_subresultant(a, b);
  if (!verify(g)) throw std::logic_error("gcd: subresultant result failed verification");
  return g;
}

GcdResult finish(Polynomial g, Polynomial qa, Polynomial qb) {
  Integer c = g.content();
  if (g.leading_coeff() < 0) c = -c;
  if (c != 1) {
    g = g.divexact(c);
    qa = qa.scaled(c);
    qb = qb.scaled(c);
  }
  return {std::move(g), std::move(qa), std::move(qb)};
}

GcdResult gcd_nonzero(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.nvars();
  std::optional<Polynomial> qa, qb;
  Polynomial G(n);
  const auto vars = detail::active_variables(a, b);

  // Homogeneous inputs: strip the last variable t, take the gcd of the
  // dehomogenized parts, rehomogenize and restore the common power of t.
  if (vars.size() >= 2 && a.is_homogeneous() && b.is_homogeneous()) {
    const std::size_t t = vars.back();
    const auto ka = a.min_degree_in(t);
    const auto kb = b.min_degree_in(t);
    const Monomial tk = Monomial(n).with_exponent(t, std::min(ka, kb));
    const Polynomial a0 = dehomogenize(strip_power(a, t, ka), t);
    const Polynomial b0 = dehomogenize(strip_power(b, t, kb), t);
    detail::GcdVerifier verify = [&](const Polynomial& g0) {
      Polynomial cand = homogenize(g0, t, static_cast<std::uint64_t>(g0.degree())).times_monomial(tk, 1);
      qa = exact_div(a, cand);
      if (!qa) return false;
      qb = exact_div(b, cand);
      if (!qb) return false;
      G = std::move(cand);
      return true;
    };
    reduced_gcd(a0, b0, verify);
    return finish(std::move(G), std::move(*qa), std::move(*qb));
  }

  detail::GcdVerifier verify = [&](const Polynomial& g) {
    qa = exact_div(a, g);
    if (!qa) return false;
    qb = exact_div(b, g);
    if (!qb) return false;
    G = g;
    return true;
  };
  reduced_gcd(a, b, verify);
  return finish(std::move(G), std::move(*qa), std::move(*qb));
}

void squarefree_into(const Polynomial& p, std::map<unsigned, Polynomial>& layers) {
  if (p.is_constant()) return;
  const std::size_t v = detail::active_variables(p, p).front();
  const Polynomial cont = detail::content_in(p, v, gcd);
  squarefree_into(cont, layers);

  // Yun's algorithm with respect to v on the primitive part.
  const Polynomial a = detail::require(exact_div(p, cont), "squarefree_decompose");
  const Polynomial da = partial_derivative(a, v);
  const Polynomial c = gcd(a, da);
  Polynomial w = detail::require(exact_div(a, c), "squarefree_decompose");
  Polynomial y = detail::require(exact_div(da, c), "squarefree_decompose");
  Polynomial z = y - partial_derivative(w, v);
  for (unsigned i = 1; !w.is_constant(); ++i) {
    const Polynomial g = z.is_zero() ? canonicalize(w) : gcd(w, z);
    if (!g.is_constant()) {
      auto [it, inserted] = layers.try_emplace(i, g);
      if (!inserted) it->second = it->second * g;
    }
    w = detail::require(exact_div(w, g), "squarefree_decompose");
    y = detail::require(exact_div(z, g), "squarefree_decompose");
    z = y - partial_derivative(w, v);
  }
}

}  // namespace

GcdResult gcd_with_cofactors(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) {
    throw StructuralError("gcd: variable count mismatch (" + std::to_string(p.nvars()) + " vs " +
                          std::to_string(q.nvars()) + ")");
  }
  if (p.is_zero() && q.is_zero()) throw DomainError("gcd: both operands are zero");
  if (p.is_zero() || q.is_zero()) {
    const Polynomial& other = p.is_zero() ? q : p;
    Integer c = other.content();
    if (other.leading_coeff() < 0) c = -c;
    Polynomial g = other.divexact(c);
    Polynomial unit = Polynomial::constant(p.nvars(), c);
    Polynomial zero(p.nvars());
    return p.is_zero() ? GcdResult{std::move(g), zero, unit} : GcdResult{std::move(g), unit, zero};
  }
  return gcd_nonzero(p, q);
}

Polynomial gcd(const Polynomial& p, const Polynomial& q) { return gcd_with_cofactors(p, q).gcd; }

std::vector<SquarefreeFactor> squarefree_decompose(const Polynomial& p) {
  if (p.is_constant()) throw DomainError("squarefree_decompose: constant input");
  std::map<unsigned, Polynomial> layers;
  squarefree_into(canonicalize(p), layers);
  std::vector<SquarefreeFactor> out;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) out.push_back({canonicalize(it->second), it->first});
  return out;
}

}  // namespace qasdyn
