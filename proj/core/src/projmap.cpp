#include "qasdyn/projmap.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qasdyn/errors.hpp"

namespace qasdyn {

ProjectivePoint::ProjectivePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {
  Integer g = 0;
  for (const auto& c : coords_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) throw DomainError("projective point with all coordinates zero");
  const auto first = std::find_if(coords_.begin(), coords_.end(), [](const Integer& c) { return c != 0; });
  if (*first < 0) g = -g;
  if (g != 1) {
    for (auto& c : coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

std::string ProjectivePoint::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ':';
    out += coords_[i].get_str();
  }
  return out + "]";
}

std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

HomogeneousMap::HomogeneousMap(std::vector<Polynomial> components) : components_(std::move(components)) {
  const std::size_t n = components_.size();
  if (n == 0) throw StructuralError("map with no components");
  std::optional<long> degree;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = components_[i];
    if (c.nvars() != n) {
      throw StructuralError("component " + std::to_string(i) + " has " + std::to_string(c.nvars()) +
                            " variables; a self-map of P^" + std::to_string(n - 1) + " needs " + std::to_string(n));
    }
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) throw StructuralError("component " + std::to_string(i) + " is not homogeneous");
    if (degree && c.degree() != *degree) {
      throw StructuralError("component " + std::to_string(i) + " has degree " + std::to_string(c.degree()) +
                            ", expected " + std::to_string(*degree));
    }
    degree = c.degree();
  }
  if (!degree) throw StructuralError("every component of the map is zero");
  degree_ = static_cast<unsigned>(*degree);

  Integer g = 0;
  for (const auto& c : components_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.content().get_mpz_t());
  const auto first = std::find_if(components_.begin(), components_.end(), [](const Polynomial& c) { return !c.is_zero(); });
  if (first->leading_coeff() < 0) g = -g;
  if (g != 1) {
    for (auto& c : components_) c = c.divexact(g);
  }
}

HomogeneousMap HomogeneousMap::identity(std::size_t nvars) {
  std::vector<Polynomial> comps;
  comps.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) comps.push_back(Polynomial::variable(nvars, i));
  return HomogeneousMap(std::move(comps));
}

NormalizedLifting normalize_lifting(std::vector<Polynomial> raw) {
  // Validates shape before any gcd work.
  HomogeneousMap checked(raw);
  const std::size_t n = raw.size();
  std::vector<Polynomial> quotients(n, Polynomial(n));
  std::optional<Polynomial> common;
  for (std::size_t j = 0; j < n; ++j) {
    if (raw[j].is_zero()) continue;
    if (!common) {
      common = raw[j];
      quotients[j] = Polynomial::constant(n, 1);
      continue;
    }
    if (common->is_constant()) {
      quotients[j] = raw[j];
      continue;
    }
    GcdResult r = gcd_with_cofactors(*common, raw[j]);
    if (!r.cofactor_p.is_one()) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!quotients[i].is_zero()) quotients[i] = quotients[i] * r.cofactor_p;
      }
    }
    quotients[j] = std::move(r.cofactor_q);
    common = std::move(r.gcd);
  }
  // A single nonzero component is its own common factor.
  Polynomial stripped = canonicalize(*common);
  if (stripped != *common) {
    const Integer scale = common->leading_coeff() / stripped.leading_coeff();
    for (auto& q : quotients) q = q.scaled(scale);
  }
  return {HomogeneousMap(std::move(quotients)), std::move(stripped)};
}

std::vector<Polynomial> compose(const HomogeneousMap& f, const HomogeneousMap& g) {
  if (f.nvars() != g.nvars()) {
    throw StructuralError("compose: maps of P^" + std::to_string(f.nvars() - 1) + " and P^" +
                          std::to_string(g.nvars() - 1));
  }
  return substitute_all(f.components(), g.components());
}

std::vector<Integer> evaluate(const HomogeneousMap& f, std::span<const Integer> x) {
  std::vector<Integer> out;
  out.reserve(f.nvars());
  for (const auto& c : f.components()) out.push_back(evaluate(c, x));
  return out;
}

bool is_indeterminate(const HomogeneousMap& f, const ProjectivePoint& p) {
  for (const auto& c : f.components()) {
    if (evaluate(c, p.coords()) != 0) return false;
  }
  return true;
}

std::optional<ProjectivePoint> apply(const HomogeneousMap& f, const ProjectivePoint& p) {
  auto values = evaluate(f, p.coords());
  if (std::all_of(values.begin(), values.end(), [](const Integer& v) { return v == 0; })) return std::nullopt;
  return ProjectivePoint(std::move(values));
}

std::string to_string(OrbitRecord::End end) {
  switch (end) {
    case OrbitRecord::End::entered_indeterminacy:
      return "entered-indeterminacy";
    case OrbitRecord::End::cycle:
      return "cycle";
    case OrbitRecord::End::horizon:
      return "horizon";
  }
  return "unknown";
}

OrbitRecord point_orbit(const HomogeneousMap& f, const ProjectivePoint& p, std::size_t horizon) {
  if (p.size() != f.nvars()) throw StructuralError("point_orbit: point dimension does not match the map");
  OrbitRecord rec;
  rec.points.push_back(p);
  std::map<ProjectivePoint, std::size_t> seen{{p, 0}};
  for (std::size_t s = 0;; ++s) {
    auto next = apply(f, rec.points[s]);
    if (!next) {
      rec.end = OrbitRecord::End::entered_indeterminacy;
      rec.step = s;
      return rec;
    }
    if (s == horizon) {
      rec.end = OrbitRecord::End::horizon;
      rec.step = s;
      return rec;
    }
    if (auto it = seen.find(*next); it != seen.end()) {
      rec.end = OrbitRecord::End::cycle;
      rec.step = it->second;
      rec.period = s + 1 - it->second;
      return rec;
    }
    seen.emplace(*next, s + 1);
    rec.points.push_back(std::move(*next));
  }
}

Polynomial jacobian_determinant(const HomogeneousMap& f) {
  const std::size_t n = f.nvars();
  std::vector<std::vector<Polynomial>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(partial_derivative(f[i], j));
  }
  // Fraction-free (Bareiss) elimination; every division below is exact.
  bool negate = false;
  Polynomial prev = Polynomial::constant(n, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial(n);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = exact_div(num, prev);
        if (!q) throw std::logic_error("jacobian_determinant: inexact Bareiss step");
        m[i][j] = std::move(*q);
      }
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  if (negate) det = -det;
  return det;
}

}  // namespace qasdyn
