#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qasdyn/polynomial.hpp"

namespace qasdyn {

/// Rational point of P^k stored as its canonical integer representative:
/// collective gcd 1, first nonzero coordinate positive.
class ProjectivePoint {
 public:
  // Throws DomainError when every coordinate is zero.
  explicit ProjectivePoint(std::vector<Integer> coords);

  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  // "[1:-1:0]"
  std::string to_string() const;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b);

 private:
  std::vector<Integer> coords_;
};

/// Lifting F = (F_0, ..., F_k) of a rational self-map of P^k: k+1
/// homogeneous components of one degree in k+1 variables, jointly scaled
/// (collective content 1, first nonzero leading coefficient positive).
/// Whether the components share a factor is not checked here; use
/// normalize_lifting for that.
class HomogeneousMap {
 public:
  // Throws StructuralError on a wrong component count, inhomogeneous or
  // degree-mismatched components, or when every component is zero.
  explicit HomogeneousMap(std::vector<Polynomial> components);

  static HomogeneousMap identity(std::size_t nvars);

  std::size_t nvars() const { return components_.size(); }
  unsigned degree() const { return degree_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }

  friend bool operator==(const HomogeneousMap&, const HomogeneousMap&) = default;

 private:
  std::vector<Polynomial> components_;
  unsigned degree_ = 0;
};

struct NormalizedLifting {
  HomogeneousMap map;
  Polynomial stripped;  // canonical common factor that was removed
};

/// Removes the gcd of the components. stripped * map equals raw up to a
/// nonzero scalar (the sign of a raw composition carries no meaning).
NormalizedLifting normalize_lifting(std::vector<Polynomial> raw);

/// Raw components of f o g, i.e. f_i(g_0, ..., g_k); degree d(f) d(g).
std::vector<Polynomial> compose(const HomogeneousMap& f, const HomogeneousMap& g);

/// Component values F(x) at an integer vector.
std::vector<Integer> evaluate(const HomogeneousMap& f, std::span<const Integer> x);

bool is_indeterminate(const HomogeneousMap& f, const ProjectivePoint& p);

/// f(p), or nullopt when p lies in the indeterminacy locus.
std::optional<ProjectivePoint> apply(const HomogeneousMap& f, const ProjectivePoint& p);

struct OrbitRecord {
  enum class End { entered_indeterminacy, cycle, horizon };

  std::vector<ProjectivePoint> points;  // points[0] is the start
  End end = End::horizon;
  // entered_indeterminacy: index of the first indeterminate point.
  // cycle: index where the cycle is entered; period is its length.
  std::size_t step = 0;
  std::size_t period = 0;
};

std::string to_string(OrbitRecord::End end);

/// Iterates p forward at most `horizon` times.
OrbitRecord point_orbit(const HomogeneousMap& f, const ProjectivePoint& p, std::size_t horizon);

/// Canonical determinant of the Jacobian matrix of the lifting.
Polynomial jacobian_determinant(const HomogeneousMap& f);

}  // namespace qasdyn
