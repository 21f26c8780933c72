#include "qasdyn/monomial.hpp"

#include <cassert>
#include <numeric>

namespace qasdyn {

Monomial::Monomial(std::vector<Exponent> exps)
    : exps_(std::move(exps)),
      degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0})) {}

bool Monomial::divides(const Monomial& other) const {
  assert(nvars() == other.nvars());
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::with_exponent(std::size_t var, Exponent e) const {
  Monomial out = *this;
  out.degree_ = out.degree_ - out.exps_[var] + e;
  out.exps_[var] = e;
  return out;
}

Monomial Monomial::operator*(const Monomial& other) const {
  assert(nvars() == other.nvars());
  Monomial out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  out.degree_ += other.degree_;
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  assert(other.divides(*this));
  Monomial out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= other.exps_[i];
  out.degree_ -= other.degree_;
  return out;
}

}  // namespace qasdyn
