#include "qasdyn/registry.hpp"

#include <algorithm>

namespace qasdyn {

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {"nguyen-ex1", "quadratic map of P^2 collapsing {t=0} to [1:1:1]; d(f^n) = n+1",
       "name = nguyen-ex1\n"
       "variables = z, w, t\n"
       "components = 2*t*z - (z^2 + w^2) : 2*t*w - (z^2 + w^2) : 2*t^2 - (z^2 + w^2)\n"
       "limits.horizon = 12\n"},
      {"nguyen-ex3", "degree 7 map of P^2 with a reducible degree-lowering curve; lambda_1 = (7+sqrt 29)/2",
       "name = nguyen-ex3\n"
       "variables = z, w, t\n"
       "components = (z+w+t)^2*(z^3+w^3+t^3)*z^2 - 27*z^3*w^4 : (z+w+t)^2*(z^3+w^3+t^3)*w^2 - 27*z^3*w^4 : "
       "(z+w+t)^2*(z^3+w^3+t^3)*t^2 - 27*z^3*w^4\n"
       "hints.factors[] = z + w + t\n"
       "hints.factors[] = z^3 + w^3 + t^3\n"
       "hints.witness_points[] = [1:-1:0]\n"
       "limits.horizon = 3\n"},
      {"bonifant-fornaess-d2m2", "quadratic map whose degree-lowering line meets I(f); not QAS",
       "name = bonifant-fornaess-d2m2\n"
       "variables = z, w, t\n"
       "components = z*t : -t^2 : w*t + z^2\n"},
      {"monomial-square", "[z^2 : w^2 : t^2], algebraically stable",
       "name = monomial-square\n"
       "variables = z, w, t\n"
       "components = z^2 : w^2 : t^2\n"},
      {"identity", "identity of P^2", "name = identity\nvariables = z, w, t\ncomponents = z : w : t\n"},
  };
  return entries;
}

const RegistryEntry* find_example(std::string_view key) {
  const auto& r = registry();
  auto it = std::find_if(r.begin(), r.end(), [&](const RegistryEntry& e) { return e.key == key; });
  return it == r.end() ? nullptr : &*it;
}

}  // namespace qasdyn
