#pragma once

#include <stdexcept>
#include <string>

namespace qasdyn {

/// Inputs whose shape is wrong: variable-count mismatch, inhomogeneous
/// components, inconsistent factor lists.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs outside an operation's domain: division by zero, constant
/// input to square-free decomposition, non-dominating maps.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qasdyn
