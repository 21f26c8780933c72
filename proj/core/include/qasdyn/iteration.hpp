#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qasdyn/projmap.hpp"

namespace qasdyn {

struct Budget {
  std::uint64_t max_terms = 5'000'000;  // stored terms over all liftings
  std::uint64_t max_degree = 2000;      // degree of a composed lifting
};

enum class StopReason { horizon, term_budget, degree_budget };
std::string to_string(StopReason r);

struct LedgerStep {
  std::size_t n = 0;
  HomogeneousMap lifting;
  std::uint64_t degree = 0;
  Polynomial stripped;
  // Recurrent ledgers, steps past n0: the composed divisor H0 o F_{n-n0-1}
  // that divided F_1 o F_{n-1} exactly.
  std::optional<Polynomial> divisor;
};

struct BudgetState {
  std::uint64_t terms_used = 0;
  Budget limits;
  std::size_t horizon = 0;
  StopReason stop = StopReason::horizon;
};

enum class LedgerKind { naive, recurrent };

struct IterationLedger {
  LedgerKind kind = LedgerKind::naive;
  std::vector<LedgerStep> steps;
  BudgetState budget;
  // Recurrent ledgers only.
  std::optional<Polynomial> h0;
  std::size_t n0 = 0;

  bool reached_horizon() const { return budget.stop == StopReason::horizon; }
  std::vector<std::uint64_t> degrees() const;
};

/// F_n = normalize(F_1 o F_{n-1}), stripping the full gcd at every step.
IterationLedger iterate_naive(const HomogeneousMap& f, std::size_t horizon, const Budget& budget = {});

/// Thrown when F_1 o F_{n-1} is not divisible by H0 o F_{n-n0-1}, or when a
/// factor is stripped before step n0 + 1.
class RecurrentLawViolation : public std::runtime_error {
 public:
  RecurrentLawViolation(std::size_t step, std::string leading_term, const std::string& what)
      : std::runtime_error(what), step_(step), leading_term_(std::move(leading_term)) {}

  std::size_t step() const { return step_; }
  // Leading term of the nonzero remainder, empty for early stripping.
  const std::string& leading_term() const { return leading_term_; }

 private:
  std::size_t step_;
  std::string leading_term_;
};

/// F_n = F_1 o F_{n-1} / H0 o F_{n-n0-1} for n > n0, naive steps before.
/// Throws StructuralError when n0 < 1, h0 is constant or inhomogeneous, or
/// horizon <= n0.
IterationLedger iterate_recurrent(const HomogeneousMap& f, const Polynomial& h0, std::size_t n0, std::size_t horizon,
                                  const Budget& budget = {});

struct CrossCheck {
  bool agree = true;
  std::optional<std::size_t> first_divergence;
  std::string detail;
};

/// Compares liftings, degrees and stripped factors over the common steps.
CrossCheck cross_check(const IterationLedger& a, const IterationLedger& b);

}  // namespace qasdyn
