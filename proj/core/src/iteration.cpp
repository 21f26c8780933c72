#include "qasdyn/iteration.hpp"

#include <algorithm>

#include "qasdyn/errors.hpp"

namespace qasdyn {

namespace {

std::uint64_t stored_terms(const HomogeneousMap& f) {
  std::uint64_t n = 0;
  for (const auto& c : f.components()) n += c.size();
  return n;
}

// Upper estimate for the terms of F_1 o G: a component cannot exceed the
// number of monomials of its degree.
std::uint64_t estimate_terms(const HomogeneousMap& f, const HomogeneousMap& g) {
  const std::uint64_t k = f.nvars() - 1;
  const std::uint64_t degree = std::uint64_t{f.degree()} * g.degree();
  // C(degree + k, k), saturating.
  unsigned __int128 dense = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    dense = dense * (degree + i) / i;
    if (dense > (std::uint64_t{1} << 62)) return std::uint64_t{1} << 62;
  }
  return static_cast<std::uint64_t>(dense) * f.nvars();
}

// Shared step loop; `advance` produces step n from the ledger so far.
template <typename Advance>
IterationLedger run(const HomogeneousMap& f, std::size_t horizon, const Budget& budget, LedgerKind kind,
                    Advance&& advance) {
  IterationLedger ledger;
  ledger.kind = kind;
  ledger.budget.limits = budget;
  ledger.budget.horizon = horizon;
  const std::size_t n = f.nvars();
  ledger.steps.push_back({0, HomogeneousMap::identity(n), 1, Polynomial::constant(n, 1), std::nullopt});
  ledger.budget.terms_used = n;
  for (std::size_t step = 1; step <= horizon; ++step) {
    const HomogeneousMap& prev = ledger.steps.back().lifting;
    if (std::uint64_t{f.degree()} * prev.degree() > budget.max_degree) {
      ledger.budget.stop = StopReason::degree_budget;
      return ledger;
    }
    if (ledger.budget.terms_used + estimate_terms(f, prev) > budget.max_terms) {
      ledger.budget.stop = StopReason::term_budget;
      return ledger;
    }
    LedgerStep next = advance(ledger, step);
    ledger.budget.terms_used += stored_terms(next.lifting);
    ledger.steps.push_back(std::move(next));
  }
  ledger.budget.stop = StopReason::horizon;
  return ledger;
}

std::string remainder_lead(const Polynomial& p, const Polynomial& q) {
  const auto qr = divide(p, q);
  const Term& lt = qr.remainder.leading_term();
  const Rational c = make_rational(lt.coeff, qr.scale);
  const std::string mono = term_to_string({lt.monomial, Integer(1)});
  if (c == 1) return mono;
  if (c == -1) return "-" + mono;
  return (c.get_den() == 1 ? to_string(c) : "(" + to_string(c) + ")") + (lt.monomial.is_one() ? "" : "*" + mono);
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::horizon:
      return "horizon";
    case StopReason::term_budget:
      return "term-budget";
    case StopReason::degree_budget:
      return "degree-budget";
  }
  return "unknown";
}

std::vector<std::uint64_t> IterationLedger::degrees() const {
  std::vector<std::uint64_t> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.degree);
  return out;
}

IterationLedger iterate_naive(const HomogeneousMap& f, std::size_t horizon, const Budget& budget) {
  return run(f, horizon, budget, LedgerKind::naive, [&](const IterationLedger& ledger, std::size_t n) {
    auto [lifting, stripped] = normalize_lifting(compose(f, ledger.steps.back().lifting));
    const std::uint64_t degree = lifting.degree();
    return LedgerStep{n, std::move(lifting), degree, std::move(stripped), std::nullopt};
  });
}

IterationLedger iterate_recurrent(const HomogeneousMap& f, const Polynomial& h0, std::size_t n0, std::size_t horizon,
                                  const Budget& budget) {
  if (n0 < 1) throw StructuralError("iterate_recurrent: n0 must be at least 1");
  if (h0.nvars() != f.nvars()) throw StructuralError("iterate_recurrent: h0 has the wrong number of variables");
  if (h0.is_constant() || !h0.is_homogeneous()) {
    throw StructuralError("iterate_recurrent: h0 must be homogeneous and nonconstant");
  }
  if (horizon <= n0) throw StructuralError("iterate_recurrent: horizon must exceed n0");

  auto ledger = run(f, horizon, budget, LedgerKind::recurrent, [&](const IterationLedger& ledger, std::size_t n) {
    const HomogeneousMap& prev = ledger.steps.back().lifting;
    if (n <= n0) {
      auto [lifting, stripped] = normalize_lifting(compose(f, prev));
      if (!stripped.is_constant()) {
        throw RecurrentLawViolation(n, "",
                                    "recurrent law violated at step " + std::to_string(n) + ": factor " +
                                        to_string(stripped) + " stripped before step n0+1 = " +
                                        std::to_string(n0 + 1));
      }
      const std::uint64_t degree = lifting.degree();
      return LedgerStep{n, std::move(lifting), degree, std::move(stripped), std::nullopt};
    }
    const auto raw = compose(f, prev);
    Polynomial divisor = substitute(h0, ledger.steps[n - n0 - 1].lifting.components());
    // Divide by the primitive part: the law holds up to a scalar, and the
    // content of H0 o F need not divide the raw components over Z.
    const Polynomial primitive = canonicalize(divisor);
    std::vector<Polynomial> quotients;
    quotients.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto q = exact_div(raw[i], primitive);
      if (!q) {
        const std::string lead = remainder_lead(raw[i], primitive);
        throw RecurrentLawViolation(n, lead,
                                    "recurrent law violated at step " + std::to_string(n) + ": component " +
                                        std::to_string(i) + " leaves remainder with leading term " + lead);
      }
      quotients.push_back(std::move(*q));
    }
    HomogeneousMap lifting(std::move(quotients));
    const std::uint64_t degree = lifting.degree();
    return LedgerStep{n, std::move(lifting), degree, primitive, std::move(divisor)};
  });
  ledger.h0 = canonicalize(h0);
  ledger.n0 = n0;
  return ledger;
}

CrossCheck cross_check(const IterationLedger& a, const IterationLedger& b) {
  const std::size_t common = std::min(a.steps.size(), b.steps.size());
  for (std::size_t n = 0; n < common; ++n) {
    const auto& sa = a.steps[n];
    const auto& sb = b.steps[n];
    std::string what;
    if (sa.degree != sb.degree) {
      what = "degree " + std::to_string(sa.degree) + " vs " + std::to_string(sb.degree);
    } else if (sa.stripped != sb.stripped) {
      what = "stripped factors differ";
    } else if (sa.lifting != sb.lifting) {
      what = "liftings differ";
    }
    if (!what.empty()) return {false, n, "step " + std::to_string(n) + ": " + what};
  }
  return {true, std::nullopt, "agree on steps 0.." + std::to_string(common == 0 ? 0 : common - 1)};
}

}  // namespace qasdyn
