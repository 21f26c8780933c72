#include "kronecker.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <stdexcept>

namespace qasdyn::detail {

namespace {

// Packed integers above this many limbs (1 GiB) are refused.
constexpr std::uint64_t kMaxPackedLimbs = std::uint64_t{1} << 27;
constexpr std::uint64_t kMaxSlots = std::uint64_t{1} << 36;

std::size_t limbs_for_bound(const Integer& bound) {
  // One extra bit for the sign of each slot.
  const std::size_t bits = (bound == 0 ? 1 : mpz_sizeinbase(bound.get_mpz_t(), 2)) + 1;
  return (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
}

bool finish_layout(KroneckerLayout& layout, const Integer& coeff_bound) {
  layout.limbs = limbs_for_bound(coeff_bound);
  if (layout.slots > kMaxSlots) return false;
  return layout.slots * layout.limbs <= kMaxPackedLimbs;
}

Integer max_inf_norm(std::span<const Polynomial> ps) {
  Integer m = 0;
  for (const auto& p : ps) {
    Integer n = p.norm_inf();
    if (n > m) m = n;
  }
  return m;
}

}  // namespace

std::uint64_t KroneckerLayout::slot_of(const Monomial& m) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < stride.size(); ++i) s += m[i] * stride[i];
  return s;
}

std::optional<KroneckerLayout> make_layout(std::size_t nvars, std::span<const std::uint64_t> degree_bounds,
                                           const Integer& coeff_bound) {
  KroneckerLayout layout;
  layout.nvars = nvars;
  layout.stride.assign(nvars, 1);
  unsigned __int128 slots = 1;
  for (std::size_t k = nvars; k-- > 0;) {
    layout.stride[k] = static_cast<std::uint64_t>(slots);
    slots *= degree_bounds[k] + 1;
    if (slots > kMaxSlots) return std::nullopt;
  }
  layout.slots = static_cast<std::uint64_t>(slots);
  if (!finish_layout(layout, coeff_bound)) return std::nullopt;
  return layout;
}

std::optional<KroneckerLayout> make_homogeneous_layout(std::size_t nvars, std::uint64_t total_degree,
                                                       const Integer& coeff_bound) {
  assert(nvars >= 1);
  KroneckerLayout layout;
  layout.nvars = nvars;
  layout.homogeneous = true;
  layout.total_degree = total_degree;
  const std::size_t packed = nvars - 1;
  layout.stride.assign(packed, 1);
  unsigned __int128 slots = 1;
  for (std::size_t k = packed; k-- > 0;) {
    layout.stride[k] = static_cast<std::uint64_t>(slots);
    slots *= total_degree + 1;
    if (slots > kMaxSlots) return std::nullopt;
  }
  layout.slots = static_cast<std::uint64_t>(slots);
  if (!finish_layout(layout, coeff_bound)) return std::nullopt;
  return layout;
}

void pack(const Polynomial& p, const KroneckerLayout& layout, Integer& out) {
  const std::size_t total = layout.slots * layout.limbs;
  auto fill = [&](mpz_ptr z, bool negative_part) {
    mp_limb_t* d = mpz_limbs_write(z, static_cast<mp_size_t>(total));
    std::fill(d, d + total, mp_limb_t{0});
    for (const auto& t : p.terms()) {
      if ((t.coeff < 0) != negative_part) continue;
      const std::size_t n = mpz_size(t.coeff.get_mpz_t());
      assert(n <= layout.limbs);
      const mp_limb_t* src = mpz_limbs_read(t.coeff.get_mpz_t());
      std::copy(src, src + n, d + layout.slot_of(t.monomial) * layout.limbs);
    }
    mpz_limbs_finish(z, static_cast<mp_size_t>(total));
  };
  fill(out.get_mpz_t(), false);
  const bool any_negative = std::any_of(p.terms().begin(), p.terms().end(), [](const Term& t) { return t.coeff < 0; });
  if (any_negative) {
    Integer neg;
    fill(neg.get_mpz_t(), true);
    out -= neg;
  }
}

Polynomial unpack(const Integer& packed, const KroneckerLayout& layout) {
  const int sign = sgn(packed);
  const std::size_t L = layout.limbs;
  const std::size_t size = mpz_size(packed.get_mpz_t());
  const mp_limb_t* data = mpz_limbs_read(packed.get_mpz_t());
  if (size > layout.slots * L) throw std::logic_error("kronecker unpack: packed value exceeds layout");

  std::vector<mp_limb_t> chunk(L);
  const mp_limb_t top_bit = mp_limb_t{1} << (GMP_NUMB_BITS - 1);
  const std::size_t packed_vars = layout.packed_vars();
  std::vector<Term> terms;
  mp_limb_t carry = 0;
  std::vector<Monomial::Exponent> exps(layout.nvars, 0);

  for (std::uint64_t s = 0; s < layout.slots; ++s) {
    const std::size_t base = s * L;
    if (base >= size && carry == 0) break;
    for (std::size_t k = 0; k < L; ++k) chunk[k] = base + k < size ? data[base + k] : 0;
    mp_limb_t carry_out = mpn_add_1(chunk.data(), chunk.data(), static_cast<mp_size_t>(L), carry);
    bool negative = (chunk[L - 1] & top_bit) != 0;
    carry = carry_out + (negative ? 1 : 0);
    if (negative) mpn_neg(chunk.data(), chunk.data(), static_cast<mp_size_t>(L));
    std::size_t used = L;
    while (used > 0 && chunk[used - 1] == 0) --used;
    if (used == 0) continue;

    Integer coeff;
    mp_limb_t* d = mpz_limbs_write(coeff.get_mpz_t(), static_cast<mp_size_t>(used));
    std::copy(chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(used), d);
    mpz_limbs_finish(coeff.get_mpz_t(), static_cast<mp_size_t>(used));
    if (negative != (sign < 0)) coeff = -coeff;

    std::uint64_t rest = s;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < packed_vars; ++i) {
      exps[i] = static_cast<Monomial::Exponent>(rest / layout.stride[i]);
      rest %= layout.stride[i];
      sum += exps[i];
    }
    if (layout.homogeneous) {
      if (sum > layout.total_degree) throw std::logic_error("kronecker unpack: slot outside homogeneous range");
      exps[layout.nvars - 1] = static_cast<Monomial::Exponent>(layout.total_degree - sum);
    }
    terms.push_back({Monomial(exps), std::move(coeff)});
  }
  if (carry != 0) throw std::logic_error("kronecker unpack: coefficient bound violated");
  return Polynomial::from_terms(layout.nvars, std::move(terms));
}

Polynomial multiply_classical(const Polynomial& a, const Polynomial& b) {
  std::map<Monomial, Integer, std::greater<>> acc;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      auto [it, inserted] = acc.try_emplace(ta.monomial * tb.monomial);
      mpz_addmul(it->second.get_mpz_t(), ta.coeff.get_mpz_t(), tb.coeff.get_mpz_t());
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, std::move(c)});
  }
  return Polynomial::from_sorted_terms(a.nvars(), std::move(terms));
}

namespace {

std::optional<KroneckerLayout> product_layout(const Polynomial& a, const Polynomial& b, const Integer& bound) {
  const std::size_t n = a.nvars();
  if (n == 0) return std::nullopt;
  if (a.is_homogeneous() && b.is_homogeneous()) {
    return make_homogeneous_layout(n, static_cast<std::uint64_t>(a.degree() + b.degree()), bound);
  }
  std::vector<std::uint64_t> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = static_cast<std::uint64_t>(a.degree_in(i) + b.degree_in(i));
  return make_layout(n, deg, bound);
}

}  // namespace

std::optional<Polynomial> multiply_kronecker(const Polynomial& a, const Polynomial& b) {
  const Integer bound = std::min<Integer>(a.norm1() * b.norm_inf(), a.norm_inf() * b.norm1());
  auto layout = product_layout(a, b, bound);
  if (!layout) return std::nullopt;
  // Very sparse operands are cheaper the classical way.
  if (layout->slots > 32 * a.size() * b.size() + 4096) return std::nullopt;
  Integer pa, pb;
  pack(a, *layout, pa);
  pack(b, *layout, pb);
  pa *= pb;
  return unpack(pa, *layout);
}

std::optional<Polynomial> pow_kronecker(const Polynomial& p, unsigned exponent) {
  const std::size_t n = p.nvars();
  if (n == 0 || exponent < 2) return std::nullopt;
  Integer bound = ipow(p.norm1(), exponent - 1) * p.norm_inf();
  std::optional<KroneckerLayout> layout;
  if (p.is_homogeneous()) {
    layout = make_homogeneous_layout(n, static_cast<std::uint64_t>(p.degree()) * exponent, bound);
  } else {
    std::vector<std::uint64_t> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = static_cast<std::uint64_t>(p.degree_in(i)) * exponent;
    layout = make_layout(n, deg, bound);
  }
  if (!layout) return std::nullopt;
  Integer packed;
  pack(p, *layout, packed);
  mpz_pow_ui(packed.get_mpz_t(), packed.get_mpz_t(), exponent);
  return unpack(packed, *layout);
}

namespace {

void horner_packed(std::span<const Term* const> terms, std::size_t var, std::span<const Integer> values, Integer& acc) {
  if (var == values.size()) {
    acc = terms.front()->coeff;
    return;
  }
  acc = 0;
  Integer inner;
  std::size_t i = 0;
  Monomial::Exponent prev = terms.front()->monomial[var];
  while (i < terms.size()) {
    const auto e = terms[i]->monomial[var];
    std::size_t j = i;
    while (j < terms.size() && terms[j]->monomial[var] == e) ++j;
    if (acc != 0 && prev > e) {
      if (prev - e == 1) {
        acc *= values[var];
      } else {
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), values[var].get_mpz_t(), prev - e);
        acc *= pw;
      }
    }
    horner_packed(terms.subspan(i, j - i), var + 1, values, inner);
    acc += inner;
    prev = e;
    i = j;
  }
  if (prev > 0) {
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), values[var].get_mpz_t(), prev);
    acc *= pw;
  }
}

}  // namespace

std::optional<Polynomial> substitute_kronecker(const Polynomial& f, std::span<const Polynomial> g) {
  const std::size_t m = f.nvars();
  const std::size_t n = g.front().nvars();
  if (n == 0) return std::nullopt;

  // Coefficient bound: |f|(|g_0|_1, ..., |g_{m-1}|_1).
  std::vector<Integer> norms(m);
  for (std::size_t i = 0; i < m; ++i) norms[i] = g[i].norm1();
  Integer bound = 0;
  for (const auto& t : f.terms()) {
    Integer v = abs(t.coeff);
    for (std::size_t i = 0; i < m && v != 0; ++i) {
      if (t.monomial[i] > 0) v *= ipow(norms[i], t.monomial[i]);
    }
    bound += v;
  }
  bound = std::max(bound, max_inf_norm(g));

  bool homogeneous = f.is_homogeneous();
  long common = -2;
  for (const auto& gi : g) {
    if (gi.is_zero()) continue;
    if (!gi.is_homogeneous() || (common != -2 && gi.degree() != common)) {
      homogeneous = false;
      break;
    }
    common = gi.degree();
  }

  std::optional<KroneckerLayout> layout;
  if (homogeneous) {
    const std::uint64_t e = common < 0 ? 0 : static_cast<std::uint64_t>(common);
    layout = make_homogeneous_layout(n, static_cast<std::uint64_t>(f.degree()) * e, bound);
  } else {
    std::vector<std::uint64_t> deg(n, 0);
    for (const auto& t : f.terms()) {
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (t.monomial[i] > 0 && !g[i].is_zero()) d += t.monomial[i] * static_cast<std::uint64_t>(g[i].degree_in(j));
        }
        deg[j] = std::max(deg[j], d);
      }
    }
    layout = make_layout(n, deg, bound);
  }
  if (!layout) return std::nullopt;

  std::vector<Integer> values(m);
  for (std::size_t i = 0; i < m; ++i) pack(g[i], *layout, values[i]);

  std::vector<const Term*> sorted;
  sorted.reserve(f.size());
  for (const auto& t : f.terms()) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const Term* a, const Term* b) { return lex_compare(a->monomial, b->monomial) > 0; });
  Integer result;
  horner_packed(sorted, 0, values, result);
  return unpack(result, *layout);
}

}  // namespace qasdyn::detail
