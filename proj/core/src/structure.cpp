#include "qasdyn/structure.hpp"

#include <algorithm>
#include <numeric>

#include "qasdyn/errors.hpp"

namespace qasdyn {

namespace {

Integer coefficient_of(const Polynomial& p, const Monomial& m) {
  auto it = std::lower_bound(p.terms().begin(), p.terms().end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial > key; });
  if (it != p.terms().end() && it->monomial == m) return it->coeff;
  return 0;
}

bool vanishes_at(const Polynomial& p, const ProjectivePoint& x) { return evaluate(p, x.coords()) == 0; }

// Box points ordered by size: sup-norm, then support, then coordinatewise
// (nonzero first, small magnitude first, positive first).
std::vector<std::vector<Integer>> box_points(std::size_t n, int bound) {
  std::vector<std::vector<int>> pts;
  std::vector<int> v(n, -bound);
  while (true) {
    const auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (first != v.end() && *first > 0) {
      int g = 0;
      for (int x : v) g = std::gcd(g, x);
      if (g == 1) pts.push_back(v);
    }
    std::size_t i = 0;
    while (i < n && v[i] == bound) v[i++] = -bound;
    if (i == n) break;
    ++v[i];
  }
  auto key = [](const std::vector<int>& p) {
    int sup = 0, support = 0;
    for (int x : p) {
      sup = std::max(sup, std::abs(x));
      support += x != 0;
    }
    std::vector<int> k{sup, support};
    for (int x : p) {
      k.push_back(x == 0);
      k.push_back(std::abs(x));
      k.push_back(x < 0);
    }
    return k;
  };
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::vector<std::vector<Integer>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.begin(), p.end());
  return out;
}

std::string factor_name(const Polynomial& h, std::span<const std::string> names) { return to_string(h, names); }

}  // namespace

std::optional<H0Discovery> discover_h0(const IterationLedger& ledger) {
  if (ledger.steps.size() < 2) throw StructuralError("discover_h0: the ledger needs at least two steps");
  for (const auto& s : ledger.steps) {
    if (!s.stripped.is_constant()) return H0Discovery{s.stripped, s.n - 1};
  }
  return std::nullopt;
}

std::optional<CollapseCertificate> certify_collapse(const HomogeneousMap& f, const Polynomial& h,
                                                    const ProjectivePoint& c) {
  const std::size_t n = f.nvars();
  if (c.size() != n) throw StructuralError("certify_collapse: point dimension does not match the map");
  if (h.is_constant() || !h.is_homogeneous()) {
    throw StructuralError("certify_collapse: factor must be homogeneous and nonconstant");
  }
  CollapseCertificate cert{h, c, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Polynomial minor = f[i].scaled(c[j]) - f[j].scaled(c[i]);
      auto q = exact_div(minor, h);
      if (!q) return std::nullopt;
      cert.minors.push_back({i, j, std::move(*q)});
    }
  }
  return cert;
}

bool verify_certificate(const HomogeneousMap& f, const CollapseCertificate& cert) {
  const auto& c = cert.image;
  for (const auto& m : cert.minors) {
    if (cert.factor * m.quotient != f[m.i].scaled(c[m.j]) - f[m.j].scaled(c[m.i])) return false;
  }
  return cert.minors.size() == f.nvars() * (f.nvars() - 1) / 2;
}

std::optional<CollapseProposal> propose_collapse_image(const HomogeneousMap& f, const Polynomial& h,
                                                       int search_bound) {
  if (search_bound < 1) throw StructuralError("propose_collapse_image: search bound must be at least 1");
  for (auto& x : box_points(f.nvars(), search_bound)) {
    if (evaluate(h, x) != 0) continue;
    ProjectivePoint p(std::move(x));
    if (auto image = apply(f, p)) return CollapseProposal{std::move(p), std::move(*image)};
  }
  return std::nullopt;
}

std::string to_string(Restriction::Kind kind) {
  switch (kind) {
    case Restriction::Kind::constant:
      return "constant";
    case Restriction::Kind::nonconstant:
      return "nonconstant";
    case Restriction::Kind::undefined:
      return "undefined";
  }
  return "unknown";
}

Restriction restrict_map(const HomogeneousMap& F, const Polynomial& h) {
  const std::size_t n = F.nvars();
  std::vector<Polynomial> rem;
  std::vector<Integer> scale;
  for (const auto& c : F.components()) {
    auto qr = divide(c, h);
    rem.push_back(std::move(qr.remainder));
    scale.push_back(std::move(qr.scale));
  }
  const auto first = std::find_if(rem.begin(), rem.end(), [](const Polynomial& r) { return !r.is_zero(); });
  if (first == rem.end()) return {Restriction::Kind::undefined, std::nullopt};
  const std::size_t j0 = static_cast<std::size_t>(first - rem.begin());
  const Monomial& m = rem[j0].leading_term().monomial;
  const Integer c0 = rem[j0].leading_coeff();

  // Normal forms rem_j / scale_j all proportional to that of j0 means F is
  // constant on {h = 0}.
  std::vector<Integer> cj(n);
  for (std::size_t j = 0; j < n; ++j) {
    cj[j] = coefficient_of(rem[j], m);
    if (rem[j].scaled(c0) != rem[j0].scaled(cj[j])) return {Restriction::Kind::nonconstant, std::nullopt};
  }
  Integer l = 1;
  for (const auto& s : scale) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.get_mpz_t());
  std::vector<Integer> coords(n);
  for (std::size_t j = 0; j < n; ++j) coords[j] = cj[j] * (l / scale[j]);
  return {Restriction::Kind::constant, ProjectivePoint(std::move(coords))};
}

Restriction restrict_iterate(const IterationLedger& ledger, const Polynomial& h, std::size_t n) {
  if (n >= ledger.steps.size()) {
    throw StructuralError("restrict_iterate: step " + std::to_string(n) + " is beyond the ledger");
  }
  if (!h.is_homogeneous()) throw StructuralError("restrict_iterate: factor must be homogeneous");
  return restrict_map(ledger.steps[n].lifting, h);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_qas:
      return "certified-QAS-at-horizon";
    case Verdict::not_qas:
      return "not-QAS";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string to_string(DegreeLoweringRecord::After a) {
  switch (a) {
    case DegreeLoweringRecord::After::hypersurface:
      return "hypersurface";
    case DegreeLoweringRecord::After::point_continues:
      return "point-continues";
    case DegreeLoweringRecord::After::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

struct ComponentContext {
  const HomogeneousMap& f;
  const IterationLedger& ledger;
  const Polynomial& h0;
  std::size_t n0;
  std::size_t horizon;
  const QasOptions& options;
  std::vector<QasWitness>& witnesses;
};

DegreeLoweringRecord analyze_component(const ComponentContext& ctx, const ComponentSpec& spec) {
  const HomogeneousMap& f = ctx.f;
  const std::size_t n0 = ctx.n0;
  DegreeLoweringRecord rec;
  rec.factor = canonicalize(spec.factor);
  rec.multiplicity = spec.multiplicity;
  const std::string name = factor_name(rec.factor, ctx.options.variable_names);

  std::optional<ProjectivePoint> image;
  for (const auto& w : ctx.options.witness_points) {
    if (w.size() != f.nvars() || !vanishes_at(rec.factor, w)) continue;
    if (auto img = apply(f, w)) {
      rec.witness = w;
      image = std::move(img);
      rec.notes.push_back("witness point " + w.to_string() + " taken from hints");
      break;
    }
  }
  if (!image) {
    if (auto prop = propose_collapse_image(f, rec.factor, ctx.options.search_bound)) {
      rec.witness = prop->witness;
      image = prop->image;
    }
  }
  if (!image) {
    rec.notes.push_back("no rational point of the component outside I(f) in the search box; collapse not examined");
    return rec;
  }

  rec.collapse = certify_collapse(f, rec.factor, *image);
  if (!rec.collapse) {
    rec.notes.push_back("F does not collapse the component to " + image->to_string());
    return rec;
  }

  rec.orbit = point_orbit(f, *image, ctx.horizon);
  if (rec.orbit->end != OrbitRecord::End::entered_indeterminacy) {
    rec.notes.push_back("orbit of " + image->to_string() + " ends by " + to_string(rec.orbit->end) +
                        " without meeting I(f); the component is not degree lowering within the horizon");
    return rec;
  }
  rec.height = rec.orbit->step + 1;
  if (*rec.height != n0) {
    rec.notes.push_back("height " + std::to_string(*rec.height) + " differs from n0 = " + std::to_string(n0));
    return rec;
  }

  // f^m(H) is the orbit point m - 1 for m = 1..n0; none may lie on H0.
  for (std::size_t m = 1; m <= n0; ++m) {
    const ProjectivePoint& p = rec.orbit->points[m - 1];
    if (vanishes_at(ctx.h0, p)) {
      const bool indeterminate = is_indeterminate(f, p);
      ctx.witnesses.push_back({"ii", name, m, p,
                               "f^" + std::to_string(m) + "(H) = " + p.to_string() + " lies on H0" +
                                   (indeterminate ? " and in I(f)" : "")});
      rec.verdict = Verdict::not_qas;
      return rec;
    }
  }

  const std::size_t next = n0 + 1;
  if (ctx.ledger.steps.size() <= next) {
    rec.notes.push_back("ledger stops before step " + std::to_string(next) + "; condition (iii) not examined");
    return rec;
  }
  const Restriction r = restrict_iterate(ctx.ledger, rec.factor, next);
  switch (r.kind) {
    case Restriction::Kind::undefined:
      rec.notes.push_back("F_" + std::to_string(next) + " vanishes on the component");
      return rec;
    case Restriction::Kind::nonconstant:
      if (f.nvars() != 3) {
        rec.notes.push_back("nonconstant restriction at step " + std::to_string(next) +
                            " does not prove a hypersurface image when k > 2");
        return rec;
      }
      rec.after = DegreeLoweringRecord::After::hypersurface;
      rec.hypersurface_step = next;
      rec.verdict = Verdict::certified_qas;
      return rec;
    case Restriction::Kind::constant:
      break;
  }

  // f^{n0+1}(H) is a point; follow it.
  rec.after = DegreeLoweringRecord::After::point_continues;
  const OrbitRecord tail = point_orbit(f, *r.point, ctx.horizon);
  switch (tail.end) {
    case OrbitRecord::End::entered_indeterminacy: {
      const std::size_t m = next + tail.step;
      const ProjectivePoint& p = tail.points[tail.step];
      ctx.witnesses.push_back(
          {"iii", name, m, p, "f^" + std::to_string(m) + "(H) = " + p.to_string() + " lies in I(f)"});
      rec.verdict = Verdict::not_qas;
      return rec;
    }
    case OrbitRecord::End::cycle:
      rec.notes.push_back("f^" + std::to_string(next) + "(H) = " + r.point->to_string() +
                          " is eventually periodic (period " + std::to_string(tail.period) + ") outside I(f)");
      rec.verdict = Verdict::certified_qas;
      return rec;
    case OrbitRecord::End::horizon:
      rec.notes.push_back("point orbit from step " + std::to_string(next) + " reached the horizon");
      return rec;
  }
  return rec;
}

// Jacobian factors outside h0 that collapse to a point whose orbit meets
// I(f) are further degree-lowering hypersurfaces.
void screen_uniqueness(const HomogeneousMap& f, const H0Discovery& h0, std::size_t horizon, const QasOptions& options,
                       StructureReport& report) {
  const Polynomial J = jacobian_determinant(f);
  if (J.is_zero()) {
    report.assumptions.push_back("Jacobian determinant vanishes; uniqueness not screened");
    return;
  }
  if (J.is_constant()) return;
  for (const auto& layer : squarefree_decompose(J)) {
    const Polynomial g = gcd(layer.factor, h0.h0);
    const Polynomial rest = canonicalize(*exact_div(layer.factor, g));
    if (rest.is_constant()) continue;
    const std::string name = factor_name(rest, options.variable_names);
    auto prop = propose_collapse_image(f, rest, options.search_bound);
    if (!prop) {
      report.assumptions.push_back("critical factor " + name +
                                   ": no rational point in the search box, treated as not degree lowering (restriction of f is " +
                                   to_string(restrict_map(f, rest).kind) + ")");
      continue;
    }
    auto cert = certify_collapse(f, rest, prop->image);
    if (!cert) {
      report.assumptions.push_back("critical factor " + name + " does not collapse to a point (restriction of f is " +
                                   to_string(restrict_map(f, rest).kind) + ")");
      continue;
    }
    const OrbitRecord orbit = point_orbit(f, prop->image, horizon);
    if (orbit.end != OrbitRecord::End::entered_indeterminacy) {
      report.assumptions.push_back("critical factor " + name + " collapses to " + prop->image.to_string() +
                                   " whose orbit ends by " + to_string(orbit.end) + " outside I(f)");
      continue;
    }
    const std::size_t height = orbit.step + 1;
    if (height != h0.n0) {
      report.witnesses.push_back({"i", name, height, orbit.points[orbit.step],
                                  "critical factor collapses to " + prop->image.to_string() +
                                      " and reaches I(f) with height " + std::to_string(height) +
                                      ", a second degree-lowering height"});
    } else {
      report.assumptions.push_back("critical factor " + name + " has height n0 but does not divide h0");
    }
  }
}

}  // namespace

StructureReport qas_check(const HomogeneousMap& f, const IterationLedger& ledger, const H0Discovery& h0,
                          const std::vector<ComponentSpec>& components, std::size_t horizon,
                          const QasOptions& options) {
  if (components.empty()) throw StructuralError("qas_check: no components given");
  Polynomial product = Polynomial::constant(f.nvars(), 1);
  for (const auto& c : components) {
    if (c.factor.nvars() != f.nvars()) throw StructuralError("qas_check: component has the wrong variable count");
    if (c.multiplicity == 0) throw StructuralError("qas_check: component multiplicity must be positive");
    product = product * pow(c.factor, c.multiplicity);
  }
  if (canonicalize(product) != canonicalize(h0.h0)) {
    throw StructuralError("qas_check: components multiply to " + factor_name(canonicalize(product), options.variable_names) +
                          ", not h0 = " + factor_name(canonicalize(h0.h0), options.variable_names));
  }

  StructureReport report;
  report.h0 = canonicalize(h0.h0);
  report.n0 = h0.n0;
  report.assumptions.push_back(options.components_assumed_irreducible
                                   ? "configured components of h0 assumed irreducible"
                                   : "square-free layers of h0 analysed as single components");
  ComponentContext ctx{f, ledger, *report.h0, h0.n0, horizon, options, report.witnesses};
  for (const auto& c : components) report.components.push_back(analyze_component(ctx, c));
  if (options.check_uniqueness) screen_uniqueness(f, h0, horizon, options, report);

  const bool any_refuted = !report.witnesses.empty();
  const bool all_certified = std::all_of(report.components.begin(), report.components.end(),
                                         [](const auto& r) { return r.verdict == Verdict::certified_qas; });
  report.verdict = any_refuted ? Verdict::not_qas : all_certified ? Verdict::certified_qas : Verdict::inconclusive;
  if (report.verdict == Verdict::certified_qas) {
    report.assumptions.push_back("uniqueness of the primitive degree-lowering hypersurface screened on critical factors only");
  }
  return report;
}

StructureReport algebraically_stable_report(const IterationLedger& ledger) {
  StructureReport report;
  const std::size_t last = ledger.steps.empty() ? 0 : ledger.steps.size() - 1;
  if (last == 0 || !ledger.reached_horizon()) {
    report.verdict = Verdict::inconclusive;
    report.assumptions.push_back(last == 0 ? "no iterate computed" : "run stopped by " + to_string(ledger.budget.stop) +
                                                                          " at step " + std::to_string(last));
    return report;
  }
  report.verdict = Verdict::certified_qas;
  report.assumptions.push_back("no degree drop through step " + std::to_string(last) +
                               "; algebraic stability beyond the horizon is not proven");
  return report;
}

}  // namespace qasdyn
