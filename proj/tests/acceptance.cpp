// One PASS/FAIL line per acceptance criterion; exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "qasdyn/errors.hpp"
#include "qasdyn/registry.hpp"
#include "qasdyn/report.hpp"
#include "support.hpp"

using namespace qasdyn;
using namespace qasdyn::testing;

namespace {

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string failures() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
};

int failed = 0;

void report(int id, const std::string& title, const Check& c, const std::string& detail) {
  std::cout << (c.ok() ? "PASS" : "FAIL") << "  " << id << "  " << title << "  [" << (c.ok() ? detail : c.failures())
            << "]" << std::endl;
  if (!c.ok()) ++failed;
}

struct Timed {
  AnalysisReport report;
  double seconds;
};

Timed run(const std::string& key) {
  const auto t0 = std::chrono::steady_clock::now();
  AnalysisReport r = run_pipeline(parse_map(find_example(key)->document));
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return {std::move(r), dt.count()};
}

std::string fixed(double x, int digits = 2) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << x;
  return s.str();
}

bool contains_seven_root29(const RootEnclosure& e) {
  auto below = [](const Rational& x) {
    const Rational y = 2 * x - 7;
    return y <= 0 || y * y <= 29;
  };
  return !e.exact && below(e.lo) && !below(e.hi);
}

// Stripped factor at n > n0 against H0 o F_{n-n0-1}, recomputed from the
// naive ledger. Returns the signs of the scalars, or nullopt on mismatch.
std::optional<std::string> recurrent_law_holds(const AnalysisReport& r, Check& c, const std::string& key) {
  if (!r.h0 || !r.recurrent || !r.cross) {
    c.require(false, key + ": no recurrent ledger");
    return std::nullopt;
  }
  c.require(r.cross->agree, key + ": ledgers disagree: " + r.cross->detail);
  const auto& naive = r.naive.steps;
  const std::size_t n0 = r.h0->n0;
  std::string signs;
  for (std::size_t n = n0 + 1; n < naive.size(); ++n) {
    const auto& earlier = naive[n - n0 - 1].lifting.components();
    const Polynomial composed = substitute(r.h0->h0, earlier);
    const auto scalar = exact_div(composed, naive[n].stripped);
    if (!scalar || !scalar->is_constant() || scalar->is_zero()) {
      c.require(false, key + ": step " + std::to_string(n) + " stripped factor is not H0 o F");
      return std::nullopt;
    }
    signs += scalar->leading_coeff() > 0 ? '+' : '-';
    const auto& div = r.recurrent->steps[n].divisor;
    c.require(div && *div == composed, key + ": recurrent divisor at step " + std::to_string(n));
  }
  return signs;
}

void criterion1(const Timed& t) {
  Check c;
  const auto& r = t.report;
  const auto d = r.naive.degrees();
  bool linear = d.size() == 13;
  for (std::size_t n = 0; linear && n < d.size(); ++n) linear = d[n] == n + 1;
  c.require(linear, "degrees are not n+1 for n=0..12");
  c.require(r.h0 && r.h0->h0 == P("t") && r.h0->n0 == 1, "h0 is not (t, 1)");
  const auto& dyn = r.dynamics;
  c.require(dyn && dyn->fit && to_string(*dyn->fit) == "(1, -2, 1)", "fit is not (1, -2, 1)");
  c.require(dyn && dyn->roots && dyn->roots->kind == RootCase::double_root &&
                dyn->roots->double_root == std::optional<Rational>(1),
            "not the double-root case at 1");
  c.require(dyn && dyn->lambda1 && dyn->lambda1->exact == std::optional<Rational>(1), "lambda1 is not exactly 1");
  c.require(t.seconds < 5, "runtime " + fixed(t.seconds) + " s");
  report(1, "nguyen-ex1: degrees n+1, h0=(t,1), fit (1,-2,1), double root 1, lambda1=1", c,
         "runtime " + fixed(t.seconds) + " s");
}

void criterion2(const Timed& t) {
  Check c;
  const auto& r = t.report;
  c.require(r.naive.degrees() == std::vector<std::uint64_t>{1, 7, 44, 273}, "degrees are not 1, 7, 44, 273");
  c.require(r.h0 && r.h0->h0 == canonicalize(P("(z+w+t)^2*(z^3+w^3+t^3)")) && r.h0->n0 == 1 && r.h0->h0.degree() == 5,
            "h0 is not ((z+w+t)^2 (z^3+w^3+t^3), 1)");
  const auto& dyn = r.dynamics;
  c.require(dyn && dyn->fit && to_string(*dyn->fit) == "(1, -7, 5)", "fit is not (1, -7, 5)");
  c.require(dyn && dyn->roots && dyn->roots->kind == RootCase::distinct_roots, "not the distinct-roots case");
  std::string width;
  if (dyn && dyn->lambda1) {
    const auto& e = *dyn->lambda1;
    c.require(!e.exact && e.width() <= make_rational(1, ipow(10, 12)), "enclosure wider than 1e-12");
    c.require(contains_seven_root29(e), "enclosure misses (7+sqrt 29)/2");
    width = to_decimal(e.width(), 16);
  } else {
    c.require(false, "no lambda1");
  }
  c.require(dyn && dyn->ratio_check && dyn->ratio_check->n == 60 &&
                dyn->ratio_check->distance <= make_rational(1, ipow(10, 9)),
            "ratio at n=60 not within 1e-9");
  if (dyn && dyn->roots && dyn->roots->exact_form) {
    const auto& f = *dyn->roots->exact_form;
    // c = 1/2 +- 7/(2 sqrt 29): the irrational part is a rational multiple of 1/sqrt(29).
    const QuadNum c0{make_rational(1, 2), make_rational(7, 58), 29};
    const QuadNum c1{make_rational(1, 2), make_rational(-7, 58), 29};
    c.require(f.coefficients.size() == 2 && f.coefficients[0] == std::vector<QuadNum>{c0} &&
                  f.coefficients[1] == std::vector<QuadNum>{c1},
              "closed-form coefficients are not 1/2 +- 7/(2 sqrt 29)");
    std::vector<Integer> s{1, 7};
    for (std::size_t n = 2; n <= 20; ++n) s.push_back(7 * s[n - 1] - 5 * s[n - 2]);
    for (std::uint64_t n = 0; n <= 20; ++n) {
      const QuadNum v = evaluate(f, n);
      if (v.b != 0 || v.a != Rational(s[n])) c.require(false, "closed form wrong at n=" + std::to_string(n));
    }
  } else {
    c.require(false, "no exact closed form");
  }
  c.require(t.seconds < 60, "runtime " + fixed(t.seconds) + " s");
  report(2, "nguyen-ex3: degrees 1,7,44,273, h0 deg 5, fit (1,-7,5), lambda1 = (7+sqrt 29)/2 enclosed", c,
         "width " + width + ", ratio@60 within 1e-9, runtime " + fixed(t.seconds) + " s");
}

void criterion3(const Timed& ex1, const Timed& ex3) {
  Check c;
  const auto s1 = recurrent_law_holds(ex1.report, c, "nguyen-ex1");
  const auto s3 = recurrent_law_holds(ex3.report, c, "nguyen-ex3");
  report(3, "recurrent law: stripped factor = H0 o F_{n-n0-1}, exact divisions, ledgers agree", c,
         "equal up to a nonzero scalar; scalar signs under normalized liftings: ex1 " + s1.value_or("?") + ", ex3 " +
             s3.value_or("?"));
}

void criterion4(const Timed& ex1, const Timed& ex3, const Timed& bf) {
  Check c;
  for (const Timed* t : {&ex1, &ex3}) {
    const auto& s = t->report.structure;
    const std::string key = t->report.input.name;
    c.require(s && s->verdict == Verdict::certified_qas, key + " not certified");
    if (!s) continue;
    for (const auto& comp : s->components) {
      c.require(comp.collapse && comp.collapse->image.to_string() == "[1:1:1]" &&
                    verify_certificate(t->report.input.map, *comp.collapse),
                key + ": component without a verified collapse to [1:1:1]");
    }
  }
  const auto& s = bf.report.structure;
  c.require(s && s->verdict == Verdict::not_qas, "bonifant-fornaess-d2m2 not refuted");
  std::string witness = "none";
  if (s && !s->witnesses.empty()) {
    const auto& w = s->witnesses.front();
    const auto& f = bf.report.input.map;
    const bool on_h0 = w.point && evaluate(bf.report.h0->h0, w.point->coords()) == 0;
    const bool indeterminate = w.point && is_indeterminate(f, *w.point);
    c.require(w.step == 2 && on_h0 && indeterminate, "witness is not a step-2 point of H0 and I(f)");
    witness = (w.point ? w.point->to_string() : "?") + " condition (" + w.condition + ") step " + std::to_string(w.step);
  } else {
    c.require(false, "no witness");
  }
  report(4, "QAS verdicts: ex1, ex3 certified via [1:1:1]; bonifant-fornaess-d2m2 refuted", c, "witness " + witness);
}

void criterion5(const Timed& t) {
  Check c;
  const auto& r = t.report;
  const auto d = r.naive.degrees();
  bool powers = d.size() == 11;
  for (std::size_t n = 0; powers && n < d.size(); ++n) powers = d[n] == (std::uint64_t{1} << n);
  c.require(powers, "degrees are not 2^n through n=10");
  c.require(!r.h0, "a degree drop was found");
  const auto& dyn = r.dynamics;
  c.require(dyn && dyn->lambda1 && dyn->lambda1->exact == std::optional<Rational>(2), "lambda1 is not exactly 2");
  report(5, "monomial-square: no degree drop through n=10, degrees 2^n, lambda1 = 2", c, "d(f^10) = 1024");
}

void criterion6() {
  Check c;
  const auto f = parse_map(find_example("nguyen-ex1")->document).map;
  const Polynomial J = jacobian_determinant(f);
  c.require(canonicalize(J) == canonicalize(P("t*(2*t^2 + w^2 + z^2 - 2*z*t - 2*w*t)")), "Jacobian mismatch");
  const Polynomial conic = P("2*t^2 + w^2 + z^2 - 2*z*t - 2*w*t");
  const auto r = restrict_map(f, conic);
  c.require(r.kind == Restriction::Kind::nonconstant, "restriction to the conic is " + to_string(r.kind));
  // The image lies on {t - z - w = 0}: (t - z - w) o F vanishes on the conic.
  const std::vector<Polynomial> comps(f.components().begin(), f.components().end());
  c.require(exact_div(substitute(P("t - z - w"), comps), conic).has_value(), "image not on t - z - w = 0");
  report(6, "Jacobian of nguyen-ex1 = t (2t^2+w^2+z^2-2zt-2wt); conic restriction nonconstant", c,
         "image inside {t - z - w = 0}");
}

void criterion7() {
  Check c;
  constexpr int kCases = 200;
  std::mt19937_64 rng(20261017);
  const RandomPoly cfg{3, 4, 6, 30, false};
  int ring = 0, div = 0, sqf = 0, rec = 0, roots = 0, det = 0;
  for (int k = 0; k < kCases; ++k) {
    const Polynomial a = random_poly(rng, cfg);
    const Polynomial b = random_nonzero(rng, cfg);
    const Polynomial e = random_poly(rng, cfg);
    ring += (a * (b + e) == a * b + a * e) && (a * b == oracle_product(a, b)) && ((a * b) * e == a * (b * e));

    const auto q = exact_div(a * b, b);
    const Polynomial g = random_nonzero(rng, {3, 2, 3, 9, false});
    const auto gr = gcd_with_cofactors(g * a, g * b);
    div += q && *q == a && gr.gcd * gr.cofactor_q == g * b && (g.is_constant() || exact_div(gr.gcd, canonicalize(g)).has_value());

    Polynomial p = pow(random_nonzero(rng, {3, 2, 3, 5, false}), 1 + k % 3) * random_nonzero(rng, {3, 2, 3, 5, false});
    if (p.is_constant()) p = p * P("z");
    Polynomial back = Polynomial::constant(3, 1);
    for (const auto& l : squarefree_decompose(p)) back = back * pow(l.factor, l.multiplicity);
    sqf += canonicalize(back) == canonicalize(p);

    const std::size_t order = 1 + k % 4;
    std::vector<Integer> s;
    std::vector<long> co(order + 1);
    for (std::size_t i = 1; i <= order; ++i) co[i] = static_cast<long>(rng() % 9) - 4;
    if (co[order] == 0) co[order] = 3;
    for (std::size_t i = 0; i < order; ++i) s.emplace_back(static_cast<long>(rng() % 21) - 10);
    s[0] = s[0] == 0 ? 1 : s[0];
    while (s.size() < 2 * order + 20) {
      Integer v = 0;
      for (std::size_t i = 1; i <= order; ++i) v -= co[i] * s[s.size() - i];
      s.push_back(v);
    }
    const auto m = fit_recurrence(std::span<const Integer>(s.data(), std::max<std::size_t>(2 * order, 4)));
    bool good = m && m->order <= order;
    if (good) {
      const auto ext = extend_and_ratio(*m, s.size() - 1);
      for (std::size_t n = 0; n < s.size(); ++n) good = good && ext.terms[n] == Rational(s[n]);
    }
    rec += good;

    const std::uint64_t d = 1 + rng() % 9;
    const std::uint64_t h = 1 + rng() % (d * d);
    const CharPoly cp = build_charpoly(d, h, 1 + k % 3);
    try {
      const auto enc = dominant_root(cp);
      roots += verify_enclosure(cp, enc) && (enc.exact || enc.width() <= default_tolerance());
    } catch (const DomainError&) {
      roots += classify_roots(cp).kind == RootCase::complex_dominant;
    }
  }
  for (const char* key : {"nguyen-ex1", "bonifant-fornaess-d2m2", "monomial-square", "identity"}) {
    const auto doc = find_example(key)->document;
    const auto a = emit_json(run_pipeline(parse_map(doc)), {.timings = false});
    const auto b = emit_json(run_pipeline(parse_map(doc)), {.timings = false});
    det += a == b;
  }
  c.require(ring == kCases, "ring axioms " + std::to_string(ring) + "/200");
  c.require(div == kCases, "exact_div/gcd round trips " + std::to_string(div) + "/200");
  c.require(sqf == kCases, "square-free reassembly " + std::to_string(sqf) + "/200");
  c.require(rec == kCases, "planted recurrences " + std::to_string(rec) + "/200");
  c.require(roots == kCases, "root certificates " + std::to_string(roots) + "/200");
  c.require(det == 4, "deterministic reports " + std::to_string(det) + "/4");
  report(7, "property suites: ring axioms, exact_div/gcd, square-free, recurrences, root certificates, determinism", c,
         "200 cases each, 4 repeated reports identical");
}

}  // namespace

int main() {
  const Timed ex1 = run("nguyen-ex1");
  const Timed ex3 = run("nguyen-ex3");
  const Timed bf = run("bonifant-fornaess-d2m2");
  const Timed sq = run("monomial-square");
  criterion1(ex1);
  criterion2(ex3);
  criterion3(ex1, ex3);
  criterion4(ex1, ex3, bf);
  criterion5(sq);
  criterion6();
  criterion7();
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
