#include <gtest/gtest.h>

#include "qasdyn/degdyn.hpp"
#include "qasdyn/errors.hpp"

using namespace qasdyn;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<Rational> rats(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// s_n = d s_{n-1} - h s_{n-n0-1}, s_k = d^k for k <= n0.
std::vector<Integer> qas_terms(long d, long h, std::size_t n0, std::size_t count) {
  std::vector<Integer> s;
  for (std::size_t n = 0; n < count; ++n) {
    s.push_back(n <= n0 ? ipow(d, n) : Integer(d * s[n - 1] - h * s[n - n0 - 1]));
  }
  return s;
}

// x <= (7 + sqrt 29) / 2, decided exactly.
bool below_seven_root29(const Rational& x) {
  const Rational y = 2 * x - 7;
  return y <= 0 || y * y <= 29;
}

}  // namespace

TEST(FitRecurrence, KnownSequences) {
  EXPECT_EQ(to_string(*fit_recurrence(ints({1, 2, 3, 4, 5, 6}))), "(1, -2, 1)");
  EXPECT_EQ(to_string(*fit_recurrence(ints({1, 7, 44, 273}))), "(1, -7, 5)");
  EXPECT_EQ(to_string(*fit_recurrence(ints({1, 2, 4, 8, 16}))), "(1, -2)");
  EXPECT_EQ(to_string(*fit_recurrence(ints({1, 1, 2, 3, 5, 8, 13}))), "(1, -1, -1)");
  EXPECT_EQ(to_string(*fit_recurrence(ints({1, 2, 4, 6, 8, 10, 12}))), "(1, -2, 1, 0)");
  EXPECT_THROW(fit_recurrence(ints({1, 2, 3})), DomainError);
  EXPECT_FALSE(fit_recurrence(ints({0, 0, 0, 0})).has_value());
}

TEST(FitRecurrence, SeedIsPrefix) {
  const auto m = *fit_recurrence(ints({1, 7, 44, 273}));
  EXPECT_EQ(m.order, 2u);
  EXPECT_EQ(m.seed, rats({1, 7}));
}

TEST(QasShape, ReadsModels) {
  const auto s = qas_shape(*fit_recurrence(ints({1, 7, 44, 273})));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->d, 7u);
  EXPECT_EQ(s->h, 5u);
  EXPECT_EQ(s->n0, 1u);
  const auto as = qas_shape(*fit_recurrence(ints({1, 2, 4, 8, 16})));
  ASSERT_TRUE(as.has_value());
  EXPECT_EQ(as->h, 0u);
  EXPECT_FALSE(qas_shape(*fit_recurrence(ints({1, 1, 2, 3, 5, 8, 13}))).has_value());
}

TEST(CharPoly, BuildAndFitCheck) {
  const auto cp = build_charpoly(7, 5, 1);
  EXPECT_EQ(to_string(cp), "s^2 - 7*s + 5");
  EXPECT_EQ(cp.coefficients, ints({5, -7, 1}));
  EXPECT_EQ(to_string(build_charpoly(2, 0, 0)), "s - 2");
  EXPECT_EQ(to_string(build_charpoly(3, 4, 2)), "s^3 - 3*s^2 + 4");
  EXPECT_THROW(build_charpoly(0, 1, 1), DomainError);
  EXPECT_THROW(build_charpoly(2, 1, 0), DomainError);
  const auto fit = *fit_recurrence(ints({1, 7, 44, 273}));
  EXPECT_EQ(build_charpoly(7, 5, 1, fit).fit_check, CharPoly::FitCheck::matches);
  EXPECT_EQ(build_charpoly(7, 4, 1, fit).fit_check, CharPoly::FitCheck::incompatible);
  // s - 1 divides s^2 - 2 s + 1: a short run of 1, 1, 1, ... fits order one.
  const auto ones = *fit_recurrence(ints({1, 1, 1, 1, 1}));
  EXPECT_EQ(build_charpoly(2, 1, 1, ones).fit_check, CharPoly::FitCheck::divides);
}

TEST(DominantRoot, SepticTwoFactorEnclosure) {
  const auto e = dominant_root(build_charpoly(7, 5, 1));
  EXPECT_FALSE(e.exact.has_value());
  EXPECT_LE(e.width(), make_rational(1, ipow(10, 12)));
  // lo < (7 + sqrt 29)/2 < hi; the root is irrational so neither end equals it.
  EXPECT_TRUE(below_seven_root29(e.lo));
  EXPECT_FALSE(below_seven_root29(e.hi));
  EXPECT_TRUE(verify_enclosure(build_charpoly(7, 5, 1), e));
  EXPECT_EQ(e.sign_lo * e.sign_hi, -1);
  EXPECT_TRUE(e.no_root_above);
}

TEST(DominantRoot, ExactRoots) {
  EXPECT_EQ(dominant_root(build_charpoly(2, 1, 1)).exact, std::optional<Rational>(1));
  EXPECT_EQ(dominant_root(build_charpoly(2, 0, 0)).exact, std::optional<Rational>(2));
  EXPECT_EQ(dominant_root(build_charpoly(3, 4, 2)).exact, std::optional<Rational>(2));
  EXPECT_THROW(dominant_root(build_charpoly(2, 2, 1)), DomainError);
  EXPECT_THROW(dominant_root(build_charpoly(7, 5, 1), Rational(0)), DomainError);
}

TEST(DominantRoot, TamperedEnclosureRejected) {
  const auto cp = build_charpoly(7, 5, 1);
  auto e = dominant_root(cp);
  e.lo += 1;
  e.hi += 1;
  EXPECT_FALSE(verify_enclosure(cp, e));
}

TEST(ClassifyRoots, DoubleRootQuadraticCollapse) {
  const auto ra = classify_roots(build_charpoly(2, 1, 1));
  EXPECT_EQ(ra.kind, RootCase::double_root);
  EXPECT_EQ(ra.double_root, std::optional<Rational>(1));
  ASSERT_TRUE(ra.exact_form.has_value());
  for (std::uint64_t n = 0; n <= 20; ++n) {
    const QuadNum v = evaluate(*ra.exact_form, n);
    EXPECT_EQ(v.b, 0);
    EXPECT_EQ(v.a, Rational(static_cast<long>(n + 1)));
  }
}

TEST(ClassifyRoots, DistinctRootsSepticTwoFactor) {
  const auto ra = classify_roots(build_charpoly(7, 5, 1));
  EXPECT_EQ(ra.kind, RootCase::distinct_roots);
  ASSERT_TRUE(ra.exact_form.has_value());
  const auto& f = *ra.exact_form;
  EXPECT_EQ(f.radicand, 29);
  ASSERT_EQ(f.roots.size(), 2u);
  EXPECT_EQ(to_string(f.roots[0]), "7/2 + 1/2*sqrt(29)");
  // Coefficients 1/2 +- 7/(2 sqrt 29): the sqrt part has magnitude a multiple of 1/sqrt(29).
  EXPECT_EQ(f.coefficients[0][0], (QuadNum{make_rational(1, 2), make_rational(7, 58), 29}));
  EXPECT_EQ(f.coefficients[1][0], (QuadNum{make_rational(1, 2), make_rational(-7, 58), 29}));
  const auto seq = qas_terms(7, 5, 1, 21);
  for (std::uint64_t n = 0; n <= 20; ++n) {
    const QuadNum v = evaluate(f, n);
    EXPECT_EQ(v.b, 0) << n;
    EXPECT_EQ(v.a, Rational(seq[n])) << n;
  }
}

TEST(ClassifyRoots, NumericFormHigherOrder) {
  for (auto [d, h, n0] : {std::tuple{3, 4, 2}, std::tuple{5, 3, 2}, std::tuple{4, 1, 3}}) {
    const auto ra = classify_roots(build_charpoly(d, h, n0));
    ASSERT_TRUE(ra.numeric_form.has_value());
    EXPECT_EQ(evaluate_rounded(*ra.numeric_form, 21), qas_terms(d, h, n0, 21));
  }
  EXPECT_EQ(classify_roots(build_charpoly(3, 4, 2)).kind, RootCase::double_root);
}

TEST(ClassifyRoots, ComplexDominant) {
  const auto ra = classify_roots(build_charpoly(2, 2, 1));
  EXPECT_EQ(ra.kind, RootCase::complex_dominant);
  EXPECT_FALSE(ra.dominant.has_value());
  EXPECT_EQ(ra.dominant_modulus.substr(0, 5), "1.414");
  EXPECT_FALSE(ra.diagnostic.empty());
}

TEST(Sequences, ExtendAndRatio) {
  const auto m = *fit_recurrence(ints({1, 7, 44, 273}));
  const auto ext = extend_and_ratio(m, 60);
  ASSERT_EQ(ext.terms.size(), 61u);
  EXPECT_EQ(ext.terms[5], Rational(10472));
  ASSERT_TRUE(ext.ratio.has_value());
  const auto lambda = dominant_root(build_charpoly(7, 5, 1));
  EXPECT_LT(ratio_distance(*ext.ratio, lambda), make_rational(1, ipow(10, 9)));
  EXPECT_FALSE(ext.first_non_positive.has_value());
  EXPECT_THROW(extend_and_ratio(m, 1), DomainError);

  const auto fib_like = *fit_recurrence(ints({1, 1, 0, -1, -1, 0, 1, 1}));
  EXPECT_TRUE(extend_and_ratio(fib_like, 10).first_non_positive.has_value());
}

TEST(DegreeDynamics, QasShapeGiven) {
  const std::vector<std::uint64_t> deg{1, 7, 44, 273};
  const auto r = degree_dynamics(deg, QasShape{7, 5, 1}, LambdaBasis::qas);
  ASSERT_TRUE(r.charpoly && r.lambda1 && r.ratio_check);
  EXPECT_EQ(r.charpoly->fit_check, CharPoly::FitCheck::matches);
  EXPECT_TRUE(r.algebraic_integer);
  EXPECT_EQ(r.basis, LambdaBasis::qas);
  EXPECT_EQ(r.ratio_check->n, 60u);
  EXPECT_TRUE(r.flags.empty());
}

TEST(DegreeDynamics, ObservationalFallback) {
  const std::vector<std::uint64_t> deg{1, 2, 4, 6, 8, 10, 12};
  const auto r = degree_dynamics(deg, std::nullopt, LambdaBasis::observational);
  EXPECT_EQ(r.basis, LambdaBasis::observational);
  ASSERT_TRUE(r.lambda1.has_value());
  EXPECT_EQ(r.lambda1->exact, std::optional<Rational>(1));
  EXPECT_FALSE(r.flags.empty());
}

TEST(DegreeDynamics, ShortAndMismatchedInput) {
  const std::vector<std::uint64_t> one{1};
  const auto r = degree_dynamics(one, std::nullopt, LambdaBasis::observational);
  EXPECT_FALSE(r.fit.has_value());
  EXPECT_FALSE(r.lambda1.has_value());
  const std::vector<std::uint64_t> deg{1, 7, 44, 273};
  const auto bad = degree_dynamics(deg, QasShape{7, 4, 1}, LambdaBasis::qas_hypothesis);
  EXPECT_EQ(bad.charpoly->fit_check, CharPoly::FitCheck::incompatible);
  EXPECT_GE(bad.flags.size(), 2u);  // incompatible fit and a mispredicted degree
}
