#include <gtest/gtest.h>

#include "qasdyn/registry.hpp"
#include "support.hpp"

using namespace qasdyn;
using namespace qasdyn::testing;

namespace {

ParseError parse_failure(std::string_view text) {
  try {
    parse_map(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(Expression, PrecedenceAndAssociativity) {
  EXPECT_EQ(P("z + w*t"), P("z + (w*t)"));
  EXPECT_EQ(P("-z^2"), P("-(z^2)"));
  EXPECT_EQ(P("2^3^2"), P("512"));
  EXPECT_EQ(P("z - w - t"), P("z - (w + t)"));
  EXPECT_EQ(P("(z+w)^2"), P("z^2 + 2*z*w + w^2"));
  EXPECT_EQ(P("z^0"), P("1"));
}

TEST(Expression, RationalLiterals) {
  const auto s = parse_expression("z/2 + w/3", zwt());
  EXPECT_EQ(s.denominator, 6);
  EXPECT_EQ(s.numerator, P("3*z + 2*w"));
  const auto neg = parse_expression("z/(-4)", zwt());
  EXPECT_EQ(neg.denominator, 4);
  EXPECT_EQ(neg.numerator, P("-z"));
}

TEST(Expression, Errors) {
  auto column_of = [](std::string_view text) {
    try {
      parse_expression(text, zwt());
    } catch (const ParseError& e) {
      return e.column();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(column_of("z w"), 3u);     // implicit multiplication
  EXPECT_EQ(column_of("2z"), 2u);      // implicit multiplication
  EXPECT_EQ(column_of("z + x"), 5u);   // unknown identifier
  EXPECT_EQ(column_of("z^w"), 2u);     // non-integer exponent
  EXPECT_EQ(column_of("z/w"), 2u);     // division by a polynomial
  EXPECT_EQ(column_of("(z + w"), 7u);  // unclosed parenthesis
  EXPECT_EQ(column_of("z $ w"), 3u);
  EXPECT_EQ(column_of("1.5*z"), 2u);
  EXPECT_NE(column_of(""), 0u);
  EXPECT_EQ(column_of("z/0"), 2u);
}

TEST(Document, QuadraticCollapse) {
  const auto m = parse_map(find_example("nguyen-ex1")->document);
  EXPECT_EQ(m.map.nvars(), 3u);
  EXPECT_EQ(m.map.degree(), 2u);
  EXPECT_EQ(m.horizon, 12u);
  // Normalized so that the leading coefficient (of z^2) is positive.
  EXPECT_EQ(m.map[0], P("z^2 + w^2 - 2*t*z"));
}

TEST(Document, DenominatorsClearedJointly) {
  const auto m = parse_map("variables = z, w, t\ncomponents = (1/2)*z^2 : w^2 : t^2\n");
  EXPECT_EQ(m.map[0], P("z^2"));
  EXPECT_EQ(m.map[1], P("2*w^2"));
  EXPECT_EQ(m.map[2], P("2*t^2"));
}

TEST(Document, CommonFactorRemovedWithNote) {
  const auto m = parse_map("variables = z, w\ncomponents = 2*z^2 : 2*z*w\n");
  EXPECT_EQ(m.map.degree(), 1u);
  ASSERT_EQ(m.notes.size(), 1u);
  EXPECT_NE(m.notes[0].find("z"), std::string::npos);
}

TEST(Document, Defaults) {
  const auto m = parse_map("variables = z, w, t\ncomponents = z^2 : w^2 : t^2\n");
  EXPECT_EQ(m.horizon, 10u);
  EXPECT_EQ(m.budget.max_terms, 5'000'000u);
  EXPECT_EQ(m.budget.max_degree, 2000u);
  EXPECT_EQ(m.tolerance, make_rational(1, ipow(10, 12)));
}

TEST(Document, HintsAndLimits) {
  const auto m = parse_map(
      "# comment line\n"
      "variables = z, w, t   # trailing comment\n"
      "components = z^2 : w^2 : t^2\n"
      "hints.h0 = -2*t\n"
      "hints.n0 = 3\n"
      "hints.factors[] = t\n"
      "hints.witness_points[] = [2:-4:0]\n"
      "limits.horizon = 4\n"
      "limits.max_terms = 100\n"
      "limits.max_degree = 64\n"
      "tolerance = 1e-6\n");
  EXPECT_EQ(*m.h0, P("t"));
  EXPECT_EQ(*m.n0, 3u);
  ASSERT_EQ(m.factors.size(), 1u);
  ASSERT_EQ(m.witness_points.size(), 1u);
  EXPECT_EQ(m.witness_points[0].to_string(), "[1:-2:0]");
  EXPECT_EQ(m.horizon, 4u);
  EXPECT_EQ(m.budget.max_terms, 100u);
  EXPECT_EQ(m.budget.max_degree, 64u);
  EXPECT_EQ(m.tolerance, make_rational(1, 1000000));
}

TEST(Document, LocatedErrors) {
  auto e = parse_failure("variables = z, w, t\ncomponents = z^2 + w : w^2 : t^2\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(e.message().find("not homogeneous"), std::string::npos);

  e = parse_failure("variables = z, w, t\ncomponents = z^2 : w^3 : t^2\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(e.message().find("degree"), std::string::npos);

  e = parse_failure("variables = z, w\ncomponents = z*w : z*w\n");
  EXPECT_NE(e.message().find("not dominating"), std::string::npos);

  e = parse_failure("variables = z, w, t\ncomponents = z^2 : w^2\n");
  EXPECT_NE(e.message().find("2 components for 3 variables"), std::string::npos);

  e = parse_failure("variables = z, w\n\ncomponents = z : w\nlimits.horizon = ten\n");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_EQ(e.column(), 18u);

  e = parse_failure("variables = z, w\ncomponents = z : w\nvariables = a, b\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_NE(e.message().find("duplicate"), std::string::npos);

  e = parse_failure("variables = z, w\ncomponents = z : w\nhorizon = 3\n");
  EXPECT_NE(e.message().find("unknown key"), std::string::npos);

  e = parse_failure("variables = z, w\ncomponents = z : w + q\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 22u);

  e = parse_failure("components = z : w\n");
  EXPECT_NE(e.message().find("variables"), std::string::npos);

  e = parse_failure("variables = z, z\ncomponents = z : z\n");
  EXPECT_NE(e.message().find("twice"), std::string::npos);

  e = parse_failure("variables = z, w\ncomponents = z : w\nhints.witness_points[] = [0:0]\n");
  EXPECT_NE(e.message().find("zero"), std::string::npos);

  e = parse_failure("variables = z, w\ncomponents = z : w\nhints.n0 = 0\n");
  EXPECT_EQ(e.line(), 3u);

  e = parse_failure("variables = z, w\ncomponents = z : w\nno equals sign\n");
  EXPECT_EQ(e.line(), 3u);
}

TEST(Document, EmitParseRoundTrip) {
  for (const auto& entry : registry()) {
    const MapSpec spec = parse_map_document(entry.document);
    const std::string doc = emit_map_document(spec);
    const MapSpec again = parse_map_document(doc);
    EXPECT_EQ(emit_map_document(again), doc) << entry.key;
    EXPECT_EQ(build_map(again).map, build_map(spec).map) << entry.key;
  }
}

TEST(Document, SpecFromMapRoundTrip) {
  const auto f = map_of({"2*t*z - (z^2 + w^2)", "2*t*w - (z^2 + w^2)", "2*t^2 - (z^2 + w^2)"});
  const MapSpec spec = spec_from_map(f, zwt());
  EXPECT_EQ(build_map(spec).map, f);
  EXPECT_EQ(parse_map(emit_map_document(spec)).map, f);
}

TEST(Registry, KeysAndDocuments) {
  const std::vector<std::string> keys{"nguyen-ex1", "nguyen-ex3", "bonifant-fornaess-d2m2", "monomial-square",
                                      "identity"};
  ASSERT_EQ(registry().size(), keys.size());
  for (const auto& k : keys) {
    const auto* e = find_example(k);
    ASSERT_NE(e, nullptr) << k;
    EXPECT_NO_THROW(parse_map(e->document)) << k;
  }
  EXPECT_EQ(find_example("nope"), nullptr);
  const auto bf = parse_map(find_example("bonifant-fornaess-d2m2")->document);
  EXPECT_EQ(bf.map, map_of({"z*t", "-t^2", "w*t + z^2"}));
}
