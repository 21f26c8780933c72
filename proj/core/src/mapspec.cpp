#include "qasdyn/mapspec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "qasdyn/errors.hpp"

namespace qasdyn {

namespace {

std::string locate(std::size_t line, std::size_t column, const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// ---- expressions ----

struct Token {
  enum Kind { number, ident, op, end } kind = end;
  std::string text;
  std::size_t offset = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && (s[i] == '.' || is_ident_start(s[i]))) {
        throw ParseError(1, i + 1,
                         s[i] == '.' ? "decimal literals are not supported; write a/b"
                                     : "implicit multiplication is not supported; write '*'");
      }
      out.push_back({Token::number, std::string(s.substr(start, i - start)), start});
    } else if (is_ident_start(c)) {
      while (i < s.size() && is_ident_char(s[i])) ++i;
      out.push_back({Token::ident, std::string(s.substr(start, i - start)), start});
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Token::op, std::string(1, c), start});
      ++i;
    } else {
      throw ParseError(1, i + 1, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::end, "", s.size()});
  return out;
}

ScaledPolynomial reduce(ScaledPolynomial p) {
  if (p.numerator.is_zero()) return {p.numerator, 1};
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.numerator.content().get_mpz_t(), p.denominator.get_mpz_t());
  if (g != 1) {
    p.numerator = p.numerator.divexact(g);
    p.denominator /= g;
  }
  return p;
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& variables)
      : tokens_(tokenize(text)), variables_(variables) {}

  ScaledPolynomial parse() {
    ScaledPolynomial p = expression(0);
    if (peek().kind != Token::end) fail(peek(), "unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw ParseError(1, t.offset + 1, message);
  }

  std::size_t nvars() const { return variables_.size(); }

  static int infix_power(const Token& t) {
    if (t.kind != Token::op) return -1;
    switch (t.text[0]) {
      case '+':
      case '-':
        return 1;
      case '*':
      case '/':
        return 3;
      case '^':
        return 7;
      default:
        return -1;
    }
  }

  ScaledPolynomial expression(int min_power) {
    ScaledPolynomial lhs = prefix();
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::number || t.kind == Token::ident || (t.kind == Token::op && t.text == "(")) {
        fail(t, "implicit multiplication is not supported; write '*'");
      }
      const int power = infix_power(t);
      if (power < 0 || power < min_power) return lhs;
      const Token op = next();
      // '^' is right associative.
      ScaledPolynomial rhs = expression(op.text == "^" ? power : power + 1);
      lhs = apply(op, std::move(lhs), std::move(rhs));
    }
  }

  ScaledPolynomial prefix() {
    const Token& t = next();
    switch (t.kind) {
      case Token::number:
        return {Polynomial::constant(nvars(), Integer(t.text, 10)), 1};
      case Token::ident: {
        auto it = std::find(variables_.begin(), variables_.end(), t.text);
        if (it == variables_.end()) fail(t, "unknown identifier '" + t.text + "'");
        return {Polynomial::variable(nvars(), static_cast<std::size_t>(it - variables_.begin())), 1};
      }
      case Token::op:
        if (t.text == "(") {
          ScaledPolynomial inner = expression(0);
          if (peek().kind != Token::op || peek().text != ")") fail(peek(), "expected ')'");
          next();
          return inner;
        }
        if (t.text == "-") {
          ScaledPolynomial p = expression(5);
          return {-p.numerator, p.denominator};
        }
        if (t.text == "+") return expression(5);
        fail(t, "unexpected '" + t.text + "'");
      case Token::end:
        fail(t, "unexpected end of expression");
    }
    fail(t, "unexpected token");
  }

  ScaledPolynomial apply(const Token& op, ScaledPolynomial a, ScaledPolynomial b) {
    switch (op.text[0]) {
      case '+':
        return reduce({a.numerator.scaled(b.denominator) + b.numerator.scaled(a.denominator),
                       a.denominator * b.denominator});
      case '-':
        return reduce({a.numerator.scaled(b.denominator) - b.numerator.scaled(a.denominator),
                       a.denominator * b.denominator});
      case '*':
        return reduce({a.numerator * b.numerator, a.denominator * b.denominator});
      case '/': {
        if (!b.numerator.is_constant() || b.numerator.is_zero()) fail(op, "division only by nonzero constants");
        Integer num = b.numerator.leading_coeff();
        Integer den = b.denominator;
        if (num < 0) {
          num = -num;
          den = -den;
        }
        return reduce({a.numerator.scaled(den), a.denominator * num});
      }
      case '^': {
        if (!b.numerator.is_constant() || b.denominator != 1) fail(op, "exponent must be a nonnegative integer");
        const Integer e = b.numerator.is_zero() ? Integer(0) : b.numerator.leading_coeff();
        if (e < 0 || e > 65535) fail(op, "exponent must be an integer in 0..65535");
        const auto k = static_cast<unsigned>(e.get_ui());
        return {pow(a.numerator, k), ipow(a.denominator, k)};
      }
    }
    fail(op, "unknown operator");
  }

  std::vector<Token> tokens_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

// ---- documents ----

struct Field {
  std::string_view value;
  std::size_t line = 0;
  std::size_t column = 0;  // of the value's first character
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits on `sep`, reporting each trimmed piece with its column.
std::vector<Field> split(const Field& f, char sep) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= f.value.size(); ++i) {
    if (i < f.value.size() && f.value[i] != sep) continue;
    std::string_view piece = f.value.substr(start, i - start);
    std::size_t lead = 0;
    while (lead < piece.size() && is_space(piece[lead])) ++lead;
    out.push_back({trim(piece), f.line, f.column + start + lead});
    start = i + 1;
  }
  return out;
}

std::uint64_t parse_count(const Field& f, const char* key) {
  std::uint64_t v = 0;
  const auto* first = f.value.data();
  const auto* last = first + f.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(f.line, f.column, std::string(key) + " must be a nonnegative integer");
  }
  return v;
}

std::vector<Integer> parse_point(const Field& f) {
  std::string_view v = f.value;
  Field inner = f;
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ParseError(f.line, f.column, "witness point must look like [1:-1:0]");
    inner = {v.substr(1, v.size() - 2), f.line, f.column + 1};
  }
  std::vector<Integer> coords;
  for (const auto& piece : split(inner, ':')) {
    std::string_view s = piece.value;
    const bool neg = !s.empty() && s.front() == '-';
    if (neg) s.remove_prefix(1);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError(piece.line, piece.column, "witness coordinate must be an integer");
    }
    Integer c{std::string(s)};
    coords.push_back(neg ? Integer(-c) : c);
  }
  return coords;
}

const std::set<std::string, std::less<>> kScalarKeys = {
    "name", "variables", "components", "hints.h0", "hints.n0", "limits.horizon", "limits.max_terms",
    "limits.max_degree", "tolerance"};
const std::set<std::string, std::less<>> kListKeys = {"hints.factors[]", "hints.witness_points[]"};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(locate(line, column, message)), line_(line), column_(column), message_(message) {}

ScaledPolynomial parse_expression(std::string_view text, const std::vector<std::string>& variables) {
  if (trim(text).empty()) throw ParseError(1, 1, "empty expression");
  return ExpressionParser(text, variables).parse();
}

MapSpec parse_map_document(std::string_view text) {
  MapSpec spec;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::size_t indent = 0;
    while (is_space(line[indent])) ++indent;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, indent + 1, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    std::size_t vstart = eq + 1;
    while (vstart < line.size() && is_space(line[vstart])) ++vstart;
    const Field f{trim(line.substr(eq + 1)), line_no, vstart + 1};
    if (!kScalarKeys.contains(key) && !kListKeys.contains(key)) {
      throw ParseError(line_no, indent + 1, "unknown key '" + key + "'");
    }
    if (kScalarKeys.contains(key) && !seen.insert(key).second) {
      throw ParseError(line_no, indent + 1, "duplicate key '" + key + "'");
    }
    if (f.value.empty()) throw ParseError(line_no, eq + 2, "missing value for '" + key + "'");

    if (key == "name") {
      spec.name = std::string(f.value);
    } else if (key == "variables") {
      for (const auto& v : split(f, ',')) {
        if (v.value.empty() || !is_ident_start(v.value.front()) ||
            !std::all_of(v.value.begin(), v.value.end(), is_ident_char)) {
          throw ParseError(v.line, v.column, "invalid variable name '" + std::string(v.value) + "'");
        }
        if (std::find(spec.variables.begin(), spec.variables.end(), v.value) != spec.variables.end()) {
          throw ParseError(v.line, v.column, "variable '" + std::string(v.value) + "' listed twice");
        }
        spec.variables.emplace_back(v.value);
      }
    } else if (key == "components") {
      for (const auto& c : split(f, ':')) {
        if (c.value.empty()) throw ParseError(c.line, c.column, "empty component");
        spec.components.emplace_back(c.value);
        spec.component_at.push_back({c.line, c.column});
      }
    } else if (key == "hints.h0") {
      spec.h0 = std::string(f.value);
      spec.h0_at = {f.line, f.column};
    } else if (key == "hints.n0") {
      spec.n0 = parse_count(f, "hints.n0");
      if (*spec.n0 == 0) throw ParseError(f.line, f.column, "hints.n0 must be at least 1");
    } else if (key == "hints.factors[]") {
      spec.factors.emplace_back(f.value);
      spec.factor_at.push_back({f.line, f.column});
    } else if (key == "hints.witness_points[]") {
      spec.witness_points.push_back(parse_point(f));
    } else if (key == "limits.horizon") {
      spec.horizon = parse_count(f, "limits.horizon");
    } else if (key == "limits.max_terms") {
      spec.budget.max_terms = parse_count(f, "limits.max_terms");
    } else if (key == "limits.max_degree") {
      spec.budget.max_degree = parse_count(f, "limits.max_degree");
    } else if (key == "tolerance") {
      try {
        spec.tolerance = parse_rational(f.value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(f.line, f.column, e.what());
      }
      if (spec.tolerance <= 0) throw ParseError(f.line, f.column, "tolerance must be positive");
    }
    if (end == text.size()) break;
  }
  if (spec.variables.empty()) throw ParseError(0, 0, "missing required key 'variables'");
  if (spec.components.empty()) throw ParseError(0, 0, "missing required key 'components'");
  return spec;
}

std::string emit_map_document(const MapSpec& spec) {
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) { out += key + " = " + value + "\n"; };
  if (!spec.name.empty()) line("name", spec.name);
  std::string vars;
  for (std::size_t i = 0; i < spec.variables.size(); ++i) vars += (i ? ", " : "") + spec.variables[i];
  line("variables", vars);
  std::string comps;
  for (std::size_t i = 0; i < spec.components.size(); ++i) comps += (i ? " : " : "") + spec.components[i];
  line("components", comps);
  if (spec.h0) line("hints.h0", *spec.h0);
  if (spec.n0) line("hints.n0", std::to_string(*spec.n0));
  for (const auto& f : spec.factors) line("hints.factors[]", f);
  for (const auto& p : spec.witness_points) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + p[i].get_str();
    line("hints.witness_points[]", s + "]");
  }
  line("limits.horizon", std::to_string(spec.horizon));
  line("limits.max_terms", std::to_string(spec.budget.max_terms));
  line("limits.max_degree", std::to_string(spec.budget.max_degree));
  line("tolerance", to_string(spec.tolerance));
  return out;
}

namespace {

// Expression at a document position; ParseError columns are shifted from
// expression-relative to document-relative.
ScaledPolynomial parse_at(const std::string& text, const MapSpec::Position& at, const std::vector<std::string>& vars) {
  try {
    return parse_expression(text, vars);
  } catch (const ParseError& e) {
    if (at.line == 0) throw;
    throw ParseError(at.line, at.column + e.column() - 1, e.message());
  }
}

Polynomial cleared_hypersurface(const std::string& text, const MapSpec::Position& at, const std::vector<std::string>& vars,
                                const char* what) {
  const Polynomial p = parse_at(text, at, vars).numerator;
  if (p.is_constant()) throw ParseError(at.line, at.column, std::string(what) + " must be nonconstant");
  if (!p.is_homogeneous()) throw ParseError(at.line, at.column, std::string(what) + " is not homogeneous");
  return canonicalize(p);
}

}  // namespace

ParsedMap build_map(const MapSpec& spec) {
  const std::size_t n = spec.variables.size();
  const MapSpec::Position comps_at = spec.component_at.empty() ? MapSpec::Position{} : spec.component_at.front();
  if (spec.components.size() != n) {
    throw ParseError(comps_at.line, comps_at.column,
                     std::to_string(spec.components.size()) + " components for " + std::to_string(n) + " variables");
  }
  auto at = [&](const std::vector<MapSpec::Position>& v, std::size_t i) {
    return i < v.size() ? v[i] : MapSpec::Position{};
  };

  std::vector<ScaledPolynomial> scaled;
  Integer l = 1;
  std::optional<long> degree;
  for (std::size_t i = 0; i < n; ++i) {
    const auto pos = at(spec.component_at, i);
    scaled.push_back(parse_at(spec.components[i], pos, spec.variables));
    const Polynomial& p = scaled.back().numerator;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), scaled.back().denominator.get_mpz_t());
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) {
      throw ParseError(pos.line, pos.column, "component " + std::to_string(i) + " is not homogeneous");
    }
    if (degree && p.degree() != *degree) {
      throw ParseError(pos.line, pos.column,
                       "component " + std::to_string(i) + " has degree " + std::to_string(p.degree()) +
                           ", expected " + std::to_string(*degree));
    }
    degree = p.degree();
  }
  if (!degree) throw ParseError(comps_at.line, comps_at.column, "every component is zero");
  if (*degree == 0) throw ParseError(comps_at.line, comps_at.column, "components must have positive degree");

  std::vector<Polynomial> raw;
  for (const auto& s : scaled) raw.push_back(s.numerator.scaled(l / s.denominator));

  ParsedMap out{spec.name, spec.variables, HomogeneousMap::identity(n), Polynomial(n), {}, {}, {}, {}, spec.horizon,
                spec.budget, spec.tolerance, {}, emit_map_document(spec)};
  auto [map, stripped] = normalize_lifting(std::move(raw));
  if (!stripped.is_constant()) {
    out.notes.push_back("common factor " + to_string(stripped, spec.variables) + " removed from the components");
  }
  out.map = std::move(map);
  out.jacobian = jacobian_determinant(out.map);
  if (out.jacobian.is_zero()) {
    throw ParseError(comps_at.line, comps_at.column, "map is not dominating: the Jacobian determinant vanishes");
  }

  if (spec.h0) out.h0 = cleared_hypersurface(*spec.h0, spec.h0_at, spec.variables, "hints.h0");
  out.n0 = spec.n0;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    out.factors.push_back(cleared_hypersurface(spec.factors[i], at(spec.factor_at, i), spec.variables, "hints.factors[]"));
  }
  for (const auto& coords : spec.witness_points) {
    if (coords.size() != n) {
      throw ParseError(0, 0, "witness point with " + std::to_string(coords.size()) + " coordinates in P^" +
                                 std::to_string(n - 1));
    }
    try {
      out.witness_points.emplace_back(coords);
    } catch (const DomainError&) {
      throw ParseError(0, 0, "witness point with every coordinate zero");
    }
  }
  return out;
}

ParsedMap parse_map(std::string_view text) { return build_map(parse_map_document(text)); }

MapSpec spec_from_map(const HomogeneousMap& f, const std::vector<std::string>& variables) {
  MapSpec spec;
  spec.variables = variables;
  for (const auto& c : f.components()) spec.components.push_back(to_string(c, variables));
  return spec;
}

}  // namespace qasdyn
