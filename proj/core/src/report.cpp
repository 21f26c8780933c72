#include "qasdyn/report.hpp"

#include <cstdio>
#include <sstream>

namespace qasdyn {

using json = nlohmann::ordered_json;

namespace {

constexpr unsigned kDecimals = 15;

json point_json(const std::optional<ProjectivePoint>& p) { return p ? json(p->to_string()) : json(nullptr); }

json enclosure_json(const RootEnclosure& e) {
  json j = json::object();
  if (e.exact) {
    j["exact"] = to_string(*e.exact);
    j["decimal"] = to_decimal(*e.exact, kDecimals);
  } else {
    j["lo"] = to_string(e.lo);
    j["hi"] = to_string(e.hi);
    j["decimal"] = to_decimal((e.lo + e.hi) / 2, 12);
    j["width"] = to_decimal(e.width(), 20);
    j["sign_lo"] = e.sign_lo;
    j["sign_hi"] = e.sign_hi;
    j["no_root_above"] = e.no_root_above;
  }
  return j;
}

json closed_form_json(const RootAnalysis& ra) {
  if (ra.exact_form) {
    const auto& f = *ra.exact_form;
    json roots = json::array();
    json coeffs = json::array();
    for (std::size_t i = 0; i < f.roots.size(); ++i) {
      roots.push_back(to_string(f.roots[i]));
      json c = json::array();
      for (const auto& q : f.coefficients[i]) c.push_back(to_string(q));
      coeffs.push_back(std::move(c));
    }
    return {{"kind", "exact"}, {"radicand", f.radicand.get_str()}, {"roots", roots}, {"coefficients", coeffs}};
  }
  if (ra.numeric_form) {
    const auto& f = *ra.numeric_form;
    json roots = json::array();
    for (const auto& r : f.roots) {
      json c = json::array();
      for (const auto& [re, im] : r.coefficients) c.push_back({{"re", re}, {"im", im}});
      roots.push_back({{"re", r.re}, {"im", r.im}, {"multiplicity", r.multiplicity}, {"coefficients", c}});
    }
    return {{"kind", "numeric"}, {"digits", f.digits}, {"roots", roots}, {"max_error", f.max_error}};
  }
  return nullptr;
}

json model_json(const RecurrenceModel& m) {
  json c = json::array();
  for (const auto& x : m.coefficients) c.push_back(to_string(x));
  json s = json::array();
  for (const auto& x : m.seed) s.push_back(to_string(x));
  return {{"model", to_string(m)}, {"order", m.order}, {"coefficients", c}, {"seed", s}};
}

json charpoly_json(const CharPoly& cp, const std::optional<RootAnalysis>& ra) {
  json c = json::array();
  for (const auto& x : cp.coefficients) c.push_back(x.get_str());
  json j = {{"polynomial", to_string(cp)}, {"d", cp.d},         {"h", cp.h},
            {"n0", cp.n0},                 {"coefficients", c}, {"fit_check", to_string(cp.fit_check)}};
  j["closed_form"] = ra ? closed_form_json(*ra) : json(nullptr);
  return j;
}

void put_dynamics(json& j, const std::optional<DynamicalDegreeReport>& d) {
  j["recurrence"] = d && d->fit ? model_json(*d->fit) : json(nullptr);
  j["charpoly"] = d && d->charpoly ? charpoly_json(*d->charpoly, d->roots) : json(nullptr);
  j["case"] = d && d->roots ? json(to_string(d->roots->kind)) : json(nullptr);
  if (d && d->lambda1) {
    json l = enclosure_json(*d->lambda1);
    l["basis"] = to_string(d->basis);
    l["algebraic_integer"] = d->algebraic_integer;
    j["lambda1"] = std::move(l);
  } else {
    j["lambda1"] = nullptr;
  }
  if (d && d->ratio_check) {
    j["ratio_check"] = {{"n", d->ratio_check->n},
                        {"ratio", to_decimal(d->ratio_check->ratio, kDecimals)},
                        {"distance", to_decimal(d->ratio_check->distance, 20)}};
  } else {
    j["ratio_check"] = nullptr;
  }
  j["flags"] = d ? json(d->flags) : json::array();
}

json component_json(const DegreeLoweringRecord& c, const std::vector<std::string>& vars) {
  json j = {{"factor", to_string(c.factor, vars)}, {"multiplicity", c.multiplicity}, {"witness", point_json(c.witness)}};
  if (c.collapse) {
    j["collapse"] = {{"image", c.collapse->image.to_string()}, {"minors", c.collapse->minors.size()}};
  } else {
    j["collapse"] = nullptr;
  }
  if (c.orbit) {
    json pts = json::array();
    for (const auto& p : c.orbit->points) pts.push_back(p.to_string());
    j["orbit"] = {{"points", pts}, {"end", to_string(c.orbit->end)}, {"step", c.orbit->step}, {"period", c.orbit->period}};
  } else {
    j["orbit"] = nullptr;
  }
  j["height"] = c.height ? json(*c.height) : json(nullptr);
  j["after"] = to_string(c.after);
  j["hypersurface_step"] = c.hypersurface_step ? json(*c.hypersurface_step) : json(nullptr);
  j["verdict"] = to_string(c.verdict);
  j["notes"] = c.notes;
  return j;
}

json structure_json(const std::optional<StructureReport>& s, const std::vector<std::string>& vars) {
  if (!s) return {{"verdict", to_string(Verdict::inconclusive)}, {"witnesses", json::array()},
                  {"assumptions", json::array()}, {"components", json::array()}};
  json w = json::array();
  for (const auto& x : s->witnesses) {
    w.push_back({{"condition", x.condition},
                 {"component", x.component},
                 {"step", x.step},
                 {"point", point_json(x.point)},
                 {"detail", x.detail}});
  }
  json comps = json::array();
  for (const auto& c : s->components) comps.push_back(component_json(c, vars));
  return {{"verdict", to_string(s->verdict)}, {"witnesses", w}, {"assumptions", s->assumptions}, {"components", comps}};
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

}  // namespace

json report_json(const AnalysisReport& r, const EmitOptions& options) {
  const auto& in = r.input;
  const auto& vars = in.variables;
  json j;
  json comps = json::array();
  for (const auto& c : in.map.components()) comps.push_back(to_string(c, vars));
  j["map"] = {{"name", in.name},
              {"hash", content_hash(in.canonical_document)},
              {"variables", vars},
              {"components", comps},
              {"degree", in.map.degree()},
              {"jacobian", to_string(in.jacobian, vars)},
              {"notes", r.notes}};
  j["degrees"] = r.naive.degrees();
  json stripped = json::array();
  for (const auto& s : r.naive.steps) {
    if (s.n == 0) continue;
    stripped.push_back({{"n", s.n}, {"degree", s.stripped.degree()}, {"factor", to_string(s.stripped, vars)}});
  }
  j["stripped"] = stripped;
  j["h0"] = r.h0 ? json(to_string(r.h0->h0, vars)) : json(nullptr);
  j["n0"] = r.h0 ? json(r.h0->n0) : json(nullptr);
  json ledgers = {{"naive_steps", r.naive.steps.size() - (r.naive.steps.empty() ? 0 : 1)}};
  ledgers["recurrent_steps"] = r.recurrent ? json(r.recurrent->steps.size() - 1) : json(nullptr);
  if (r.cross) {
    ledgers["cross_check"] = {{"agree", r.cross->agree}, {"detail", r.cross->detail}};
  } else {
    ledgers["cross_check"] = nullptr;
  }
  ledgers["recurrent_violation"] = r.recurrent_violation ? json(*r.recurrent_violation) : json(nullptr);
  j["ledgers"] = std::move(ledgers);
  put_dynamics(j, r.dynamics);
  j["qas"] = structure_json(r.structure, vars);
  json t = json::object();
  if (options.timings) {
    for (const auto& s : r.timings) t[s.stage] = seconds(s.seconds);
  }
  j["timings"] = std::move(t);
  const auto& b = r.naive.budget;
  j["budget"] = {{"stop", to_string(b.stop)},
                 {"horizon", b.horizon},
                 {"reached", r.naive.steps.empty() ? 0 : r.naive.steps.size() - 1},
                 {"terms_used", b.terms_used},
                 {"max_terms", b.limits.max_terms},
                 {"max_degree", b.limits.max_degree}};
  json errors = json::array();
  for (const auto& e : r.errors) errors.push_back({{"stage", e.stage}, {"message", e.message}});
  j["errors"] = std::move(errors);
  return j;
}

std::string emit_json(const AnalysisReport& r, const EmitOptions& options) {
  return report_json(r, options).dump(2) + "\n";
}

json dynamics_json(const DynamicalDegreeReport& d) {
  json j;
  put_dynamics(j, d);
  return j;
}

namespace {

void dynamics_lines(std::ostringstream& out, const DynamicalDegreeReport& d) {
  out << "recurrence: " << (d.fit ? to_string(*d.fit) : "none") << "\n";
  if (d.charpoly) {
    out << "charpoly: " << to_string(*d.charpoly) << " (fit " << to_string(d.charpoly->fit_check) << ")\n";
  }
  if (d.roots) {
    out << "case: " << to_string(d.roots->kind) << "\n";
    if (d.roots->exact_form) {
      const auto& f = *d.roots->exact_form;
      for (std::size_t i = 0; i < f.roots.size(); ++i) {
        out << "  root " << to_string(f.roots[i]) << "  coefficients";
        for (const auto& q : f.coefficients[i]) out << "  " << to_string(q);
        out << "\n";
      }
    } else if (d.roots->numeric_form) {
      const auto& f = *d.roots->numeric_form;
      for (const auto& r : f.roots) {
        out << "  root " << r.re << (r.im.front() == '-' ? " " : " +") << r.im << "i";
        if (r.multiplicity > 1) out << " (multiplicity " << r.multiplicity << ")";
        out << "\n";
      }
      out << "  closed form max error n<=20: " << f.max_error << "\n";
    }
  }
  if (d.lambda1) {
    const auto& e = *d.lambda1;
    out << "lambda1: ";
    if (e.exact) {
      out << to_string(*e.exact);
    } else {
      out << "[" << to_decimal(e.lo, kDecimals) << ", " << to_decimal(e.hi, kDecimals) << "] ~ "
          << to_decimal((e.lo + e.hi) / 2, 12);
    }
    out << " (" << to_string(d.basis) << (d.algebraic_integer ? ", algebraic integer" : "") << ")\n";
  } else {
    out << "lambda1: unknown\n";
  }
  if (d.ratio_check) {
    out << "ratio at n=" << d.ratio_check->n << ": " << to_decimal(d.ratio_check->ratio, kDecimals)
        << " (distance <= " << to_decimal(d.ratio_check->distance, 20) << ")\n";
  }
  for (const auto& f : d.flags) out << "flag: " << f << "\n";
}

}  // namespace

std::string dynamics_text(const DynamicalDegreeReport& d) {
  std::ostringstream out;
  dynamics_lines(out, d);
  return out.str();
}

std::string emit_text(const AnalysisReport& r, const EmitOptions& options) {
  const auto& in = r.input;
  const auto& vars = in.variables;
  std::ostringstream out;
  out << "map " << (in.name.empty() ? "(unnamed)" : in.name) << ", degree " << in.map.degree() << " in";
  for (const auto& v : vars) out << " " << v;
  out << "\n";
  for (std::size_t i = 0; i < in.map.nvars(); ++i) out << "  F" << i << " = " << to_string(in.map[i], vars) << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  for (const auto& s : r.naive.steps) {
    out << "n=" << s.n << "  d=" << s.degree << "  stripped_deg=" << (s.n == 0 ? 0 : s.stripped.degree()) << "\n";
  }
  if (r.h0) {
    out << "h0 = " << to_string(r.h0->h0, vars) << "  (degree " << r.h0->h0.degree() << ", n0 = " << r.h0->n0 << ")\n";
  } else {
    out << "h0: none\n";
  }
  if (r.cross) {
    out << "recurrent ledger: " << (r.cross->agree ? "agrees with" : "diverges from") << " the naive ledger through step "
        << r.recurrent->steps.size() - 1 << "\n";
  }
  if (r.recurrent_violation) out << "recurrent ledger: " << *r.recurrent_violation << "\n";
  if (r.structure) {
    const auto& s = *r.structure;
    out << "qas: " << to_string(s.verdict) << "\n";
    for (const auto& c : s.components) {
      out << "  component " << to_string(c.factor, vars);
      if (c.multiplicity > 1) out << " ^" << c.multiplicity;
      out << ": " << to_string(c.verdict);
      if (c.collapse) out << ", collapses to " << c.collapse->image.to_string();
      if (c.height) out << ", height " << *c.height;
      out << ", then " << to_string(c.after) << "\n";
    }
    for (const auto& w : s.witnesses) {
      out << "  witness (" << w.condition << ") step " << w.step;
      if (w.point) out << " at " << w.point->to_string();
      out << ": " << w.detail << "\n";
    }
    for (const auto& a : s.assumptions) out << "  assumption: " << a << "\n";
  }
  if (r.dynamics) dynamics_lines(out, *r.dynamics);
  const auto& b = r.naive.budget;
  out << "budget: stop=" << to_string(b.stop) << " terms_used=" << b.terms_used << "/" << b.limits.max_terms << "\n";
  if (options.timings && !r.timings.empty()) {
    out << "timings:";
    for (const auto& t : r.timings) out << " " << t.stage << "=" << seconds(t.seconds) << "s";
    out << "\n";
  }
  for (const auto& e : r.errors) out << "error in " << e.stage << ": " << e.message << "\n";
  return out.str();
}

}  // namespace qasdyn
