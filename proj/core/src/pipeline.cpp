#include "qasdyn/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include <openssl/evp.h>

#include "qasdyn/errors.hpp"

namespace qasdyn {

namespace {

class Stages {
 public:
  explicit Stages(AnalysisReport& r) : r_(r) {}

  // Runs fn, recording its wall time; exceptions become report errors.
  template <class Fn>
  bool run(const char* stage, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      fn();
    } catch (const std::exception& e) {
      r_.errors.push_back({stage, e.what()});
      ok = false;
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    r_.timings.push_back({stage, dt.count()});
    return ok;
  }

 private:
  AnalysisReport& r_;
};

std::vector<ComponentSpec> components_of(const Polynomial& h0, const ParsedMap& in, QasOptions& options) {
  std::vector<ComponentSpec> comps;
  if (in.factors.empty()) {
    for (const auto& sf : squarefree_decompose(h0)) comps.push_back({sf.factor, sf.multiplicity});
    return comps;
  }
  Polynomial rest = h0;
  for (const auto& f : in.factors) {
    unsigned m = 0;
    while (auto q = exact_div(rest, f)) {
      rest = std::move(*q);
      ++m;
    }
    if (m == 0) throw StructuralError("hints.factors[] entry " + to_string(f, in.variables) + " does not divide h0");
    comps.push_back({f, m});
  }
  if (!rest.is_constant()) {
    throw StructuralError("hints.factors[] leave the cofactor " + to_string(rest, in.variables) + " of h0");
  }
  options.components_assumed_irreducible = true;
  return comps;
}

}  // namespace

AnalysisReport run_pipeline(const ParsedMap& in, const PipelineOptions& options) {
  AnalysisReport r{in, {}, {}, {}, {}, {}, {}, {}, in.notes, {}, {}};
  Stages stages(r);
  if (!stages.run("iterate", [&] { r.naive = iterate_naive(in.map, in.horizon, in.budget); })) return r;
  const std::size_t reached = r.naive.steps.size() - 1;
  if (!r.naive.reached_horizon()) {
    r.notes.push_back("iteration stopped by " + to_string(r.naive.budget.stop) + " after step " + std::to_string(reached));
  }

  if (reached >= 1 && !stages.run("discover_h0", [&] { r.h0 = discover_h0(r.naive); })) return r;
  if (in.h0) {
    if (!r.h0) {
      r.notes.push_back("hints.h0 given but no degree drop observed through step " + std::to_string(reached));
    } else if (canonicalize(*in.h0) != r.h0->h0) {
      r.notes.push_back("hints.h0 differs from the discovered h0 " + to_string(r.h0->h0, in.variables) + "; hint ignored");
    }
  }
  if (in.n0 && r.h0 && *in.n0 != r.h0->n0) {
    r.notes.push_back("hints.n0 = " + std::to_string(*in.n0) + " differs from the discovered n0 = " +
                      std::to_string(r.h0->n0) + "; hint ignored");
  }

  if (r.h0) {
    const H0Discovery& h = *r.h0;
    if (reached > h.n0) {
      const bool ok = stages.run("recurrent", [&] {
        try {
          r.recurrent = iterate_recurrent(in.map, h.h0, h.n0, reached, in.budget);
        } catch (const RecurrentLawViolation& e) {
          r.recurrent_violation = e.what();
          return;
        }
        r.cross = cross_check(r.naive, *r.recurrent);
        if (!r.cross->agree) {
          throw std::runtime_error("naive and recurrent ledgers diverge at step " +
                                   std::to_string(r.cross->first_divergence.value_or(0)) + ": " + r.cross->detail);
        }
      });
      if (!ok) return r;
    } else {
      r.notes.push_back("horizon reaches no step past n0; recurrent ledger skipped");
    }
    if (!options.structure) return r;
    const bool ok = stages.run("qas_check", [&] {
      QasOptions qo;
      qo.variable_names = in.variables;
      qo.witness_points = in.witness_points;
      const auto comps = components_of(h.h0, in, qo);
      r.structure = qas_check(in.map, r.naive, h, comps, in.horizon, qo);
    });
    if (!ok) return r;
  } else {
    if (!options.structure) return r;
    r.structure = algebraically_stable_report(r.naive);
  }

  if (!options.dynamics) return r;

  stages.run("dynamics", [&] {
    const std::uint64_t d = in.map.degree();
    std::optional<QasShape> shape;
    LambdaBasis basis = LambdaBasis::observational;
    if (!r.h0) {
      if (r.structure->verdict == Verdict::certified_qas) {
        shape = QasShape{d, 0, 0};
        basis = LambdaBasis::algebraically_stable;
      }
    } else if (r.structure->verdict != Verdict::not_qas) {
      shape = QasShape{d, static_cast<std::uint64_t>(r.h0->h0.degree()), r.h0->n0};
      basis = r.structure->verdict == Verdict::certified_qas ? LambdaBasis::qas : LambdaBasis::qas_hypothesis;
    }
    const auto degrees = r.naive.degrees();
    r.dynamics = degree_dynamics(degrees, shape, basis, in.tolerance, options.ratio_n);
  });
  return r;
}

int exit_code(const AnalysisReport& r) {
  return r.budget_exhausted() && r.verdict() == Verdict::inconclusive ? 3 : 0;
}

std::string content_hash(const std::string& document) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(document.data(), document.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace qasdyn
