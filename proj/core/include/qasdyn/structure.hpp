#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qasdyn/iteration.hpp"
#include "qasdyn/projmap.hpp"

namespace qasdyn {

struct H0Discovery {
  Polynomial h0;
  std::size_t n0 = 0;
};

/// First nonconstant stripped factor and n0 = (its step) - 1; nullopt when
/// the degree never drops. Throws StructuralError on fewer than two steps.
std::optional<H0Discovery> discover_h0(const IterationLedger& ledger);

/// Proof that F maps {h = 0} into the point c: for every i < j,
/// h * quotient = c_j F_i - c_i F_j.
struct CollapseCertificate {
  struct Minor {
    std::size_t i = 0;
    std::size_t j = 0;
    Polynomial quotient;
  };
  Polynomial factor;
  ProjectivePoint image;
  std::vector<Minor> minors;
};

std::optional<CollapseCertificate> certify_collapse(const HomogeneousMap& f, const Polynomial& h,
                                                    const ProjectivePoint& c);

/// Re-multiplies every minor of the certificate.
bool verify_certificate(const HomogeneousMap& f, const CollapseCertificate& cert);

struct CollapseProposal {
  ProjectivePoint witness;  // point on {h = 0}
  ProjectivePoint image;    // F(witness); a candidate until certified
};

/// Scans integer points of the box [-bound, bound]^(k+1) on {h = 0},
/// smallest first, and returns the image of the first one outside I(f).
std::optional<CollapseProposal> propose_collapse_image(const HomogeneousMap& f, const Polynomial& h,
                                                       int search_bound = 5);

struct Restriction {
  enum class Kind { constant, nonconstant, undefined };
  Kind kind = Kind::undefined;
  std::optional<ProjectivePoint> point;  // Kind::constant only
};

std::string to_string(Restriction::Kind kind);

/// Behaviour of F on {h = 0}, from the normal forms of its components
/// modulo h.
Restriction restrict_map(const HomogeneousMap& F, const Polynomial& h);
Restriction restrict_iterate(const IterationLedger& ledger, const Polynomial& h, std::size_t n);

enum class Verdict { certified_qas, not_qas, inconclusive };
std::string to_string(Verdict v);

struct ComponentSpec {
  Polynomial factor;
  unsigned multiplicity = 1;
};

struct QasWitness {
  std::string condition;  // "i", "ii" or "iii"
  std::string component;
  std::size_t step = 0;
  std::optional<ProjectivePoint> point;
  std::string detail;
};

struct DegreeLoweringRecord {
  enum class After { hypersurface, point_continues, inconclusive };

  Polynomial factor;
  unsigned multiplicity = 1;
  std::optional<ProjectivePoint> witness;  // point on the component
  std::optional<CollapseCertificate> collapse;
  std::optional<OrbitRecord> orbit;  // orbit of the collapse image
  std::optional<std::size_t> height;
  After after = After::inconclusive;
  std::optional<std::size_t> hypersurface_step;  // m0 + 1 when After::hypersurface
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
};

std::string to_string(DegreeLoweringRecord::After a);

struct StructureReport {
  std::optional<Polynomial> h0;
  std::size_t n0 = 0;
  std::vector<DegreeLoweringRecord> components;
  Verdict verdict = Verdict::inconclusive;
  std::vector<QasWitness> witnesses;
  std::vector<std::string> assumptions;
};

struct QasOptions {
  std::vector<ProjectivePoint> witness_points;  // preferred points on components
  int search_bound = 5;
  bool components_assumed_irreducible = false;  // supplied by configuration
  bool check_uniqueness = true;
  std::vector<std::string> variable_names;  // for notes; x0, x1, ... when empty
};

/// Definition-level QAS analysis of the components of h0 (which must
/// multiply to h0 up to scalar; StructuralError otherwise).
StructureReport qas_check(const HomogeneousMap& f, const IterationLedger& ledger, const H0Discovery& h0,
                          const std::vector<ComponentSpec>& components, std::size_t horizon,
                          const QasOptions& options = {});

/// Report for a ledger without degree drop.
StructureReport algebraically_stable_report(const IterationLedger& ledger);

}  // namespace qasdyn
