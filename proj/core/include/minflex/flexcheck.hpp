#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minflex/domains.hpp"

namespace minflex {

enum class Verdict { Flexible, NotFlexible, Unknown };

enum class RuleTag {
  HalfspaceOrSlab,
  LiouvilleHalfspaceContainment,
  HyperbolicFactor,
  TubePlusGrowth,
  ConvexComplementRule,
  UnionChainRule,
  ComplexHyperplane,
  ComplexProductRule,
  None,
};

const char* to_string(Verdict v);
const char* to_string(RuleTag t);

struct Witness {
  AffinePlane plane;
  double delta = 0.0;                       // certified tube radius
  bool complex_line = false;                // plane spans a complex line
  std::vector<std::pair<double, double>> growth;  // (radius, achieved clearance)
};

struct ClassificationResult {
  Verdict verdict = Verdict::Unknown;
  RuleTag reason = RuleTag::None;
  std::optional<Witness> witness;
  std::vector<std::string> diagnostics;
};

struct ComplexLinealityReport {
  int real_lineality_dim = 0;
  int complex_lineality_dim = 0;  // k_C
  int m = 0;                      // n - k_C
  std::string factor_note;
};

// Tube condition: the Euclidean delta-tube around the plane lies in Omega.
// Exact (alternating projections) for convex complements; sampled plane
// points plus a monotonicity-at-infinity check for the other variants.
bool verify_tube_condition(const DomainSpec& omega, const AffinePlane& plane,
                           double delta);

// Growth condition: for each radius find q on the plane with
// clearance(Omega, q) >= r, by ray search with geometric step doubling.
bool verify_growth_condition(const DomainSpec& omega, const AffinePlane& plane,
                             const std::vector<double>& radii,
                             std::vector<std::pair<double, double>>* achieved = nullptr);

ClassificationResult classify_convex_complement(const ConvexBody& C);

ClassificationResult classify_domain(const DomainSpec& omega);

// Complex lineality of a convex body in R^{2n} ~ C^n with the standard
// complex structure z_j = x_{2j} + i x_{2j+1} (interleaved coordinates):
// V cap JV for V the real lineality space.
ComplexLinealityReport complex_lineality(const ConvexBody& C);

ClassificationResult classify_complex_complement(const ConvexBody& C);

// Standard complex structure on R^{2n}: J e_{2j} = e_{2j+1}, J e_{2j+1} = -e_{2j}.
Vec apply_J(const Vec& x);

}  // namespace minflex
