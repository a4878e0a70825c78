#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "minflex/convexgeo.hpp"

namespace minflex {

struct DomainSpec;

struct FullSpace {
  int dim = 3;
};

struct ConvexComplement {
  ConvexBody body;
};

// W = {x in R^3 : (x2, x3) in Gamma}, Gamma the open planar cone of angle phi
// with vertex at the origin, symmetric about the positive x2-axis. The stored
// frame maps canonical coordinates to ambient ones: x = R * xc + shift.
struct Wedge {
  double angle;          // phi in (0, 2pi)
  Mat frame;             // 3x3 rotation (identity by default)
  Vec shift;             // translation
};

// Omega = {x in R^4 : x4 > -a1 x1^2 - a2 x2^2 + a3 x3^2}, a1 >= 0, a2 > 0.
struct QuadricGraph {
  double a1, a2, a3;
};

// Omega = {x in R^n : x4 > -a2 |x2| + a3 |x3|}, n >= 4, a2 > 0.
struct WedgeGraph {
  double a2, a3;
  int dim = 4;
};

struct HalfspaceDomain {
  Vec normal;     // unit
  double offset;  // Omega = {normal . x > offset}
};

struct SlabDomain {
  Vec normal;  // unit
  double lo, hi;  // Omega = {lo < normal . x < hi}
};

struct UnionChain {
  std::vector<DomainSpec> members;  // increasing
};

struct DomainSpec {
  using Variant = std::variant<FullSpace, ConvexComplement, Wedge, QuadricGraph,
                               WedgeGraph, HalfspaceDomain, SlabDomain, UnionChain>;
  Variant variant;

  int dim() const;

  static DomainSpec full_space(int dim);
  static DomainSpec convex_complement(ConvexBody body);
  static DomainSpec wedge(double angle, Mat frame = Mat(), Vec shift = Vec());
  static DomainSpec quadric_graph(double a1, double a2, double a3);
  static DomainSpec wedge_graph(double a2, double a3, int dim = 4);
  static DomainSpec halfspace(Vec normal, double offset);
  static DomainSpec slab(Vec normal, double lo, double hi);
  static DomainSpec union_chain(std::vector<DomainSpec> members);
};

// Open-set membership: strict inequalities, boundary points excluded.
bool contains(const DomainSpec& omega, const Vec& x);

// Lower bound on dist(x, R^n \ Omega); exact for convex-complement, halfspace,
// slab, wedge and the piecewise-linear graph, numeric (stationarity root-find
// in one variable) for the quadric graph. Returns 0 outside Omega and +inf for
// the full space.
double clearance(const DomainSpec& omega, const Vec& x);

}  // namespace minflex
