#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "minflex/errors.hpp"

namespace minflex {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// a . x <= b with |a| = 1
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

// Named smooth bodies handled by analytic projections. "Cylinder" projects a
// subset of the coordinates onto a disc and leaves the rest free; a ball is a
// cylinder over all coordinates. DiscProduct is the same machinery, kept as a
// separate tag for complex-case inputs (closed disc x C^k).
enum class SmoothKind { None, Ball, Cylinder, DiscProduct };

struct SmoothPart {
  SmoothKind kind = SmoothKind::None;
  Vec center;              // full ambient dimension
  double radius = 1.0;
  std::vector<int> axes;   // coordinates the disc constraint acts on
};

struct ProjectionResult {
  Vec point;
  double distance = 0.0;
};

// Closed convex set in R^d, represented by a halfspace list and/or one named
// smooth constraint. Immutable after construction.
class ConvexBody {
 public:
  ConvexBody(int dim, std::vector<Halfspace> halfspaces,
             SmoothPart smooth = {}, std::optional<int> lineality_hint = {});

  static ConvexBody ball(const Vec& center, double radius);
  static ConvexBody cylinder(int dim, const std::vector<int>& axes,
                             const Vec& center, double radius);
  static ConvexBody from_halfspaces(int dim, std::vector<Halfspace> hs);

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const SmoothPart& smooth() const { return smooth_; }
  bool is_polyhedral() const { return smooth_.kind == SmoothKind::None; }
  std::optional<int> lineality_hint() const { return lineality_hint_; }

  bool is_empty() const;
  bool contains(const Vec& x, double tol = 1e-9) const;
  double support(const Vec& u) const;  // sup_{x in C} u.x (may be +inf)

  // Any feasible point (Dykstra from the origin). Throws EmptyBody.
  Vec feasible_point() const;

 private:
  int dim_;
  std::vector<Halfspace> halfspaces_;
  SmoothPart smooth_;
  std::optional<int> lineality_hint_;
  mutable std::optional<Vec> cached_feasible_;
  mutable std::optional<bool> cached_empty_;
};

struct AffinePlane {
  Vec base;
  Vec dir1, dir2;  // orthonormal

  int dim() const { return static_cast<int>(base.size()); }
  Vec at(double s, double t) const { return base + s * dir1 + t * dir2; }
  bool orthonormal(double tol = 1e-12) const;
};

struct AffineSubspace {
  Vec base;
  std::vector<Vec> basis;  // orthonormal, 0 <= k <= d

  int dim() const { return static_cast<int>(basis.size()); }
};

// Nearest point of C to x (Dykstra over the constraint list, analytic for
// smooth kinds). Throws EmptyBody.
ProjectionResult project(const ConvexBody& C, const Vec& x);

// Maximal affine subspace contained in C. For polyhedra this is the lineality
// space, computed as the null space of the stacked normals. Smooth kinds have
// analytically known lineality; anything else needs the hint.
AffineSubspace lineality_space(const ConvexBody& C);

int lineality_dim(const ConvexBody& C);

bool is_halfspace_or_slab(const ConvexBody& C);

// Separating hyperplane through the projection foot: a = (p - proj)/|.|,
// b = a . proj. Throws PointInsideBody when dist(p, C) <= tol.
std::pair<Vec, double> supporting_hyperplane(const ConvexBody& C, const Vec& p,
                                             double tol = 1e-9);

// Distance between an affine 2-plane and C by alternating projections.
// Returns the (monotone) limit estimate; plane parameters clamped to |s|,|t|
// <= 1e6 with a recession check.
double plane_body_distance(const ConvexBody& C, const AffinePlane& plane,
                           int max_iter = 20000);

// Helpers used across modules.
Vec project_onto_halfspace(const Halfspace& h, const Vec& x);
Vec orthonormal_complement_vector(const std::vector<Vec>& span, const Vec& seed);

}  // namespace minflex
