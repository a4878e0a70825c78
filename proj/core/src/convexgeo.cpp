#include "minflex/convexgeo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace minflex {

namespace {

constexpr double kDykstraTol = 1e-10;
constexpr int kDykstraMaxIter = 10000;
constexpr double kFeasibilityTol = 1e-6;

using Projector = std::function<Vec(const Vec&)>;

Vec project_onto_smooth(const SmoothPart& s, const Vec& x) {
  if (s.kind == SmoothKind::None) return x;
  Vec y = x;
  double r2 = 0.0;
  for (int a : s.axes) {
    const double d = x[a] - s.center[a];
    r2 += d * d;
  }
  const double r = std::sqrt(r2);
  if (r > s.radius && r > 0.0) {
    const double scale = s.radius / r;
    for (int a : s.axes) y[a] = s.center[a] + scale * (x[a] - s.center[a]);
  }
  return y;
}

std::vector<Projector> make_projectors(const ConvexBody& C) {
  std::vector<Projector> sets;
  for (const auto& h : C.halfspaces())
    sets.push_back([&h](const Vec& x) { return project_onto_halfspace(h, x); });
  if (C.smooth().kind != SmoothKind::None) {
    const SmoothPart& s = C.smooth();
    sets.push_back([&s](const Vec& x) { return project_onto_smooth(s, x); });
  }
  return sets;
}

// Dykstra's alternating projection scheme; converges to the nearest point of
// the intersection for convex constraint sets.
Vec dykstra(const std::vector<Projector>& sets, const Vec& x0,
            int max_iter = kDykstraMaxIter, double tol = kDykstraTol) {
  if (sets.empty()) return x0;
  if (sets.size() == 1) return sets[0](x0);
  const int m = static_cast<int>(sets.size());
  std::vector<Vec> increments(m, Vec::Zero(x0.size()));
  Vec x = x0;
  for (int it = 0; it < max_iter; ++it) {
    double shift = 0.0;
    for (int i = 0; i < m; ++i) {
      const Vec y = sets[i](x + increments[i]);
      const Vec new_inc = x + increments[i] - y;
      shift += (new_inc - increments[i]).norm();
      increments[i] = new_inc;
      x = y;
    }
    if (shift < tol) break;
  }
  return x;
}

double violation(const ConvexBody& C, const Vec& x) {
  double v = 0.0;
  for (const auto& h : C.halfspaces())
    v = std::max(v, h.normal.dot(x) - h.offset);
  if (C.smooth().kind != SmoothKind::None) {
    double r2 = 0.0;
    for (int a : C.smooth().axes) {
      const double d = x[a] - C.smooth().center[a];
      r2 += d * d;
    }
    v = std::max(v, std::sqrt(r2) - C.smooth().radius);
  }
  return v;
}

}  // namespace

Vec project_onto_halfspace(const Halfspace& h, const Vec& x) {
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return x;
  return x - excess * h.normal;
}

Vec orthonormal_complement_vector(const std::vector<Vec>& span, const Vec& seed) {
  Vec v = seed;
  for (const Vec& s : span) v -= v.dot(s) * s;
  const double n = v.norm();
  if (n < 1e-12) throw Error(ErrorCode::ZeroVector, "seed lies in the span");
  return v / n;
}

ConvexBody::ConvexBody(int dim, std::vector<Halfspace> halfspaces,
                       SmoothPart smooth, std::optional<int> lineality_hint)
    : dim_(dim), smooth_(std::move(smooth)), lineality_hint_(lineality_hint) {
  if (dim < 1) throw Error(ErrorCode::InvalidParams, "dim must be >= 1");
  // Normalize normals on ingestion; merge near-duplicate halfspaces keeping
  // the tighter offset.
  for (auto& h : halfspaces) {
    if (static_cast<int>(h.normal.size()) != dim)
      throw Error(ErrorCode::DimMismatch, "halfspace normal dimension");
    const double n = h.normal.norm();
    if (n < 1e-14) throw Error(ErrorCode::ZeroVector, "zero halfspace normal");
    h.normal /= n;
    h.offset /= n;
    bool merged = false;
    for (auto& kept : halfspaces_) {
      if ((kept.normal - h.normal).norm() < 1e-10) {
        kept.offset = std::min(kept.offset, h.offset);
        merged = true;
        break;
      }
    }
    if (!merged) halfspaces_.push_back(h);
  }
  if (smooth_.kind != SmoothKind::None) {
    if (static_cast<int>(smooth_.center.size()) != dim)
      throw Error(ErrorCode::DimMismatch, "smooth center dimension");
    if (smooth_.radius <= 0.0)
      throw Error(ErrorCode::InvalidParams, "smooth radius must be positive");
    for (int a : smooth_.axes)
      if (a < 0 || a >= dim)
        throw Error(ErrorCode::InvalidParams, "smooth axis out of range");
  }
}

ConvexBody ConvexBody::ball(const Vec& center, double radius) {
  SmoothPart s;
  s.kind = SmoothKind::Ball;
  s.center = center;
  s.radius = radius;
  const int d = static_cast<int>(center.size());
  for (int i = 0; i < d; ++i) s.axes.push_back(i);
  return ConvexBody(d, {}, s);
}

ConvexBody ConvexBody::cylinder(int dim, const std::vector<int>& axes,
                                const Vec& center, double radius) {
  SmoothPart s;
  s.kind = SmoothKind::Cylinder;
  s.center = center;
  s.radius = radius;
  s.axes = axes;
  return ConvexBody(dim, {}, s);
}

ConvexBody ConvexBody::from_halfspaces(int dim, std::vector<Halfspace> hs) {
  return ConvexBody(dim, std::move(hs));
}

bool ConvexBody::is_empty() const {
  if (cached_empty_) return *cached_empty_;
  if (halfspaces_.empty() && smooth_.kind == SmoothKind::None) {
    cached_empty_ = false;
    return false;
  }
  // Plain alternating projections suffice for feasibility.
  auto sets = make_projectors(*this);
  Vec x = Vec::Zero(dim_);
  for (int it = 0; it < kDykstraMaxIter; ++it) {
    Vec prev = x;
    for (const auto& p : sets) x = p(x);
    if ((x - prev).norm() < kDykstraTol) break;
  }
  cached_empty_ = violation(*this, x) > kFeasibilityTol;
  if (!*cached_empty_) cached_feasible_ = x;
  return *cached_empty_;
}

bool ConvexBody::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_)
    throw Error(ErrorCode::DimMismatch, "point dimension");
  return violation(*this, x) <= tol;
}

double ConvexBody::support(const Vec& u) const {
  if (smooth_.kind == SmoothKind::None || !halfspaces_.empty())
    throw Error(ErrorCode::NonPolyhedral,
                "support function only available for named smooth bodies");
  double val = 0.0, free_norm2 = 0.0;
  Vec u_axes = Vec::Zero(dim_);
  for (int a : smooth_.axes) u_axes[a] = u[a];
  free_norm2 = (u - u_axes).squaredNorm();
  if (free_norm2 > 1e-24) return std::numeric_limits<double>::infinity();
  val = u.dot(smooth_.center) + smooth_.radius * u_axes.norm();
  return val;
}

Vec ConvexBody::feasible_point() const {
  if (is_empty()) throw Error(ErrorCode::EmptyBody, "feasible_point");
  if (!cached_feasible_) cached_feasible_ = Vec::Zero(dim_);
  return *cached_feasible_;
}

bool AffinePlane::orthonormal(double tol) const {
  return std::abs(dir1.norm() - 1.0) < tol && std::abs(dir2.norm() - 1.0) < tol &&
         std::abs(dir1.dot(dir2)) < tol;
}

ProjectionResult project(const ConvexBody& C, const Vec& x) {
  if (static_cast<int>(x.size()) != C.dim())
    throw Error(ErrorCode::DimMismatch, "project: point dimension");
  if (C.is_empty()) throw Error(ErrorCode::EmptyBody, "project");
  auto sets = make_projectors(C);
  const Vec y = dykstra(sets, x);
  return {y, (x - y).norm()};
}

AffineSubspace lineality_space(const ConvexBody& C) {
  if (C.is_empty()) throw Error(ErrorCode::EmptyBody, "lineality_space");
  const int d = C.dim();
  // Constrained directions: halfspace normals, plus the disc axes of a named
  // smooth part (translation along a constrained axis leaves the disc).
  std::vector<Vec> rows;
  for (const auto& h : C.halfspaces()) rows.push_back(h.normal);
  if (C.smooth().kind != SmoothKind::None) {
    for (int a : C.smooth().axes) {
      Vec e = Vec::Zero(d);
      e[a] = 1.0;
      rows.push_back(e);
    }
  }
  AffineSubspace result;
  result.base = C.feasible_point();
  if (rows.empty()) {
    for (int i = 0; i < d; ++i) {
      Vec e = Vec::Zero(d);
      e[i] = 1.0;
      result.basis.push_back(e);
    }
    return result;
  }
  Mat A(static_cast<int>(rows.size()), d);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) A.row(i) = rows[i];
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double rank_tol = 1e-9 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rank_tol) ++rank;
  for (int i = rank; i < d; ++i) result.basis.push_back(svd.matrixV().col(i));
  return result;
}

int lineality_dim(const ConvexBody& C) {
  if (C.lineality_hint()) return *C.lineality_hint();
  return lineality_space(C).dim();
}

bool is_halfspace_or_slab(const ConvexBody& C) {
  if (C.is_empty()) throw Error(ErrorCode::EmptyBody, "is_halfspace_or_slab");
  return lineality_dim(C) == C.dim() - 1;
}

std::pair<Vec, double> supporting_hyperplane(const ConvexBody& C, const Vec& p,
                                             double tol) {
  const auto pr = project(C, p);
  if (pr.distance <= tol)
    throw Error(ErrorCode::PointInsideBody, "supporting_hyperplane");
  const Vec a = (p - pr.point) / pr.distance;
  return {a, a.dot(pr.point)};
}

double plane_body_distance(const ConvexBody& C, const AffinePlane& plane,
                           int max_iter) {
  if (!plane.orthonormal())
    throw Error(ErrorCode::DegeneratePlane, "plane directions not orthonormal");
  constexpr double kBox = 1e6;
  Vec x = plane.base;
  double dist = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    const auto pr = project(C, x);
    const double s = std::clamp((pr.point - plane.base).dot(plane.dir1), -kBox, kBox);
    const double t = std::clamp((pr.point - plane.base).dot(plane.dir2), -kBox, kBox);
    const Vec next = plane.at(s, t);
    const double d = (next - pr.point).norm();
    if (std::abs(dist - d) < 1e-13 && (next - x).norm() < 1e-12) {
      return d;
    }
    dist = d;
    x = next;
  }
  return dist;
}

}  // namespace minflex
