#include "minflex/domains.hpp"

#include <cmath>
#include <limits>

namespace minflex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec wedge_canonical(const Wedge& w, const Vec& x) {
  return w.frame.transpose() * (x - w.shift);
}

double quadric_height(const QuadricGraph& q, double y1, double y2, double y3) {
  return -q.a1 * y1 * y1 - q.a2 * y2 * y2 + q.a3 * y3 * y3;
}

// Squared distance from (x', x4) to the graph x4 = g(x'). The stationarity
// conditions decouple: with t = g(y) - x4, the minimizer satisfies
// y1 = p1/(1-2a1 t), y2 = p2/(1-2a2 t), y3 = p3/(1+2a3 t), so the problem
// reduces to the scalar root equation g(y(t)) - x4 - t = 0, scanned between
// the poles and bisected at sign changes.
double quadric_boundary_distance(const QuadricGraph& q, const Vec& x) {
  const Eigen::Vector3d p(x[0], x[1], x[2]);
  const double x4 = x[3];
  auto value = [&](const Eigen::Vector3d& y) {
    const double g = quadric_height(q, y[0], y[1], y[2]);
    return (y - p).squaredNorm() + (g - x4) * (g - x4);
  };
  auto y_of = [&](double t) {
    return Eigen::Vector3d(p[0] / (1.0 - 2.0 * q.a1 * t),
                           p[1] / (1.0 - 2.0 * q.a2 * t),
                           p[2] / (1.0 + 2.0 * q.a3 * t));
  };
  auto phi = [&](double t) {
    const Eigen::Vector3d y = y_of(t);
    return quadric_height(q, y[0], y[1], y[2]) - x4 - t;
  };

  // |t| at the optimum is bounded by the vertical drop.
  const double T = std::abs(quadric_height(q, p[0], p[1], p[2]) - x4) + 1.0;
  std::vector<double> cuts = {-T, T};
  if (q.a1 > 0.0) cuts.push_back(1.0 / (2.0 * q.a1));
  cuts.push_back(1.0 / (2.0 * q.a2));
  if (q.a3 != 0.0) cuts.push_back(-1.0 / (2.0 * q.a3));
  std::sort(cuts.begin(), cuts.end());

  double best = kInf;
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = std::max(cuts[c], -T) + 1e-12;
    const double hi = std::min(cuts[c + 1], T) - 1e-12;
    if (hi <= lo) continue;
    const int N = 256;
    double prev_t = lo, prev_phi = phi(lo);
    for (int k = 1; k <= N; ++k) {
      const double t = lo + (hi - lo) * k / N;
      const double ph = phi(t);
      if (std::isfinite(prev_phi) && std::isfinite(ph) &&
          ((prev_phi <= 0.0) != (ph <= 0.0))) {
        double a = prev_t, b = t;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (a + b);
          if ((phi(a) <= 0.0) == (phi(mid) <= 0.0)) a = mid; else b = mid;
        }
        best = std::min(best, value(y_of(0.5 * (a + b))));
      }
      prev_t = t;
      prev_phi = ph;
    }
  }

  // Degenerate branches: a coordinate of p vanishes and t sits at the pole,
  // leaving that coordinate free. The free square w >= 0 minimizes a quadratic.
  auto branch = [&](double t_pole, double coeff, int free_axis) {
    Eigen::Vector3d y = y_of(t_pole + 1e-300);  // other coordinates
    y[free_axis] = 0.0;
    const double c0 = quadric_height(q, y[0], y[1], y[2]);
    // minimize w + (c0 + coeff*w - x4 - ... )^2 over w = y_free^2 >= 0 with
    // the full objective value(y) recomputed at the candidate.
    const double denom = 2.0 * coeff * coeff;
    if (denom <= 0.0) return;
    const double w = (x4 - c0) / coeff - 1.0 / denom;
    if (w > 0.0) {
      y[free_axis] = std::sqrt(w);
      best = std::min(best, value(y));
    }
  };
  if (q.a1 > 0.0 && std::abs(p[0]) < 1e-12) branch(1.0 / (2.0 * q.a1), -q.a1, 0);
  if (std::abs(p[1]) < 1e-12) branch(1.0 / (2.0 * q.a2), -q.a2, 1);
  if (q.a3 != 0.0 && std::abs(p[2]) < 1e-12) branch(-1.0 / (2.0 * q.a3), q.a3, 2);

  return std::sqrt(best);
}

// Piecewise-linear boundary x4 = -a2|x2| + a3|x3|: exact distance by
// enumerating quadrant planes, ridge lines, and the edge line.
double wedge_graph_boundary_distance(const WedgeGraph& w, const Vec& x) {
  const double x2 = x[1], x3 = x[2], x4 = x[3];
  double best = kInf;
  for (int s2 : {-1, 1})
    for (int s3 : {-1, 1}) {
      // Plane x4 + a2 s2 x2 - a3 s3 x3 = 0 restricted to s2 y2 >= 0, s3 y3 >= 0.
      const Eigen::Vector3d n(w.a2 * s2, -w.a3 * s3, 1.0);
      const Eigen::Vector3d pt(x2, x3, x4);
      const double dist = n.dot(pt) / n.norm();
      const Eigen::Vector3d foot = pt - dist * n / n.norm();
      if (s2 * foot[0] >= 0.0 && s3 * foot[1] >= 0.0)
        best = std::min(best, std::abs(dist));
    }
  // Ridge y2 = 0: boundary x4 = a3|x3|; parameterize by y3 with sign s3.
  for (int s3 : {-1, 1}) {
    // Line (0, t, a3 s3 t), t s3 >= 0 in (y2, y3, y4) coordinates.
    const double denom = 1.0 + w.a3 * w.a3;
    double t = (x3 + w.a3 * static_cast<double>(s3) * x4) / denom;
    if (t * s3 < 0.0) t = 0.0;
    const double d2 = x2 * x2 + (x3 - t) * (x3 - t) +
                      (x4 - w.a3 * s3 * t) * (x4 - w.a3 * s3 * t);
    best = std::min(best, std::sqrt(d2));
  }
  // Ridge y3 = 0: boundary x4 = -a2|x2|.
  for (int s2 : {-1, 1}) {
    const double denom = 1.0 + w.a2 * w.a2;
    double t = (x2 - w.a2 * static_cast<double>(s2) * x4) / denom;
    if (t * s2 < 0.0) t = 0.0;
    const double d2 = (x2 - t) * (x2 - t) + x3 * x3 +
                      (x4 + w.a2 * s2 * t) * (x4 + w.a2 * s2 * t);
    best = std::min(best, std::sqrt(d2));
  }
  return best;
}

double wedge_clearance_2d(double angle, double x2, double x3) {
  const double r = std::hypot(x2, x3);
  if (r == 0.0) return 0.0;
  const double psi = std::atan2(x3, x2);
  if (std::abs(psi) >= angle / 2.0) return 0.0;
  double best = r;  // vertex of the complement cone
  for (double beta : {angle / 2.0, -angle / 2.0}) {
    const double delta = std::abs(psi - beta);
    if (delta <= M_PI / 2.0) best = std::min(best, r * std::sin(delta));
  }
  return best;
}

}  // namespace

int DomainSpec::dim() const {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullSpace>) return v.dim;
        if constexpr (std::is_same_v<T, ConvexComplement>) return v.body.dim();
        if constexpr (std::is_same_v<T, Wedge>) return 3;
        if constexpr (std::is_same_v<T, QuadricGraph>) return 4;
        if constexpr (std::is_same_v<T, WedgeGraph>) return v.dim;
        if constexpr (std::is_same_v<T, HalfspaceDomain>)
          return static_cast<int>(v.normal.size());
        if constexpr (std::is_same_v<T, SlabDomain>)
          return static_cast<int>(v.normal.size());
        if constexpr (std::is_same_v<T, UnionChain>)
          return v.members.empty() ? 0 : v.members.front().dim();
        return 0;
      },
      variant);
}

DomainSpec DomainSpec::full_space(int dim) { return {FullSpace{dim}}; }

DomainSpec DomainSpec::convex_complement(ConvexBody body) {
  return {ConvexComplement{std::move(body)}};
}

DomainSpec DomainSpec::wedge(double angle, Mat frame, Vec shift) {
  if (angle <= 0.0 || angle >= 2.0 * M_PI)
    throw Error(ErrorCode::InvalidParams, "wedge angle must be in (0, 2pi)");
  if (frame.size() == 0) frame = Mat::Identity(3, 3);
  if (shift.size() == 0) shift = Vec::Zero(3);
  if (frame.rows() != 3 || frame.cols() != 3 || shift.size() != 3)
    throw Error(ErrorCode::DimMismatch, "wedge frame must be 3x3");
  return {Wedge{angle, std::move(frame), std::move(shift)}};
}

DomainSpec DomainSpec::quadric_graph(double a1, double a2, double a3) {
  if (a1 < 0.0 || a2 <= 0.0)
    throw Error(ErrorCode::InvalidParams, "quadric graph needs a1 >= 0, a2 > 0");
  return {QuadricGraph{a1, a2, a3}};
}

DomainSpec DomainSpec::wedge_graph(double a2, double a3, int dim) {
  if (a2 <= 0.0) throw Error(ErrorCode::InvalidParams, "wedge graph needs a2 > 0");
  if (dim < 4) throw Error(ErrorCode::InvalidParams, "wedge graph needs dim >= 4");
  return {WedgeGraph{a2, a3, dim}};
}

DomainSpec DomainSpec::halfspace(Vec normal, double offset) {
  const double n = normal.norm();
  if (n < 1e-14) throw Error(ErrorCode::ZeroVector, "halfspace normal");
  return {HalfspaceDomain{normal / n, offset / n}};
}

DomainSpec DomainSpec::slab(Vec normal, double lo, double hi) {
  const double n = normal.norm();
  if (n < 1e-14) throw Error(ErrorCode::ZeroVector, "slab normal");
  if (lo >= hi) throw Error(ErrorCode::InvalidParams, "slab needs lo < hi");
  return {SlabDomain{normal / n, lo / n, hi / n}};
}

DomainSpec DomainSpec::union_chain(std::vector<DomainSpec> members) {
  if (members.empty())
    throw Error(ErrorCode::InvalidParams, "union chain needs members");
  return {UnionChain{std::move(members)}};
}

bool contains(const DomainSpec& omega, const Vec& x) {
  if (static_cast<int>(x.size()) != omega.dim())
    throw Error(ErrorCode::DimMismatch, "contains: point dimension");
  return std::visit(
      [&x](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullSpace>) {
          return true;
        } else if constexpr (std::is_same_v<T, ConvexComplement>) {
          return !v.body.contains(x, 0.0);
        } else if constexpr (std::is_same_v<T, Wedge>) {
          const Vec c = wedge_canonical(v, x);
          const double r = std::hypot(c[1], c[2]);
          if (r == 0.0) return false;
          return std::abs(std::atan2(c[2], c[1])) < v.angle / 2.0;
        } else if constexpr (std::is_same_v<T, QuadricGraph>) {
          return x[3] > quadric_height(v, x[0], x[1], x[2]);
        } else if constexpr (std::is_same_v<T, WedgeGraph>) {
          return x[3] > -v.a2 * std::abs(x[1]) + v.a3 * std::abs(x[2]);
        } else if constexpr (std::is_same_v<T, HalfspaceDomain>) {
          return v.normal.dot(x) > v.offset;
        } else if constexpr (std::is_same_v<T, SlabDomain>) {
          const double s = v.normal.dot(x);
          return s > v.lo && s < v.hi;
        } else {  // UnionChain
          for (const auto& m : v.members)
            if (contains(m, x)) return true;
          return false;
        }
      },
      omega.variant);
}

double clearance(const DomainSpec& omega, const Vec& x) {
  if (!contains(omega, x)) return 0.0;
  return std::visit(
      [&x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullSpace>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, ConvexComplement>) {
          return project(v.body, x).distance;
        } else if constexpr (std::is_same_v<T, Wedge>) {
          const Vec c = wedge_canonical(v, x);
          return wedge_clearance_2d(v.angle, c[1], c[2]);
        } else if constexpr (std::is_same_v<T, QuadricGraph>) {
          return quadric_boundary_distance(v, x);
        } else if constexpr (std::is_same_v<T, WedgeGraph>) {
          return wedge_graph_boundary_distance(v, x);
        } else if constexpr (std::is_same_v<T, HalfspaceDomain>) {
          return v.normal.dot(x) - v.offset;
        } else if constexpr (std::is_same_v<T, SlabDomain>) {
          const double s = v.normal.dot(x);
          return std::min(s - v.lo, v.hi - s);
        } else {  // UnionChain
          double best = 0.0;
          for (const auto& m : v.members) best = std::max(best, clearance(m, x));
          return best;
        }
      },
      omega.variant);
}

}  // namespace minflex
