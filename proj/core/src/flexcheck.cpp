#include "minflex/flexcheck.hpp"

#include <cmath>
#include <sstream>

namespace minflex {

namespace {

constexpr double kInfty = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::vector<Vec> plane_search_directions(const AffinePlane& plane) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {plane.dir1,
          -plane.dir1,
          plane.dir2,
          -plane.dir2,
          inv_sqrt2 * (plane.dir1 + plane.dir2),
          inv_sqrt2 * (plane.dir1 - plane.dir2),
          inv_sqrt2 * (-plane.dir1 + plane.dir2),
          inv_sqrt2 * (-plane.dir1 - plane.dir2)};
}

// Orthonormal basis of the orthogonal complement of the given orthonormal set.
std::vector<Vec> complement_basis(int dim, const std::vector<Vec>& span) {
  std::vector<Vec> all = span;
  std::vector<Vec> result;
  for (int i = 0; i < dim; ++i) {
    Vec e = Vec::Zero(dim);
    e[i] = 1.0;
    for (const Vec& s : all) e -= e.dot(s) * s;
    const double n = e.norm();
    if (n > 1e-9) {
      e /= n;
      all.push_back(e);
      result.push_back(e);
    }
  }
  return result;
}

// A point strictly outside C, used as the anchor of the witness construction.
Vec exterior_point(const ConvexBody& C) {
  const Vec y0 = C.feasible_point();
  if (!C.halfspaces().empty()) {
    const auto& h = C.halfspaces().front();
    return y0 + (h.offset - h.normal.dot(y0) + 2.0 + y0.norm()) * h.normal;
  }
  // Named smooth body: step out along the first constrained axis.
  const auto& s = C.smooth();
  Vec p = s.center;
  p[s.axes.front()] += 2.0 * s.radius;
  return p;
}

// Minimum clearance of Omega over a sampled portion of the plane; used to pin
// delta for the non-convex variants.
double sampled_plane_clearance(const DomainSpec& omega, const AffinePlane& plane,
                               double extent, int n_per_axis) {
  // Coarse scan followed by zooming around the argmin; coarse far scans guard
  // against dips beyond the initial extent.
  double best = kInfty;
  double cs = 0.0, ct = 0.0;
  for (double far : {extent, 10.0 * extent, 100.0 * extent})
    for (int i = 0; i < n_per_axis; ++i)
      for (int j = 0; j < n_per_axis; ++j) {
        const double s = (2.0 * i / (n_per_axis - 1) - 1.0) * far;
        const double t = (2.0 * j / (n_per_axis - 1) - 1.0) * far;
        const double c = clearance(omega, plane.at(s, t));
        if (c < best) {
          best = c;
          cs = s;
          ct = t;
        }
      }
  double ext = 2.0 * extent / (n_per_axis - 1);
  for (int pass = 0; pass < 10; ++pass) {
    for (int i = 0; i < 21; ++i)
      for (int j = 0; j < 21; ++j) {
        const double s = cs + (i / 10.0 - 1.0) * ext;
        const double t = ct + (j / 10.0 - 1.0) * ext;
        const double c = clearance(omega, plane.at(s, t));
        if (c < best) {
          best = c;
          cs = s;
          ct = t;
        }
      }
    ext *= 0.2;
  }
  return best;
}

ClassificationResult unknown_with(const std::string& msg) {
  ClassificationResult r;
  r.verdict = Verdict::Unknown;
  r.diagnostics.push_back(msg);
  return r;
}

// Certify a candidate witness plane against the tube and growth conditions and
// attach it to a Flexible result. delta is the computed plane-to-complement
// distance; certification runs at a hair below it.
bool certify_witness(const DomainSpec& omega, const AffinePlane& plane,
                     double delta, bool complex_line, RuleTag tag,
                     ClassificationResult* out) {
  const double delta_cert = delta * (1.0 - 1e-9);
  if (!(delta > 0.0) || !verify_tube_condition(omega, plane, delta_cert)) {
    out->diagnostics.push_back("tube certification failed at delta=" + fmt(delta));
    return false;
  }
  std::vector<std::pair<double, double>> growth;
  if (!verify_growth_condition(omega, plane, {1.0, 10.0, 100.0}, &growth)) {
    out->diagnostics.push_back("growth certification failed");
    return false;
  }
  out->verdict = Verdict::Flexible;
  out->reason = tag;
  out->witness = Witness{plane, delta_cert, complex_line, std::move(growth)};
  return true;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Flexible: return "Flexible";
    case Verdict::NotFlexible: return "NotFlexible";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

const char* to_string(RuleTag t) {
  switch (t) {
    case RuleTag::HalfspaceOrSlab: return "HalfspaceOrSlab";
    case RuleTag::LiouvilleHalfspaceContainment: return "LiouvilleHalfspaceContainment";
    case RuleTag::HyperbolicFactor: return "HyperbolicFactor";
    case RuleTag::TubePlusGrowth: return "TubePlusGrowth";
    case RuleTag::ConvexComplementRule: return "ConvexComplementRule";
    case RuleTag::UnionChainRule: return "UnionChainRule";
    case RuleTag::ComplexHyperplane: return "ComplexHyperplane";
    case RuleTag::ComplexProductRule: return "ComplexProductRule";
    case RuleTag::None: return "None";
  }
  return "None";
}

Vec apply_J(const Vec& x) {
  if (x.size() % 2 != 0)
    throw Error(ErrorCode::OddDimension, "apply_J needs even dimension");
  Vec y(x.size());
  for (int j = 0; j + 1 < x.size(); j += 2) {
    y[j] = -x[j + 1];
    y[j + 1] = x[j];
  }
  return y;
}

bool verify_tube_condition(const DomainSpec& omega, const AffinePlane& plane,
                           double delta) {
  if (plane.dim() != omega.dim())
    throw Error(ErrorCode::DimMismatch, "verify_tube_condition");
  if (!plane.orthonormal())
    throw Error(ErrorCode::DegeneratePlane, "verify_tube_condition");
  if (std::holds_alternative<FullSpace>(omega.variant)) return true;
  if (const auto* cc = std::get_if<ConvexComplement>(&omega.variant))
    return plane_body_distance(cc->body, plane) >= delta;
  // Sampled certification: multiscale grid (1e4 points) with clearance >= delta
  // everywhere, plus a monotonicity check far out along both directions.
  for (double scale : {1.0, 10.0, 100.0, 1000.0}) {
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        const double s = (2.0 * i / 49.0 - 1.0) * scale;
        const double t = (2.0 * j / 49.0 - 1.0) * scale;
        if (clearance(omega, plane.at(s, t)) < delta) return false;
      }
  }
  for (const Vec& d : plane_search_directions(plane))
    for (double far : {1e4, 1e5, 1e6})
      if (clearance(omega, plane.base + far * d) < delta) return false;
  return true;
}

bool verify_growth_condition(const DomainSpec& omega, const AffinePlane& plane,
                             const std::vector<double>& radii,
                             std::vector<std::pair<double, double>>* achieved) {
  if (plane.dim() != omega.dim())
    throw Error(ErrorCode::DimMismatch, "verify_growth_condition");
  const auto dirs = plane_search_directions(plane);
  for (double r : radii) {
    double found = clearance(omega, plane.base);
    if (found < r) {
      for (const Vec& d : dirs) {
        double step = 1.0;
        for (int k = 0; k < 60 && found < r; ++k) {
          found = std::max(found, clearance(omega, plane.base + step * d));
          step *= 2.0;
        }
        if (found >= r) break;
      }
    }
    if (found < r) return false;
    if (achieved) achieved->push_back({r, found});
  }
  return true;
}

ClassificationResult classify_convex_complement(const ConvexBody& C) {
  const int n = C.dim();
  ClassificationResult result;
  if (n < 3) return unknown_with("ambient dimension below 3");
  if (C.is_empty()) {
    // Empty complement: the domain is all of R^n, which is flexible.
    AffinePlane plane;
    plane.base = Vec::Zero(n);
    plane.dir1 = Vec::Unit(n, 0);
    plane.dir2 = Vec::Unit(n, 1);
    result.diagnostics.push_back("empty body; complement is R^n");
    certify_witness(DomainSpec::full_space(n), plane, 1e3, false,
                    RuleTag::ConvexComplementRule, &result);
    return result;
  }

  const AffineSubspace lin = lineality_space(C);
  const int k = C.lineality_hint() ? *C.lineality_hint() : lin.dim();
  if (k == n - 1) {
    result.verdict = Verdict::NotFlexible;
    result.reason = RuleTag::HalfspaceOrSlab;
    result.diagnostics.push_back("lineality dimension n-1: halfspace or slab");
    return result;
  }
  if (k > n - 1) return unknown_with("body equals R^n; complement empty");

  // k <= n-2: witness plane from the supporting-hyperplane recipe. The
  // hyperplane through an exterior point normal to the projection direction
  // has positive distance to C, so no tilting is needed.
  const DomainSpec omega = DomainSpec::convex_complement(C);
  const Vec p = exterior_point(C);
  const auto pr = project(C, p);
  const Vec nu = (p - pr.point) / pr.distance;

  // Basis of the quotient directions orthogonal to both the lineality space
  // and nu; the witness plane lives in the supporting hyperplane.
  std::vector<Vec> span = lin.basis;
  span.push_back(nu);
  const std::vector<Vec> free_dirs = complement_basis(n, span);

  AffinePlane plane;
  plane.base = p;
  if (free_dirs.size() >= 2) {
    plane.dir1 = free_dirs[0];
    plane.dir2 = free_dirs[1];
  } else if (free_dirs.size() == 1 && !lin.basis.empty()) {
    plane.dir1 = free_dirs[0];
    plane.dir2 = lin.basis[0];
  } else {
    return unknown_with("could not assemble a witness plane");
  }

  const double delta = plane_body_distance(C, plane);
  result.diagnostics.push_back("witness distance " + fmt(delta));
  if (!certify_witness(omega, plane, delta, false,
                       RuleTag::ConvexComplementRule, &result))
    result.verdict = Verdict::Unknown;
  return result;
}

ComplexLinealityReport complex_lineality(const ConvexBody& C) {
  const int d = C.dim();
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "complex_lineality");
  const AffineSubspace lin = lineality_space(C);
  const int k = lin.dim();
  ComplexLinealityReport report;
  report.real_lineality_dim = k;
  if (k == 0) {
    report.complex_lineality_dim = 0;
  } else {
    // dim(V cap JV) is the nullity of [B | -JB].
    Mat M(d, 2 * k);
    for (int i = 0; i < k; ++i) {
      M.col(i) = lin.basis[i];
      M.col(k + i) = -apply_J(lin.basis[i]);
    }
    Eigen::JacobiSVD<Mat> svd(M);
    const auto& sv = svd.singularValues();
    const double tol = 1e-9 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv[i] > tol) ++rank;
    report.complex_lineality_dim = (2 * k - rank) / 2;
  }
  report.m = d / 2 - report.complex_lineality_dim;
  report.factor_note = "C ~ C' x C^" + std::to_string(report.complex_lineality_dim);
  return report;
}

namespace {

// Orthonormal basis of the complex lineality space V cap JV.
std::vector<Vec> complex_lineality_basis(const ConvexBody& C) {
  const AffineSubspace lin = lineality_space(C);
  std::vector<Vec> result;
  const int k = lin.dim();
  if (k == 0) return result;
  const int d = C.dim();
  Mat M(d, 2 * k);
  for (int i = 0; i < k; ++i) {
    M.col(i) = lin.basis[i];
    M.col(k + i) = -apply_J(lin.basis[i]);
  }
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-9 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  Mat B(d, k);
  for (int i = 0; i < k; ++i) B.col(i) = lin.basis[i];
  for (int c = rank; c < 2 * k; ++c) {
    const Vec coeff = svd.matrixV().col(c).head(k);
    Vec v = B * coeff;
    for (const Vec& r : result) v -= v.dot(r) * r;
    const double nv = v.norm();
    if (nv > 1e-9) result.push_back(v / nv);
  }
  return result;
}

// Complex-case growth condition: for each radius find a
// point q on the line such that the radius-r ball inside the complementary
// complex hyperplane through q avoids C with positive clearance.
bool verify_complex_growth(const ConvexBody& C, const AffinePlane& line,
                           const std::vector<double>& radii,
                           std::vector<std::pair<double, double>>* achieved) {
  const int d = C.dim();
  std::vector<Vec> line_span = {line.dir1, line.dir2};
  const std::vector<Vec> hyper = complement_basis(d, line_span);

  auto slice_distance = [&](const Vec& q, double r) {
    // Alternating projections between C and {q + u : u in hyper, |u| <= r}.
    Vec x = q;
    double dist = kInfty;
    for (int it = 0; it < 2000; ++it) {
      const auto pr = project(C, x);
      Vec u = Vec::Zero(d);
      for (const Vec& h : hyper) u += (pr.point - q).dot(h) * h;
      const double un = u.norm();
      if (un > r) u *= r / un;
      const Vec next = q + u;
      const double dnew = (next - pr.point).norm();
      if (std::abs(dist - dnew) < 1e-13) return dnew;
      dist = dnew;
      x = next;
    }
    return dist;
  };

  const auto dirs = plane_search_directions(line);
  for (double r : radii) {
    double found = slice_distance(line.base, r);
    if (found <= 1e-9) {
      found = 0.0;
      for (const Vec& dir : dirs) {
        double step = 1.0;
        for (int k = 0; k < 60; ++k) {
          const double sd = slice_distance(line.base + step * dir, r);
          if (sd > 1e-9) {
            found = sd;
            break;
          }
          step *= 2.0;
        }
        if (found > 1e-9) break;
      }
    }
    if (found <= 1e-9) return false;
    if (achieved) achieved->push_back({r, found});
  }
  return true;
}

// Width of the quotient factor C' along directions orthogonal to the complex
// lineality space, measured through projections of far-out probe points.
double quotient_width(const ConvexBody& C, const std::vector<Vec>& cl_basis) {
  const Vec y0 = C.feasible_point();
  const std::vector<Vec> probe_dirs = complement_basis(C.dim(), cl_basis);
  double width = 0.0;
  for (const Vec& w : probe_dirs) {
    const Vec hi = project(C, y0 + 1e3 * w).point;
    const Vec lo = project(C, y0 - 1e3 * w).point;
    width = std::max(width, w.dot(hi - lo));
  }
  return width;
}

}  // namespace

ClassificationResult classify_complex_complement(const ConvexBody& C) {
  const int d = C.dim();
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "classify_complex_complement");
  const int n = d / 2;
  ClassificationResult result;
  if (n < 2) return unknown_with("complex dimension below 2");
  if (C.is_empty()) {
    result.verdict = Verdict::Flexible;
    result.reason = RuleTag::ComplexProductRule;
    result.diagnostics.push_back("empty body; complement is C^n");
    AffinePlane plane;
    plane.base = Vec::Zero(d);
    plane.dir1 = Vec::Unit(d, 0);
    plane.dir2 = apply_J(plane.dir1);
    result.witness = Witness{plane, 1e3, true, {{1.0, kInfty}, {10.0, kInfty}, {100.0, kInfty}}};
    return result;
  }

  const ComplexLinealityReport rep = complex_lineality(C);
  const std::vector<Vec> cl_basis = complex_lineality_basis(C);
  result.diagnostics.push_back("real lineality " + std::to_string(rep.real_lineality_dim) +
                               ", complex lineality " + std::to_string(rep.complex_lineality_dim) +
                               ", m = " + std::to_string(rep.m));

  if (rep.m == 1) {
    if (quotient_width(C, cl_basis) < 1e-6) {
      result.verdict = Verdict::Flexible;
      result.reason = RuleTag::ComplexHyperplane;
      result.diagnostics.push_back(
          "quotient factor is a point: complex hyperplane complement (Oka); "
          "no tube/growth witness exists for this case");
    } else {
      result.verdict = Verdict::NotFlexible;
      result.reason = RuleTag::HyperbolicFactor;
      result.diagnostics.push_back(
          "quotient factor is a nondegenerate planar convex set: Picard rule");
    }
    return result;
  }

  // m >= 2: complex line witness inside the complex hyperplane cut out of the
  // supporting real hyperplane at an exterior point.
  const DomainSpec omega = DomainSpec::convex_complement(C);
  const Vec p = exterior_point(C);
  const auto pr = project(C, p);
  const Vec nu = (p - pr.point) / pr.distance;

  std::vector<Vec> avoid = cl_basis;
  avoid.push_back(nu);
  const Vec jnu_raw = apply_J(nu);
  Vec jnu = jnu_raw;
  for (const Vec& s : avoid) jnu -= jnu.dot(s) * s;
  if (jnu.norm() > 1e-9) avoid.push_back(jnu / jnu.norm());
  const std::vector<Vec> free_dirs = complement_basis(d, avoid);
  Vec w;
  bool found_dir = false;
  for (const Vec& cand : free_dirs) {
    // The line direction must stay J-compatible and off the complex lineality.
    Vec jw = apply_J(cand);
    bool ok = std::abs(jw.dot(nu)) < 1e-9 && std::abs(jw.dot(jnu_raw)) < 1e-9;
    for (const Vec& cl : cl_basis) ok = ok && std::abs(jw.dot(cl)) < 1e-9;
    if (ok) {
      w = cand;
      found_dir = true;
      break;
    }
  }
  if (!found_dir) return unknown_with("no complex line direction available");

  AffinePlane line;
  line.base = p;
  line.dir1 = w;
  line.dir2 = apply_J(w);

  const double delta = plane_body_distance(C, line);
  result.diagnostics.push_back("complex line distance " + fmt(delta));
  const double delta_cert = delta * (1.0 - 1e-9);
  if (!(delta > 0.0) || !verify_tube_condition(omega, line, delta_cert))
    return unknown_with("complex tube certification failed");
  std::vector<std::pair<double, double>> growth;
  if (!verify_complex_growth(C, line, {1.0, 10.0, 100.0}, &growth))
    return unknown_with("complex growth certification failed");
  result.verdict = Verdict::Flexible;
  result.reason = RuleTag::ComplexProductRule;
  result.witness = Witness{line, delta_cert, true, std::move(growth)};
  return result;
}

ClassificationResult classify_domain(const DomainSpec& omega) {
  ClassificationResult result;
  const int n = omega.dim();
  return std::visit(
      [&](const auto& v) -> ClassificationResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullSpace>) {
          AffinePlane plane;
          plane.base = Vec::Zero(n);
          plane.dir1 = Vec::Unit(n, 0);
          plane.dir2 = Vec::Unit(n, 1);
          certify_witness(omega, plane, 1e3, false, RuleTag::TubePlusGrowth, &result);
          result.diagnostics.push_back("R^n is flexible");
          return result;
        } else if constexpr (std::is_same_v<T, ConvexComplement>) {
          return classify_convex_complement(v.body);
        } else if constexpr (std::is_same_v<T, Wedge>) {
          if (v.angle <= M_PI) {
            result.verdict = Verdict::NotFlexible;
            result.reason = RuleTag::LiouvilleHalfspaceContainment;
            result.diagnostics.push_back(
                v.angle == M_PI ? "wedge of angle pi is a halfspace"
                                : "wedge contained in a halfspace");
            return result;
          }
          // Witness per the wedge example: edge axis crossed with a translate
          // of a supporting line of the cone, through a point on the bisector.
          const double alpha = v.angle / 2.0;
          AffinePlane plane;
          plane.base = v.shift + v.frame * Vec(Eigen::Vector3d(0.0, 1.0, 0.0));
          plane.dir1 = v.frame * Vec(Eigen::Vector3d(1.0, 0.0, 0.0));
          plane.dir2 =
              v.frame * Vec(Eigen::Vector3d(0.0, std::cos(alpha), std::sin(alpha)));
          const double delta = std::sin(alpha);  // line parallel to the cone side
          result.diagnostics.push_back("wedge witness delta " + fmt(delta));
          if (!certify_witness(omega, plane, delta, false, RuleTag::TubePlusGrowth,
                               &result))
            result.verdict = Verdict::Unknown;
          return result;
        } else if constexpr (std::is_same_v<T, QuadricGraph>) {
          AffinePlane plane;
          plane.base = Vec::Zero(4);
          plane.base[3] = 1.0;
          plane.dir1 = Vec::Unit(4, 0);
          plane.dir2 = Vec::Unit(4, 1);
          const double delta =
              sampled_plane_clearance(omega, plane, 10.0, 41) * (1.0 - 1e-3);
          if (!certify_witness(omega, plane, delta, false, RuleTag::TubePlusGrowth,
                               &result))
            result.verdict = Verdict::Unknown;
          return result;
        } else if constexpr (std::is_same_v<T, WedgeGraph>) {
          AffinePlane plane;
          plane.base = Vec::Zero(v.dim);
          plane.base[3] = 1.0;
          plane.dir1 = Vec::Unit(v.dim, 0);
          const double c = v.a2 / 2.0;
          Vec d2 = Vec::Zero(v.dim);
          d2[1] = 1.0;
          d2[3] = c;
          plane.dir2 = d2 / d2.norm();
          const double delta =
              sampled_plane_clearance(omega, plane, 10.0, 41) * (1.0 - 1e-3);
          if (!certify_witness(omega, plane, delta, false, RuleTag::TubePlusGrowth,
                               &result))
            result.verdict = Verdict::Unknown;
          return result;
        } else if constexpr (std::is_same_v<T, HalfspaceDomain>) {
          result.verdict = Verdict::NotFlexible;
          result.reason = RuleTag::LiouvilleHalfspaceContainment;
          result.diagnostics.push_back(
              "harmonic maps from C into a halfspace have constant normal component");
          return result;
        } else if constexpr (std::is_same_v<T, SlabDomain>) {
          result.verdict = Verdict::NotFlexible;
          result.reason = RuleTag::LiouvilleHalfspaceContainment;
          result.diagnostics.push_back("slab is contained in a halfspace");
          return result;
        } else {  // UnionChain
          for (const auto& m : v.members) {
            const auto sub = classify_domain(m);
            if (sub.verdict != Verdict::Flexible)
              return unknown_with("union chain member not certified flexible");
          }
          const auto last = classify_domain(v.members.back());
          result.verdict = Verdict::Flexible;
          result.reason = RuleTag::UnionChainRule;
          result.witness = last.witness;
          result.diagnostics.push_back("increasing union of flexible members");
          return result;
        }
      },
      omega.variant);
}

}  // namespace minflex
