#include "minflex/weierstrass.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <random>

namespace minflex {

namespace {

constexpr Cplx kI{0.0, 1.0};

// 6th-order central stencils.
constexpr double kD1[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0,
                           3.0 / 4,   -3.0 / 20, 1.0 / 60};
constexpr double kD2[7] = {1.0 / 90,  -3.0 / 20, 3.0 / 2, -49.0 / 18,
                           3.0 / 2,   -3.0 / 20, 1.0 / 90};

int wrap(int j, int n) { return ((j % n) + n) % n; }

struct InteriorRange {
  int i_lo, i_hi, j_lo, j_hi;  // inclusive
};

InteriorRange interior_range(const ParamDomain& d) {
  InteriorRange r;
  r.i_lo = 3;
  r.i_hi = d.nu - 4;
  if (d.periodic_v()) {
    r.j_lo = 0;
    r.j_hi = d.nv - 1;
  } else {
    r.j_lo = 3;
    r.j_hi = d.nv - 4;
  }
  if (r.i_hi - r.i_lo < 3 || r.j_hi - r.j_lo < 3)
    throw Error(ErrorCode::GridTooCoarse, "need at least 4 interior nodes per axis");
  return r;
}

// Interpolatory quadrature weights for one grid edge using a window of 6
// nodes: integrates degree-5 exactly, O(h^7) per edge. offsets are node
// positions relative to the left edge endpoint, in units of h.
Eigen::Matrix<double, 6, 1> edge_weights(const std::array<int, 6>& offsets) {
  Eigen::Matrix<double, 6, 6> V;
  Eigen::Matrix<double, 6, 1> rhs;
  for (int k = 0; k < 6; ++k) {
    rhs[k] = 1.0 / (k + 1);  // int_0^1 t^k dt
    for (int j = 0; j < 6; ++j) V(k, j) = std::pow(static_cast<double>(offsets[j]), k);
  }
  return V.fullPivLu().solve(rhs);
}

// Integral of a grid-sampled function over [x_i, x_{i+1}] (unit h); the
// window is clamped into [0, N-1].
template <typename Getter>
CVec edge_integral(int i, int N, Getter&& g) {
  const int start = std::clamp(i - 2, 0, N - 6);
  std::array<int, 6> offsets;
  for (int k = 0; k < 6; ++k) offsets[k] = start + k - i;
  static std::map<std::array<int, 6>, Eigen::Matrix<double, 6, 1>> cache;
  auto it = cache.find(offsets);
  if (it == cache.end()) it = cache.emplace(offsets, edge_weights(offsets)).first;
  CVec acc = g(start) * it->second[0];
  for (int k = 1; k < 6; ++k) acc += g(start + k) * it->second[k];
  return acc;
}

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

CVec cvec3(Cplx a, Cplx b, Cplx c) {
  CVec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

double null_residual(const CVec& z) {
  Cplx sum_sq = 0.0;
  double norm_sq = 0.0;
  for (int i = 0; i < z.size(); ++i) {
    sum_sq += z[i] * z[i];
    norm_sq += std::norm(z[i]);
  }
  return std::abs(sum_sq) / std::max(norm_sq, 1e-300);
}

CVec spinor_param(Cplx a, Cplx b) {
  return cvec3(a * a - b * b, kI * (a * a + b * b), 2.0 * a * b);
}

CVec real_to_null(const Vec& w) {
  const int n = static_cast<int>(w.size());
  if (n < 3)
    throw Error(ErrorCode::InvalidParams, "real_to_null needs dimension >= 3");
  const double nw = w.norm();
  if (nw <= 0.0) throw Error(ErrorCode::ZeroVector, "real_to_null");
  // Least-aligned coordinate axis as the Gram-Schmidt seed.
  int seed_axis = 0;
  double best = std::abs(w[0]);
  for (int i = 1; i < n; ++i)
    if (std::abs(w[i]) < best) {
      best = std::abs(w[i]);
      seed_axis = i;
    }
  Vec partner = Vec::Unit(n, seed_axis);
  partner -= partner.dot(w) / (nw * nw) * w;
  partner *= nw / partner.norm();
  CVec z(n);
  for (int i = 0; i < n; ++i) z[i] = Cplx(w[i], partner[i]);
  return z;
}

Cplx theta_factor(const ParamDomain& d, ThetaKind theta, Cplx zeta) {
  if (theta == ThetaKind::Dz) {
    // On the annulus chart z = exp(zeta), dz = exp(zeta) dzeta.
    return d.kind == ChartKind::Annulus ? std::exp(zeta) : Cplx(1.0);
  }
  if (d.kind != ChartKind::Annulus)
    throw Error(ErrorCode::InvalidParams, "dz/z is only supported on the annulus");
  return Cplx(1.0);  // dz/z pulls back to dzeta
}

CVec fd_h(const WeierstrassSample& s, int i, int j) {
  const auto& d = s.domain;
  CVec du = CVec::Zero(s.n), dv = CVec::Zero(s.n);
  for (int k = -3; k <= 3; ++k) {
    const double wu = kD1[k + 3] / d.hu();
    const double wv = kD1[k + 3] / d.hv();
    const Vec& fu = s.f_at(i + k, j);
    const int jj = d.periodic_v() ? wrap(j + k, d.nv) : j + k;
    const Vec& fv = s.f_at(i, jj);
    for (int c = 0; c < s.n; ++c) {
      du[c] += wu * fu[c];
      dv[c] += wv * fv[c];
    }
  }
  const CVec df = 0.5 * (du - kI * dv);
  return 2.0 * df / theta_factor(d, s.theta, d.node(i, j));
}

ConformalityReport conformality_residuals(const WeierstrassSample& s) {
  const auto& d = s.domain;
  const InteriorRange r = interior_range(d);
  ConformalityReport report;
  report.min_h = std::numeric_limits<double>::infinity();
  for (int j = r.j_lo; j <= r.j_hi; ++j)
    for (int i = r.i_lo; i <= r.i_hi; ++i) {
      const CVec hc = fd_h(s, i, j);
      report.max_null = std::max(report.max_null, null_residual(hc));
      report.min_h = std::min(report.min_h, hc.norm());
      // Laplacian estimate per component.
      double lap = 0.0;
      for (int c = 0; c < s.n; ++c) {
        double acc = 0.0;
        for (int k = -3; k <= 3; ++k) {
          acc += kD2[k + 3] / (d.hu() * d.hu()) * s.f_at(i + k, j)[c];
          const int jj = d.periodic_v() ? wrap(j + k, d.nv) : j + k;
          acc += kD2[k + 3] / (d.hv() * d.hv()) * s.f_at(i, jj)[c];
        }
        lap = std::max(lap, std::abs(acc));
      }
      report.max_harmonic = std::max(report.max_harmonic, lap);
    }
  report.branched = report.min_h < 1e-10;
  return report;
}

namespace {

// Bilinear interpolation of h * theta_factor on the chart.
CVec interp_H(const WeierstrassSample& s, Cplx zeta) {
  const auto& d = s.domain;
  double su = (zeta.real() - d.u0) / d.hu();
  double sv = (zeta.imag() - d.v0) / d.hv();
  if (d.periodic_v()) {
    const double span = d.nv;
    sv = std::fmod(std::fmod(sv, span) + span, span);
  }
  const double tol = 1e-9;
  if (su < -tol || su > d.nu - 1 + tol ||
      (!d.periodic_v() && (sv < -tol || sv > d.nv - 1 + tol)))
    throw Error(ErrorCode::LoopExitsGrid, "loop point outside chart grid");
  su = std::clamp(su, 0.0, static_cast<double>(d.nu - 1));
  if (!d.periodic_v()) sv = std::clamp(sv, 0.0, static_cast<double>(d.nv - 1));
  const int i0 = std::min(static_cast<int>(su), d.nu - 2);
  const double a = su - i0;
  int j0, j1;
  double b;
  if (d.periodic_v()) {
    j0 = static_cast<int>(sv) % d.nv;
    j1 = (j0 + 1) % d.nv;
    b = sv - static_cast<int>(sv);
  } else {
    j0 = std::min(static_cast<int>(sv), d.nv - 2);
    j1 = j0 + 1;
    b = sv - j0;
  }
  auto H = [&](int i, int j) {
    return CVec(s.h[d.index(i, j)] *
                theta_factor(d, s.theta, d.node(i, j)));
  };
  return CVec((1 - a) * (1 - b) * H(i0, j0) + a * (1 - b) * H(i0 + 1, j0) +
              (1 - a) * b * H(i0, j1) + a * b * H(i0 + 1, j1));
}

Vec loop_integral(const WeierstrassSample& s, const std::vector<Cplx>& loop,
                  int refine) {
  // Refined polyline with `refine` subdivisions per segment, trapezoid rule.
  Vec acc = Vec::Zero(s.n);
  for (size_t seg = 0; seg + 1 < loop.size(); ++seg) {
    for (int k = 0; k < refine; ++k) {
      const double t0 = static_cast<double>(k) / refine;
      const double t1 = static_cast<double>(k + 1) / refine;
      const Cplx z0 = loop[seg] + t0 * (loop[seg + 1] - loop[seg]);
      const Cplx z1 = loop[seg] + t1 * (loop[seg + 1] - loop[seg]);
      const CVec mid = 0.5 * (interp_H(s, z0) + interp_H(s, z1));
      const Cplx dz = z1 - z0;
      for (int c = 0; c < s.n; ++c) acc[c] += (mid[c] * dz).real();
    }
  }
  return acc;
}

}  // namespace

std::vector<Vec> period_integrals(const WeierstrassSample& s) {
  std::vector<Vec> periods;
  for (const auto& loop : s.domain.loops) {
    Cplx gap = loop.empty() ? Cplx(1.0) : loop.front() - loop.back();
    if (s.domain.periodic_v()) {
      const double span = s.domain.v1 - s.domain.v0;
      gap.imag(std::remainder(gap.imag(), span));
    }
    if (loop.size() < 2 || std::abs(gap) > 1e-12)
      throw Error(ErrorCode::InvalidParams, "loops must be closed polylines");
    const Vec coarse = loop_integral(s, loop, 1);
    const Vec fine = loop_integral(s, loop, 2);
    periods.push_back((4.0 * fine - coarse) / 3.0);  // Richardson, O(h^2) rule
  }
  return periods;
}

WeierstrassSample integrate(const ParamDomain& domain, int n,
                            const std::vector<CVec>& h, ThetaKind theta,
                            int p0_i, int p0_j, const Vec& f0) {
  WeierstrassSample s;
  s.domain = domain;
  s.n = n;
  s.theta = theta;
  s.h = h;
  s.p0_i = p0_i;
  s.p0_j = p0_j;
  s.f0 = f0;

  for (const auto& hv : h)
    if (null_residual(hv) > 1e-8)
      throw Error(ErrorCode::InvalidParams, "h leaves the null quadric");
  if (!domain.loops.empty()) {
    for (const Vec& period : period_integrals(s))
      if (period.norm() > 1e-6)
        throw Error(ErrorCode::PeriodObstruction,
                    "nonvanishing real period, integral not well defined");
  }

  const int nu = domain.nu, nv = domain.nv;
  auto H = [&](int i, int j) {
    return CVec(h[domain.index(i, j)] * theta_factor(domain, theta, domain.node(i, j)));
  };
  // Real increment over one u-edge ((i,j) -> (i+1,j)) and one v-edge.
  auto u_edge = [&](int i, int j) {
    const CVec I = edge_integral(i, nu, [&](int k) { return CVec(H(k, j)); });
    Vec out(n);
    for (int c = 0; c < n; ++c) out[c] = (I[c] * domain.hu()).real();
    return out;
  };
  auto v_edge = [&](int i, int j) {
    const CVec I = edge_integral(j, nv, [&](int k) { return CVec(H(i, k)); });
    Vec out(n);
    for (int c = 0; c < n; ++c) out[c] = (I[c] * kI * domain.hv()).real();
    return out;
  };

  auto staircase = [&](int ti, int tj, bool row_first) {
    Vec acc = Vec::Zero(n);
    if (row_first) {
      for (int i = p0_i; i < ti; ++i) acc += u_edge(i, p0_j);
      for (int i = p0_i; i > ti; --i) acc -= u_edge(i - 1, p0_j);
      for (int j = p0_j; j < tj; ++j) acc += v_edge(ti, j);
      for (int j = p0_j; j > tj; --j) acc -= v_edge(ti, j - 1);
    } else {
      for (int j = p0_j; j < tj; ++j) acc += v_edge(p0_i, j);
      for (int j = p0_j; j > tj; --j) acc -= v_edge(p0_i, j - 1);
      for (int i = p0_i; i < ti; ++i) acc += u_edge(i, tj);
      for (int i = p0_i; i > ti; --i) acc -= u_edge(i - 1, tj);
    }
    return Vec(f0 + acc);
  };

  // Fill f: rows from the base row, then columns.
  s.f.assign(nu * nv, Vec::Zero(n));
  std::vector<Vec> base_row(nu);
  base_row[p0_i] = f0;
  for (int i = p0_i + 1; i < nu; ++i) base_row[i] = base_row[i - 1] + u_edge(i - 1, p0_j);
  for (int i = p0_i - 1; i >= 0; --i) base_row[i] = base_row[i + 1] - u_edge(i, p0_j);
  for (int i = 0; i < nu; ++i) {
    s.f[domain.index(i, p0_j)] = base_row[i];
    for (int j = p0_j + 1; j < nv; ++j)
      s.f[domain.index(i, j)] = s.f[domain.index(i, j - 1)] + v_edge(i, j - 1);
    for (int j = p0_j - 1; j >= 0; --j)
      s.f[domain.index(i, j)] = s.f[domain.index(i, j + 1)] - v_edge(i, j);
  }

  // Path-independence spot check: two staircase orders at 50 sampled nodes.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> pick_i(0, nu - 1), pick_j(0, nv - 1);
  for (int k = 0; k < 50; ++k) {
    const int ti = pick_i(rng), tj = pick_j(rng);
    const Vec a = staircase(ti, tj, true);
    const Vec b = staircase(ti, tj, false);
    if ((a - b).norm() > 1e-6)
      throw Error(ErrorCode::PathDisagreement, "staircase paths disagree");
  }
  return s;
}

WeierstrassSample surface_catalogue(const std::string& name,
                                    const CatalogueParams& params) {
  WeierstrassSample s;
  s.n = 3;
  const int g = params.grid;
  const double scale = params.scale;
  Mat R = params.frame.size() ? params.frame : Mat::Identity(3, 3);
  Vec off = params.offset.size() ? params.offset : Vec::Zero(3);

  auto fill = [&](auto&& fval, auto&& hval) {
    s.f.resize(s.domain.nu * s.domain.nv);
    s.h.resize(s.domain.nu * s.domain.nv);
    for (int j = 0; j < s.domain.nv; ++j)
      for (int i = 0; i < s.domain.nu; ++i) {
        const Cplx z = s.domain.node(i, j);
        s.f[s.domain.index(i, j)] = fval(z);
        s.h[s.domain.index(i, j)] = hval(z);
      }
    s.f0 = s.f[s.domain.index(s.p0_i, s.p0_j)];
  };

  if (name == "plane") {
    s.domain = {ChartKind::Rectangle, -1.0, 1.0, -1.0, 1.0, g, g};
    s.theta = ThetaKind::Dz;
    const CVec hp = CVec(R.col(0).cast<Cplx>() - kI * R.col(1).cast<Cplx>()) * scale;
    fill(
        [&](Cplx z) {
          return Vec(scale * (R * vec3(z.real(), z.imag(), 0.0)) + off);
        },
        [&](Cplx) { return hp; });
  } else if (name == "enneper") {
    s.domain = {ChartKind::Disc, -0.7, 0.7, -0.7, 0.7, g, g};
    s.theta = ThetaKind::Dz;
    fill(
        [&](Cplx z) {
          const Cplx g1 = z - z * z * z / 3.0;
          const Cplx g2 = kI * (z + z * z * z / 3.0);
          const Cplx g3 = z * z;
          return Vec(scale * vec3(g1.real(), g2.real(), g3.real()) + off);
        },
        [&](Cplx z) {
          return CVec(scale *
                      cvec3(1.0 - z * z, kI * (1.0 + z * z), 2.0 * z));
        });
  } else if (name == "catenoid") {
    s.domain = {ChartKind::Annulus, -1.0, 1.0, 0.0, 2.0 * M_PI, g, g};
    s.theta = ThetaKind::DzOverZ;
    // Neck loop u = 0 generates the annulus homology.
    std::vector<Cplx> loop;
    for (int j = 0; j <= g; ++j) loop.push_back(Cplx(0.0, 2.0 * M_PI * j / g));
    s.domain.loops.push_back(loop);
    fill(
        [&](Cplx z) {
          return Vec(scale * vec3(std::cosh(z.real()) * std::cos(z.imag()),
                                  std::cosh(z.real()) * std::sin(z.imag()),
                                  z.real()) +
                     off);
        },
        [&](Cplx z) {
          return CVec(scale * cvec3(std::sinh(z), -kI * std::cosh(z), 1.0));
        });
  } else if (name == "helicoid") {
    s.domain = {ChartKind::Rectangle, -1.0, 1.0, 0.0, 2.0 * M_PI, g, g};
    s.theta = ThetaKind::Dz;
    fill(
        [&](Cplx z) {
          return Vec(scale * vec3(std::sinh(z.real()) * std::cos(z.imag()),
                                  std::sinh(z.real()) * std::sin(z.imag()),
                                  z.imag()) +
                     off);
        },
        [&](Cplx z) {
          return CVec(scale * cvec3(std::cosh(z), -kI * std::sinh(z), -kI));
        });
  } else {
    throw Error(ErrorCode::UnknownSurface, name);
  }
  return s;
}

ContainmentReport contained_in(const WeierstrassSample& s, const DomainSpec& omega,
                               bool boundary_only) {
  if (omega.dim() != s.n)
    throw Error(ErrorCode::DimMismatch, "contained_in: ambient dimensions differ");
  ContainmentReport report;
  report.min_clearance = std::numeric_limits<double>::infinity();
  int inside = 0;
  for (int j = 0; j < s.domain.nv; ++j)
    for (int i = 0; i < s.domain.nu; ++i) {
      const bool on_ring = i == 0 || j == 0 || i == s.domain.nu - 1 ||
                           j == s.domain.nv - 1;
      if (boundary_only && !on_ring) continue;
      ++report.nodes_checked;
      const Vec& x = s.f_at(i, j);
      if (contains(omega, x)) {
        ++inside;
        report.min_clearance = std::min(report.min_clearance, clearance(omega, x));
      } else {
        report.min_clearance = 0.0;
        report.violations.push_back({i, j});
      }
    }
  report.fraction = static_cast<double>(inside) / report.nodes_checked;
  return report;
}

namespace {

bool polyline_inside(const DomainSpec& omega, const std::vector<Vec>& pts,
                     int samples = 1000) {
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) total += (pts[i + 1] - pts[i]).norm();
  if (total <= 0.0) return false;
  for (int k = 0; k <= samples; ++k) {
    double target = total * k / samples;
    Vec x = pts.back();
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      const double len = (pts[i + 1] - pts[i]).norm();
      if (target <= len) {
        x = pts[i] + (target / len) * (pts[i + 1] - pts[i]);
        break;
      }
      target -= len;
    }
    if (!contains(omega, x)) return false;
  }
  return true;
}

std::vector<Vec> find_polyline(const Vec& p, const Vec& q, const DomainSpec& omega,
                               unsigned seed) {
  if (polyline_inside(omega, {p, q})) return {p, q};
  const int n = static_cast<int>(p.size());
  const Vec mid = 0.5 * (p + q);
  const double span = std::max(1.0, (q - p).norm());
  // Deterministic detours along coordinate axes first.
  for (double mag : {0.75, 1.5, 3.0, 6.0, 12.0}) {
    for (int a = 0; a < n; ++a)
      for (double sign : {1.0, -1.0}) {
        const Vec w = mid + sign * mag * span * Vec::Unit(n, a);
        if (contains(omega, w) && polyline_inside(omega, {p, w, q}))
          return {p, w, q};
      }
  }
  // Seeded waypoint sampling, one or two intermediate points.
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const double mag = span * (1.0 + trial / 500.0);
    Vec w1(n), w2(n);
    for (int i = 0; i < n; ++i) w1[i] = mid[i] + mag * gauss(rng);
    if (!contains(omega, w1)) continue;
    if (polyline_inside(omega, {p, w1, q})) return {p, w1, q};
    for (int i = 0; i < n; ++i) w2[i] = mid[i] + mag * gauss(rng);
    if (contains(omega, w2) && polyline_inside(omega, {p, w1, w2, q}))
      return {p, w1, w2, q};
  }
  throw Error(ErrorCode::NoPathFound, "no polyline found within sampling budget");
}

}  // namespace

ArcExtension extend_arc(const Vec& p_val, const Vec& q_val, const DomainSpec& omega,
                        int segments, unsigned seed) {
  if (!contains(omega, p_val) || !contains(omega, q_val))
    throw Error(ErrorCode::EndpointOutsideDomain, "extend_arc endpoints");
  if (segments < 1) throw Error(ErrorCode::InvalidParams, "segments must be >= 1");
  const auto polyline = find_polyline(p_val, q_val, omega, seed);

  // Distribute segments across legs proportionally to length.
  std::vector<double> lens;
  double total = 0.0;
  for (size_t i = 0; i + 1 < polyline.size(); ++i) {
    lens.push_back((polyline[i + 1] - polyline[i]).norm());
    total += lens.back();
  }
  const int legs = static_cast<int>(lens.size());
  std::vector<int> per_leg(legs, 1);
  int assigned = legs;
  for (int i = 0; i < legs && assigned < std::max(segments, legs); ++i) {
    const int extra = static_cast<int>(std::lround(
        (std::max(segments, legs) - legs) * lens[i] / total));
    per_leg[i] += extra;
    assigned += extra;
  }

  ArcExtension arc;
  arc.t.push_back(0.0);
  arc.f.push_back(p_val);
  double done = 0.0;
  for (int leg = 0; leg < legs; ++leg) {
    const Vec a = polyline[leg], b = polyline[leg + 1];
    for (int k = 1; k <= per_leg[leg]; ++k) {
      const double frac = static_cast<double>(k) / per_leg[leg];
      const double t = (done + frac * lens[leg]) / total;
      arc.t.push_back(t);
      arc.f.push_back(a + frac * (b - a));
    }
    done += lens[leg];
  }
  // Exact endpoint by construction; snap the final breakpoint to q_val.
  arc.f.back() = q_val;
  arc.t.back() = 1.0;

  for (size_t i = 0; i + 1 < arc.f.size(); ++i) {
    const Vec df = arc.f[i + 1] - arc.f[i];
    const double dt = arc.t[i + 1] - arc.t[i];
    arc.h.push_back(real_to_null(df / dt));
  }
  return arc;
}

void write_obj(const WeierstrassSample& s, const std::string& path) {
  if (s.n != 3) throw Error(ErrorCode::InvalidParams, "OBJ export needs n = 3");
  std::ofstream out(path);
  out.precision(12);
  for (int j = 0; j < s.domain.nv; ++j)
    for (int i = 0; i < s.domain.nu; ++i) {
      const Vec& x = s.f_at(i, j);
      out << "v " << x[0] << " " << x[1] << " " << x[2] << "\n";
    }
  auto id = [&](int i, int j) { return 1 + s.domain.index(i, j); };
  for (int j = 0; j + 1 < s.domain.nv; ++j)
    for (int i = 0; i + 1 < s.domain.nu; ++i) {
      out << "f " << id(i, j) << " " << id(i + 1, j) << " " << id(i + 1, j + 1) << "\n";
      out << "f " << id(i, j) << " " << id(i + 1, j + 1) << " " << id(i, j + 1) << "\n";
    }
}

void write_csv(const WeierstrassSample& s, const std::string& path) {
  std::ofstream out(path);
  out.precision(12);
  out << "u,v";
  for (int c = 0; c < s.n; ++c) out << ",x" << c + 1;
  out << "\n";
  for (int j = 0; j < s.domain.nv; ++j)
    for (int i = 0; i < s.domain.nu; ++i) {
      const Cplx z = s.domain.node(i, j);
      out << z.real() << "," << z.imag();
      const Vec& x = s.f_at(i, j);
      for (int c = 0; c < s.n; ++c) out << "," << x[c];
      out << "\n";
    }
}

}  // namespace minflex
