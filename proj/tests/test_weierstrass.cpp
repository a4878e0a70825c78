#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "minflex/weierstrass.hpp"

using namespace minflex;

namespace {

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

constexpr Cplx kI{0.0, 1.0};

// Annulus sample carrying h = g(zeta) * (1, i, 0) with theta = dz.
WeierstrassSample annulus_h(const std::function<Cplx(Cplx)>& g) {
  WeierstrassSample s;
  s.domain = {ChartKind::Annulus, -1.0, 1.0, 0.0, 2.0 * M_PI, 64, 64};
  s.theta = ThetaKind::Dz;
  s.h.resize(64 * 64);
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i) {
      const Cplx z = s.domain.node(i, j);
      s.h[s.domain.index(i, j)] = cvec3(g(z), kI * g(z), 0.0);
    }
  return s;
}

std::vector<Cplx> neck_loop(int steps, bool clockwise) {
  std::vector<Cplx> loop;
  for (int k = 0; k <= steps; ++k) {
    const double v = 2.0 * M_PI * k / steps;
    loop.push_back(Cplx(0.0, clockwise ? 2.0 * M_PI - v : v));
  }
  return loop;
}

}  // namespace

TEST_CASE("null residual basics") {
  CHECK(null_residual(cvec3(1.0, kI, 0.0)) < 1e-15);
  const Cplx w{0.3, 0.7};
  CHECK(null_residual(cvec3(1.0 - w * w, kI * (1.0 + w * w), 2.0 * w)) < 1e-15);
  CHECK(null_residual(cvec3(1.0, 1.0, 1.0)) == doctest::Approx(1.0));
}

TEST_CASE("spinor parameterization lands on the quadric") {
  CHECK((spinor_param(1.0, 0.0) - cvec3(1.0, kI, 0.0)).norm() < 1e-15);
  CHECK((spinor_param(0.0, 1.0) - cvec3(-1.0, kI, 0.0)).norm() < 1e-15);
  CHECK((spinor_param(1.0, 1.0) - cvec3(0.0, 2.0 * kI, 2.0)).norm() < 1e-15);

  std::mt19937 rng(79);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 10000; ++k) {
    const Cplx a{gauss(rng), gauss(rng)}, b{gauss(rng), gauss(rng)};
    CHECK(null_residual(spinor_param(a, b)) <= 1e-14);
  }
}

TEST_CASE("real_to_null lifts real vectors") {
  std::mt19937 rng(83);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 10000; ++k) {
    const int n = 3 + k % 3;
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = gauss(rng);
    if (w.norm() < 1e-9) continue;
    const CVec z = real_to_null(w);
    CHECK(null_residual(z) <= 1e-14);
    CHECK((z.real() - w).norm() < 1e-12);
    CHECK(z.imag().norm() == doctest::Approx(w.norm()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(real_to_null(Vec::Zero(3)), Error);
}

TEST_CASE("catalogue surfaces satisfy the residual bounds") {
  for (const std::string name : {"plane", "enneper", "catenoid", "helicoid"}) {
    const WeierstrassSample s = surface_catalogue(name);
    const auto rep = conformality_residuals(s);
    CAPTURE(name);
    CHECK(rep.max_null <= 1e-6);
    CHECK(rep.max_harmonic <= 1e-6);
    CHECK(rep.min_h > 0.0);
    CHECK(!rep.branched);
  }
  CHECK_THROWS_AS(surface_catalogue("torus"), Error);
}

TEST_CASE("first-order conformality: |f_u| = |f_v|, f_u . f_v = 0") {
  for (const std::string name : {"enneper", "catenoid", "helicoid"}) {
    const WeierstrassSample s = surface_catalogue(name);
    for (int j = 8; j < s.domain.nv - 8; j += 7)
      for (int i = 8; i < s.domain.nu - 8; i += 7) {
        const Cplx tf = theta_factor(s.domain, s.theta, s.domain.node(i, j));
        const CVec hq = fd_h(s, i, j);
        Vec fu(s.n), fv(s.n);
        for (int c = 0; c < s.n; ++c) {
          fu[c] = (hq[c] * tf).real();
          fv[c] = -(hq[c] * tf).imag();
        }
        CHECK(std::abs(fu.norm() - fv.norm()) <= 1e-6);
        CHECK(std::abs(fu.dot(fv)) <= 1e-6);
      }
  }
}

TEST_CASE("non-conformal data is flagged") {
  WeierstrassSample s;
  s.domain = {ChartKind::Rectangle, -1.0, 1.0, -1.0, 1.0, 64, 64};
  s.theta = ThetaKind::Dz;
  s.f.resize(64 * 64);
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i) {
      const Cplx z = s.domain.node(i, j);
      s.f[s.domain.index(i, j)] = vec3(z.real(), z.imag(), z.real() * z.real());
    }
  CHECK(conformality_residuals(s).max_null > 0.1);
}

TEST_CASE("grids that are too coarse are rejected") {
  WeierstrassSample s;
  s.domain = {ChartKind::Rectangle, -1.0, 1.0, -1.0, 1.0, 8, 8};
  s.f.assign(64, Vec::Zero(3));
  CHECK_THROWS_AS(conformality_residuals(s), Error);
}

TEST_CASE("catenoid neck period vanishes") {
  const WeierstrassSample s = surface_catalogue("catenoid");
  const auto periods = period_integrals(s);
  REQUIRE(periods.size() == 1);
  CHECK(periods[0].norm() <= 1e-8);
}

TEST_CASE("contractible loops have vanishing periods") {
  WeierstrassSample s = surface_catalogue("enneper");
  std::vector<Cplx> loop;
  for (int k = 0; k <= 200; ++k) {
    const double a = 2.0 * M_PI * k / 200;
    loop.push_back(Cplx(0.4 * std::cos(a), 0.4 * std::sin(a)));
  }
  s.domain.loops.push_back(loop);
  CHECK(period_integrals(s).back().norm() <= 1e-8);

  s.domain.loops.back().push_back(Cplx(5.0, 0.0));  // leaves the chart
  s.domain.loops.back().push_back(loop.front());
  CHECK_THROWS_AS(period_integrals(s), Error);
}

TEST_CASE("residue data produces the expected period") {
  // h theta = (1, i, 0) e^{-zeta} e^{zeta} dzeta on the annulus chart; the
  // clockwise neck loop picks up Re of -2 pi i (1, i, 0) = (0, 2 pi, 0).
  WeierstrassSample s = annulus_h([](Cplx z) { return std::exp(-z); });
  s.domain.loops.push_back(neck_loop(256, true));
  const auto periods = period_integrals(s);
  REQUIRE(periods.size() == 1);
  CHECK(std::abs(periods[0][0]) <= 1e-6);
  CHECK(periods[0][1] == doctest::Approx(2.0 * M_PI).epsilon(1e-6 / (2.0 * M_PI)));
  // Integration must refuse this data.
  CHECK_THROWS_AS(
      integrate(s.domain, 3, s.h, s.theta, 0, 0, Vec::Zero(3)), Error);
}

TEST_CASE("periods are linear in h") {
  std::mt19937 rng(89);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  WeierstrassSample s1 = annulus_h([](Cplx z) { return std::exp(-z); });
  WeierstrassSample s2 = annulus_h([](Cplx z) { return std::exp(-2.0 * z); });
  s1.domain.loops.push_back(neck_loop(256, true));
  s2.domain.loops = s1.domain.loops;
  const Vec p1 = period_integrals(s1)[0];
  const Vec p2 = period_integrals(s2)[0];
  for (int k = 0; k < 5; ++k) {
    const double a = coef(rng), b = coef(rng);
    WeierstrassSample mix = s1;
    for (size_t i = 0; i < mix.h.size(); ++i)
      mix.h[i] = a * s1.h[i] + b * s2.h[i];
    CHECK((period_integrals(mix)[0] - (a * p1 + b * p2)).norm() <= 1e-8);
  }
}

TEST_CASE("constant h integrates to a tilted plane exactly") {
  ParamDomain d{ChartKind::Disc, -1.0, 1.0, -1.0, 1.0, 32, 32};
  std::vector<CVec> h(32 * 32, cvec3(1.0, kI, 0.0));
  const auto s = integrate(d, 3, h, ThetaKind::Dz, 16, 16, Vec::Zero(3));
  const Cplx z0 = d.node(16, 16);
  for (int j = 0; j < 32; ++j)
    for (int i = 0; i < 32; ++i) {
      const Cplx z = d.node(i, j) - z0;
      // f = Re((z, iz, 0)) = (Re z, -Im z, 0)
      CHECK((s.f_at(i, j) - vec3(z.real(), -z.imag(), 0.0)).norm() < 1e-12);
    }
}

TEST_CASE("round trip: integrate catalogue h and recover f and h") {
  for (const std::string name : {"plane", "enneper", "catenoid", "helicoid"}) {
    const WeierstrassSample ref = surface_catalogue(name);
    const int ci = ref.domain.nu / 2, cj = ref.domain.nv / 2;
    const auto s = integrate(ref.domain, 3, ref.h, ref.theta, ci, cj,
                             ref.f_at(ci, cj));
    CAPTURE(name);
    double max_f = 0.0;
    for (int j = 0; j < ref.domain.nv; ++j)
      for (int i = 0; i < ref.domain.nu; ++i)
        max_f = std::max(max_f, (s.f_at(i, j) - ref.f_at(i, j)).norm());
    CHECK(max_f <= 1e-5);

    double max_h = 0.0;
    const int lo = 3, ihi = ref.domain.nu - 4;
    const int jlo = ref.domain.periodic_v() ? 0 : 3;
    const int jhi = ref.domain.periodic_v() ? ref.domain.nv - 1 : ref.domain.nv - 4;
    for (int j = jlo; j <= jhi; j += 3)
      for (int i = lo; i <= ihi; i += 3)
        max_h = std::max(
            max_h, (fd_h(s, i, j) - ref.h_at(i, j)).cwiseAbs().maxCoeff());
    CHECK(max_h <= 1e-5);
  }
}

TEST_CASE("containment scans") {
  CatalogueParams plane_at_one;
  plane_at_one.offset = vec3(0, 0, 1);
  const auto plane = surface_catalogue("plane", plane_at_one);
  const auto upper = DomainSpec::halfspace(vec3(0, 0, 1), 0.0);
  auto rep = contained_in(plane, upper);
  CHECK(rep.fraction == 1.0);
  CHECK(rep.min_clearance == doctest::Approx(1.0));
  CHECK(rep.violations.empty());

  const auto helicoid = surface_catalogue("helicoid");
  auto bad = contained_in(helicoid, DomainSpec::halfspace(vec3(0, 0, 1), 1e-9));
  CHECK(!bad.violations.empty());
  CHECK(bad.fraction < 1.0);

  CatalogueParams far;
  far.scale = 0.1;
  far.offset = vec3(3, 0, 0);
  const auto enneper = surface_catalogue("enneper", far);
  const auto ballc =
      DomainSpec::convex_complement(ConvexBody::ball(Vec::Zero(3), 1.0));
  auto good = contained_in(enneper, ballc);
  CHECK(good.fraction == 1.0);
  CHECK(good.min_clearance >= 1.5);

  auto ring = contained_in(enneper, ballc, true);
  CHECK(ring.nodes_checked < good.nodes_checked);
  CHECK(ring.fraction == 1.0);

  CHECK_THROWS_AS(contained_in(plane, DomainSpec::full_space(4)), Error);
}

TEST_CASE("straight arcs are exact") {
  const auto arc =
      extend_arc(Vec::Zero(3), vec3(1, 2, 3), DomainSpec::full_space(3), 1);
  REQUIRE(arc.h.size() == 1);
  CHECK((arc.f.back() - vec3(1, 2, 3)).norm() <= 1e-12);
  CHECK((arc.h[0].real() - vec3(1, 2, 3)).norm() < 1e-12);
  CHECK(null_residual(arc.h[0]) <= 1e-14);
}

TEST_CASE("arcs detour around obstacles") {
  const auto ballc =
      DomainSpec::convex_complement(ConvexBody::ball(Vec::Zero(3), 1.0));
  const auto arc = extend_arc(vec3(2, 0, 0), vec3(-2, 0, 0), ballc, 8);
  CHECK((arc.f.front() - vec3(2, 0, 0)).norm() <= 1e-12);
  CHECK((arc.f.back() - vec3(-2, 0, 0)).norm() <= 1e-12);
  // Reconstruct f(t) along the polyline and verify membership densely.
  for (int k = 0; k <= 1000; ++k) {
    const double t = static_cast<double>(k) / 1000;
    size_t seg = 0;
    while (seg + 2 < arc.t.size() && arc.t[seg + 1] < t) ++seg;
    const double lam = (t - arc.t[seg]) / (arc.t[seg + 1] - arc.t[seg]);
    const Vec x = arc.f[seg] + lam * (arc.f[seg + 1] - arc.f[seg]);
    CHECK(contains(ballc, x));
  }
  // Definition-level check: d/dt f = Re(h) on segment interiors.
  for (size_t seg = 0; seg + 1 < arc.f.size(); ++seg) {
    const Vec deriv =
        (arc.f[seg + 1] - arc.f[seg]) / (arc.t[seg + 1] - arc.t[seg]);
    CHECK((deriv - arc.h[seg].real()).norm() <= 1e-8);
    CHECK(null_residual(arc.h[seg]) <= 1e-14);
  }
}

TEST_CASE("arc endpoints outside the domain are rejected") {
  const auto ballc =
      DomainSpec::convex_complement(ConvexBody::ball(Vec::Zero(3), 1.0));
  CHECK_THROWS_AS(extend_arc(Vec::Zero(3), vec3(2, 0, 0), ballc, 4), Error);
}

TEST_CASE("mesh exports") {
  const auto s = surface_catalogue("enneper", {.grid = 16});
  const std::string obj = "/tmp/minflex_test_mesh.obj";
  const std::string csv = "/tmp/minflex_test_mesh.csv";
  write_obj(s, obj);
  write_csv(s, csv);
  std::ifstream fo(obj);
  int verts = 0, faces = 0;
  std::string line;
  while (std::getline(fo, line)) {
    if (line.rfind("v ", 0) == 0) ++verts;
    if (line.rfind("f ", 0) == 0) ++faces;
  }
  CHECK(verts == 16 * 16);
  CHECK(faces == 2 * 15 * 15);
  std::ifstream fc(csv);
  int rows = 0;
  while (std::getline(fc, line)) ++rows;
  CHECK(rows == 16 * 16 + 1);
  std::remove(obj.c_str());
  std::remove(csv.c_str());
}

TEST_CASE("theta factors") {
  ParamDomain planar{ChartKind::Disc, -1, 1, -1, 1, 16, 16};
  ParamDomain ann{ChartKind::Annulus, -1, 1, 0, 2 * M_PI, 16, 16};
  CHECK(theta_factor(planar, ThetaKind::Dz, {0.5, 0.5}) == Cplx(1.0));
  CHECK(theta_factor(ann, ThetaKind::DzOverZ, {0.5, 0.5}) == Cplx(1.0));
  const Cplx z{0.3, 1.2};
  CHECK(std::abs(theta_factor(ann, ThetaKind::Dz, z) - std::exp(z)) < 1e-15);
  CHECK_THROWS_AS(theta_factor(planar, ThetaKind::DzOverZ, z), Error);
}
