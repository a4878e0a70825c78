#pragma once

#include <complex>
#include <string>

#include "minflex/domains.hpp"

namespace minflex {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

// Relative residual |sum z_i^2| / max(sum |z_i|^2, eps); zero iff z lies on
// the null quadric up to round-off.
double null_residual(const CVec& z);

// (a^2 - b^2, i(a^2 + b^2), 2ab): the standard parameterization of the null
// quadric in C^3.
CVec spinor_param(Cplx a, Cplx b);

// z = w + i w' with w' orthogonal to w and |w'| = |w|; the partner direction
// is Gram-Schmidt of the least-aligned coordinate axis.
CVec real_to_null(const Vec& w);

enum class ChartKind { Disc, Annulus, Rectangle, Strip };
enum class ThetaKind { Dz, DzOverZ };

// Structured chart grid. All kinds live on a (u, v) rectangle; the annulus is
// the chart zeta with z = exp(zeta), periodic in v over [0, 2pi).
struct ParamDomain {
  ChartKind kind = ChartKind::Rectangle;
  double u0 = -1.0, u1 = 1.0, v0 = -1.0, v1 = 1.0;
  int nu = 64, nv = 64;
  std::vector<std::vector<Cplx>> loops;  // closed chart curves (first == last)

  bool periodic_v() const { return kind == ChartKind::Annulus; }
  double hu() const { return (u1 - u0) / (nu - 1); }
  double hv() const { return periodic_v() ? (v1 - v0) / nv : (v1 - v0) / (nv - 1); }
  Cplx node(int i, int j) const { return {u0 + i * hu(), v0 + j * hv()}; }
  int index(int i, int j) const { return j * nu + i; }
};

struct WeierstrassSample {
  ParamDomain domain;
  int n = 3;                 // ambient dimension
  ThetaKind theta = ThetaKind::Dz;
  std::vector<Vec> f;        // grid of real n-vectors (may be empty pre-integration)
  std::vector<CVec> h;       // grid of complex n-vectors, h = 2 df / theta
  int p0_i = 0, p0_j = 0;    // base point
  Vec f0;

  const Vec& f_at(int i, int j) const { return f[domain.index(i, j)]; }
  const CVec& h_at(int i, int j) const { return h[domain.index(i, j)]; }
};

// Chart coefficient of theta: h theta = h * theta_factor(zeta) * dzeta.
Cplx theta_factor(const ParamDomain& d, ThetaKind theta, Cplx zeta);

struct ConformalityReport {
  double max_null = 0.0;      // of 2 df / theta against the quadric
  double max_harmonic = 0.0;  // Laplacian estimate
  double min_h = 0.0;         // flags branch points when ~0
  bool branched = false;
};

// Residual scan from f by high-order central differences on interior nodes
// (three boundary rings excluded on non-periodic axes).
ConformalityReport conformality_residuals(const WeierstrassSample& s);

// 2 df / theta at an interior node, by the same stencils.
CVec fd_h(const WeierstrassSample& s, int i, int j);

// Re closed-loop integrals of h theta (bilinear interpolation, composite
// trapezoid with Richardson extrapolation over a refined polyline).
std::vector<Vec> period_integrals(const WeierstrassSample& s);

// Enneper-Weierstrass integration f(p) = f0 + int Re(h theta) along grid
// edges; checks path independence at 50 sampled nodes.
WeierstrassSample integrate(const ParamDomain& domain, int n,
                            const std::vector<CVec>& h, ThetaKind theta,
                            int p0_i, int p0_j, const Vec& f0);

struct CatalogueParams {
  int grid = 64;
  double scale = 1.0;
  Mat frame;   // optional AO(3) rotation (plane)
  Vec offset;  // optional translation
};

// plane | enneper | catenoid | helicoid, with closed-form f and h.
WeierstrassSample surface_catalogue(const std::string& name,
                                    const CatalogueParams& params = {});

struct ContainmentReport {
  double fraction = 0.0;
  double min_clearance = 0.0;
  int nodes_checked = 0;
  std::vector<std::pair<int, int>> violations;
};

// Grid containment scan against Omega; boundary_only restricts to the
// outermost grid ring (the f(bK) hypothesis).
ContainmentReport contained_in(const WeierstrassSample& s, const DomainSpec& omega,
                               bool boundary_only = false);

struct ArcExtension {
  std::vector<double> t;   // breakpoints in [0, 1]
  std::vector<CVec> h;     // piecewise constant per segment
  std::vector<Vec> f;      // values at breakpoints (telescoping exact)
};

// Desk-scale arc extension: polyline from p_val to q_val inside Omega
// (straight-line check, then deterministic detours, then seeded sampling),
// null lifts per segment. theta == dt on the arc.
ArcExtension extend_arc(const Vec& p_val, const Vec& q_val, const DomainSpec& omega,
                        int segments, unsigned seed = 42);

void write_obj(const WeierstrassSample& s, const std::string& path);
void write_csv(const WeierstrassSample& s, const std::string& path);

}  // namespace minflex
