#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "minflex/expr.hpp"

namespace minflex {

struct Box {
  Vec lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
  double diameter() const { return (hi - lo).norm(); }
};

// Scalar field tau on R^n with optional analytic derivatives; finite
// differences fill in whatever is missing (central, step 1e-4 * scale).
struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;       // optional
  std::function<Mat(const Vec&)> hessian;        // optional
  Box domain;
  double fd_scale = 1.0;

  static ScalarField from_expr(const ExprPtr& e, Box domain);
  static ScalarField quadratic(const Mat& A, Box domain);  // 0.5 x^T A x

  Mat hessian_at(const Vec& x) const;  // analytic if given, else FD
  Vec gradient_at(const Vec& x) const;
};

struct PshReport {
  int p = 1;
  double min_partial_sum = 0.0;
  Vec argmin;
  int grid_points = 0;
  bool psh = false;              // min >= -tol
  bool strongly = false;         // min > +tol
  bool monotone_consistent = true;  // p-psh implies q-psh for q > p on the grid
};

// Sum of the p smallest eigenvalues of the symmetrized Hessian at x.
double hessian_partial_sum(const ScalarField& tau, const Vec& x, int p);

// Grid scan of the eigenvalue partial-sum condition over tau's domain box.
PshReport is_p_psh(const ScalarField& tau, int p, int grid_per_axis);

struct PConvexCertificate {
  bool certified = false;
  bool gate_ok = false;          // p <= max(2, n-2)
  bool psh_on_grid = false;
  bool strong_on_complement = false;
  int zero_set_samples = 0;
  int complement_samples = 0;
  double min_partial_sum = 0.0;
  double min_complement_sum = 0.0;
};

// Desk-scale certificate that L = tau^{-1}(0) is p-convex within the box:
// tau >= 0 on the grid, p-psh everywhere, strongly p-psh at complement samples
// with clearance above 5% of the box diameter.
PConvexCertificate certify_p_convex(const ScalarField& tau, int p,
                                    int grid_per_axis);

struct ContactOrder {
  int k = 0;
  double c = 0.0;
  double fit_residual = 0.0;
  bool degenerate = false;  // tau of is identically ~0 near the center
};

// Least-squares slope of log min_{|z|=r} tau(f(z)) against log r over a
// geometric radius grid; f is a disc map C -> R^n.
ContactOrder estimate_contact_order(
    const std::function<Vec(std::complex<double>)>& f, const ScalarField& tau,
    std::complex<double> center);

}  // namespace minflex
