#include "minflex/psh.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace minflex {

namespace {

constexpr double kPshTol = 1e-8;

std::vector<double> sorted_eigenvalues(const Mat& H) {
  Mat sym = 0.5 * (H + H.transpose());
  if (!sym.allFinite())
    throw Error(ErrorCode::NonFiniteHessian, "Hessian has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + sym.rows());
  return ev;  // SelfAdjointEigenSolver sorts ascending
}

Vec grid_point(const Box& box, const std::vector<int>& idx, int n_per_axis) {
  Vec x(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    const double t = n_per_axis == 1 ? 0.5 : static_cast<double>(idx[i]) / (n_per_axis - 1);
    x[i] = box.lo[i] + t * (box.hi[i] - box.lo[i]);
  }
  return x;
}

template <typename F>
void for_each_grid_point(const Box& box, int n_per_axis, F&& fn) {
  const int d = box.dim();
  std::vector<int> idx(d, 0);
  while (true) {
    fn(grid_point(box, idx, n_per_axis));
    int i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < n_per_axis) break;
      idx[i] = 0;
    }
    if (i == d) return;
  }
}

}  // namespace

ScalarField ScalarField::from_expr(const ExprPtr& e, Box domain) {
  ScalarField f;
  f.value = [e](const Vec& x) { return e->eval(x); };
  f.domain = std::move(domain);
  f.fd_scale = std::max(1.0, f.domain.diameter() / 10.0);
  return f;
}

ScalarField ScalarField::quadratic(const Mat& A, Box domain) {
  ScalarField f;
  f.value = [A](const Vec& x) { return 0.5 * x.dot(A * x); };
  f.gradient = [A](const Vec& x) { return Vec(0.5 * (A + A.transpose()) * x); };
  f.hessian = [A](const Vec&) { return Mat(0.5 * (A + A.transpose())); };
  f.domain = std::move(domain);
  return f;
}

Vec ScalarField::gradient_at(const Vec& x) const {
  if (gradient) return gradient(x);
  const double h = 1e-6 * fd_scale;
  Vec g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (value(xp) - value(xm)) / (2.0 * h);
  }
  return g;
}

Mat ScalarField::hessian_at(const Vec& x) const {
  if (hessian) return hessian(x);
  const double h = 1e-4 * fd_scale;
  const int d = static_cast<int>(x.size());
  Mat H(d, d);
  const double f0 = value(x);
  for (int i = 0; i < d; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    H(i, i) = (value(xp) - 2.0 * f0 + value(xm)) / (h * h);
    for (int j = i + 1; j < d; ++j) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h; xpp[j] += h;
      xpm[i] += h; xpm[j] -= h;
      xmp[i] -= h; xmp[j] += h;
      xmm[i] -= h; xmm[j] -= h;
      H(i, j) = H(j, i) =
          (value(xpp) - value(xpm) - value(xmp) + value(xmm)) / (4.0 * h * h);
    }
  }
  return H;
}

double hessian_partial_sum(const ScalarField& tau, const Vec& x, int p) {
  const int n = static_cast<int>(x.size());
  if (p < 1 || p > n)
    throw Error(ErrorCode::InvalidParams, "p must lie in [1, n]");
  const auto ev = sorted_eigenvalues(tau.hessian_at(x));
  double s = 0.0;
  for (int i = 0; i < p; ++i) s += ev[i];
  return s;
}

PshReport is_p_psh(const ScalarField& tau, int p, int grid_per_axis) {
  if (grid_per_axis < 8)
    throw Error(ErrorCode::InvalidParams, "grid must be >= 8 per axis");
  const int n = tau.domain.dim();
  if (p < 1 || p > n) throw Error(ErrorCode::InvalidParams, "p out of range");
  PshReport report;
  report.p = p;
  std::vector<double> min_sums(n, std::numeric_limits<double>::infinity());
  double best = std::numeric_limits<double>::infinity();
  Vec argmin = Vec::Zero(n);
  int count = 0;
  for_each_grid_point(tau.domain, grid_per_axis, [&](const Vec& x) {
    const auto ev = sorted_eigenvalues(tau.hessian_at(x));
    double run = 0.0;
    for (int q = 0; q < n; ++q) {
      run += ev[q];
      min_sums[q] = std::min(min_sums[q], run);
    }
    double s = 0.0;
    for (int i = 0; i < p; ++i) s += ev[i];
    if (s < best) {
      best = s;
      argmin = x;
    }
    ++count;
  });
  report.min_partial_sum = best;
  report.argmin = argmin;
  report.grid_points = count;
  report.psh = best >= -kPshTol;
  report.strongly = best > kPshTol;
  // p-convex implies q-convex for p < q <= n; verified on the same grid.
  if (report.psh) {
    for (int q = p; q < n; ++q)
      if (min_sums[q] < -kPshTol) report.monotone_consistent = false;
  }
  return report;
}

PConvexCertificate certify_p_convex(const ScalarField& tau, int p,
                                    int grid_per_axis) {
  const int n = tau.domain.dim();
  PConvexCertificate cert;
  cert.gate_ok = p <= std::max(2, n - 2);

  std::vector<Vec> zero_set;
  std::vector<Vec> samples;
  for_each_grid_point(tau.domain, grid_per_axis, [&](const Vec& x) {
    const double v = tau.value(x);
    if (v < -1e-12)
      throw Error(ErrorCode::InvalidParams, "tau must be nonnegative");
    if (v < 1e-9) zero_set.push_back(x);
    samples.push_back(x);
  });
  if (zero_set.empty())
    throw Error(ErrorCode::EmptyZeroSet, "no zero-set samples inside the box");
  cert.zero_set_samples = static_cast<int>(zero_set.size());

  const double margin = 0.05 * tau.domain.diameter();
  cert.min_partial_sum = std::numeric_limits<double>::infinity();
  cert.min_complement_sum = std::numeric_limits<double>::infinity();
  for (const Vec& x : samples) {
    const double s = hessian_partial_sum(tau, x, p);
    cert.min_partial_sum = std::min(cert.min_partial_sum, s);
    double dist = std::numeric_limits<double>::infinity();
    for (const Vec& z : zero_set) dist = std::min(dist, (x - z).norm());
    if (dist > margin) {
      ++cert.complement_samples;
      cert.min_complement_sum = std::min(cert.min_complement_sum, s);
    }
  }
  cert.psh_on_grid = cert.min_partial_sum >= -kPshTol;
  cert.strong_on_complement =
      cert.complement_samples > 0 && cert.min_complement_sum > kPshTol;
  cert.certified = cert.psh_on_grid && cert.strong_on_complement;
  return cert;
}

ContactOrder estimate_contact_order(
    const std::function<Vec(std::complex<double>)>& f, const ScalarField& tau,
    std::complex<double> center) {
  const double at_center = tau.value(f(center));
  if (std::abs(at_center) >= 1e-9)
    throw Error(ErrorCode::NotTouching, "f(center) is not on the zero set");

  constexpr int kRadii = 24, kAngles = 64;
  std::vector<double> log_r, log_m;
  bool all_tiny = true;
  for (int i = 0; i < kRadii; ++i) {
    const double r =
        1e-3 * std::pow(1e-1 / 1e-3, static_cast<double>(i) / (kRadii - 1));
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kAngles; ++j) {
      const double phi = 2.0 * M_PI * j / kAngles;
      const std::complex<double> z = center + std::polar(r, phi);
      const double v = tau.value(f(z));
      if (v < 0.0)
        throw Error(ErrorCode::InsideBody, "tau(f(z)) negative on sample circle");
      m = std::min(m, v);
    }
    if (m > 1e-300) all_tiny = false;
    log_r.push_back(std::log(r));
    log_m.push_back(m > 1e-300 ? std::log(m) : 0.0);
  }
  ContactOrder result;
  if (all_tiny) {
    result.degenerate = true;
    return result;
  }
  // Least squares log m = k log r + log c.
  const int N = kRadii;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < N; ++i) {
    sx += log_r[i];
    sy += log_m[i];
    sxx += log_r[i] * log_r[i];
    sxy += log_r[i] * log_m[i];
  }
  const double slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / N;
  double ss = 0.0;
  for (int i = 0; i < N; ++i) {
    const double e = log_m[i] - (slope * log_r[i] + intercept);
    ss += e * e;
  }
  result.k = static_cast<int>(std::lround(slope));
  result.c = std::exp(intercept);
  result.fit_residual = std::sqrt(ss / N);
  return result;
}

}  // namespace minflex
