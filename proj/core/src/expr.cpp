#include "minflex/expr.hpp"

#include <cmath>

namespace minflex {

namespace {

struct Const : Expr {
  double v;
  explicit Const(double v) : v(v) {}
  double eval(const Vec&) const override { return v; }
};

struct Var : Expr {
  int i;
  explicit Var(int i) : i(i) {}
  double eval(const Vec& x) const override {
    if (i < 0 || i >= x.size())
      throw Error(ErrorCode::DimMismatch, "expression variable index");
    return x[i];
  }
};

struct Nary : Expr {
  std::vector<ExprPtr> args;
  explicit Nary(std::vector<ExprPtr> a) : args(std::move(a)) {}
};

struct Add : Nary {
  using Nary::Nary;
  double eval(const Vec& x) const override {
    double s = 0.0;
    for (const auto& a : args) s += a->eval(x);
    return s;
  }
};

struct Mul : Nary {
  using Nary::Nary;
  double eval(const Vec& x) const override {
    double s = 1.0;
    for (const auto& a : args) s *= a->eval(x);
    return s;
  }
};

struct Sub : Expr {
  ExprPtr a, b;
  Sub(ExprPtr a, ExprPtr b) : a(std::move(a)), b(std::move(b)) {}
  double eval(const Vec& x) const override { return a->eval(x) - b->eval(x); }
};

struct Div : Expr {
  ExprPtr a, b;
  Div(ExprPtr a, ExprPtr b) : a(std::move(a)), b(std::move(b)) {}
  double eval(const Vec& x) const override { return a->eval(x) / b->eval(x); }
};

struct Pow : Expr {
  ExprPtr a;
  int k;
  Pow(ExprPtr a, int k) : a(std::move(a)), k(k) {}
  double eval(const Vec& x) const override { return std::pow(a->eval(x), k); }
};

struct Abs : Expr {
  ExprPtr a;
  explicit Abs(ExprPtr a) : a(std::move(a)) {}
  double eval(const Vec& x) const override { return std::abs(a->eval(x)); }
};

struct Norm : Expr {
  double eval(const Vec& x) const override { return x.norm(); }
};

struct SqNorm : Expr {
  double eval(const Vec& x) const override { return x.squaredNorm(); }
};

struct Max : Nary {
  using Nary::Nary;
  double eval(const Vec& x) const override {
    double s = -std::numeric_limits<double>::infinity();
    for (const auto& a : args) s = std::max(s, a->eval(x));
    return s;
  }
};

struct Min : Nary {
  using Nary::Nary;
  double eval(const Vec& x) const override {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& a : args) s = std::min(s, a->eval(x));
    return s;
  }
};

struct SmoothMax : Nary {
  double sharpness;
  SmoothMax(std::vector<ExprPtr> a, double sharpness)
      : Nary(std::move(a)), sharpness(sharpness) {}
  double eval(const Vec& x) const override {
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> vals;
    vals.reserve(args.size());
    for (const auto& a : args) {
      vals.push_back(a->eval(x));
      m = std::max(m, vals.back());
    }
    double s = 0.0;
    for (double v : vals) s += std::exp(sharpness * (v - m));
    return m + std::log(s) / sharpness;
  }
};

// g(t) = 0 for t<=0, t for t>=w, and t*smoothstep(t/w) in between (C^2).
struct SmoothRelu : Expr {
  ExprPtr a;
  double w;
  SmoothRelu(ExprPtr a, double w) : a(std::move(a)), w(w) {}
  double eval(const Vec& x) const override {
    const double t = a->eval(x);
    if (t <= 0.0) return 0.0;
    if (t >= w) return t;
    const double u = t / w;
    const double s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    return t * s;
  }
};

}  // namespace

ExprPtr expr_const(double v) { return std::make_shared<Const>(v); }
ExprPtr expr_var(int i) { return std::make_shared<Var>(i); }
ExprPtr expr_add(std::vector<ExprPtr> a) { return std::make_shared<Add>(std::move(a)); }
ExprPtr expr_mul(std::vector<ExprPtr> a) { return std::make_shared<Mul>(std::move(a)); }
ExprPtr expr_sub(ExprPtr a, ExprPtr b) {
  return std::make_shared<Sub>(std::move(a), std::move(b));
}
ExprPtr expr_div(ExprPtr a, ExprPtr b) {
  return std::make_shared<Div>(std::move(a), std::move(b));
}
ExprPtr expr_pow(ExprPtr a, int k) { return std::make_shared<Pow>(std::move(a), k); }
ExprPtr expr_abs(ExprPtr a) { return std::make_shared<Abs>(std::move(a)); }
ExprPtr expr_norm() { return std::make_shared<Norm>(); }
ExprPtr expr_sqnorm() { return std::make_shared<SqNorm>(); }
ExprPtr expr_max(std::vector<ExprPtr> a) { return std::make_shared<Max>(std::move(a)); }
ExprPtr expr_min(std::vector<ExprPtr> a) { return std::make_shared<Min>(std::move(a)); }
ExprPtr expr_smoothmax(std::vector<ExprPtr> a, double sharpness) {
  return std::make_shared<SmoothMax>(std::move(a), sharpness);
}
ExprPtr expr_smoothrelu(ExprPtr a, double width) {
  return std::make_shared<SmoothRelu>(std::move(a), width);
}

}  // namespace minflex
