#pragma once

#include <memory>
#include <string>
#include <vector>

#include "minflex/convexgeo.hpp"

namespace minflex {

// Small expression language for scalar fields tau on R^n: constants,
// coordinates, arithmetic, integer powers, |x| pieces, max/min and smooth-max.
// Parsed from JSON by json_io.
class Expr {
 public:
  virtual ~Expr() = default;
  virtual double eval(const Vec& x) const = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr expr_const(double v);
ExprPtr expr_var(int index);
ExprPtr expr_add(std::vector<ExprPtr> args);
ExprPtr expr_mul(std::vector<ExprPtr> args);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_div(ExprPtr a, ExprPtr b);
ExprPtr expr_pow(ExprPtr a, int k);
ExprPtr expr_abs(ExprPtr a);
ExprPtr expr_norm();     // |x|
ExprPtr expr_sqnorm();   // |x|^2
ExprPtr expr_max(std::vector<ExprPtr> args);
ExprPtr expr_min(std::vector<ExprPtr> args);
// log-sum-exp smooth maximum with sharpness parameter.
ExprPtr expr_smoothmax(std::vector<ExprPtr> args, double sharpness);
// C^2 quintic smoothing of max(a, 0) with the given width.
ExprPtr expr_smoothrelu(ExprPtr a, double width);

}  // namespace minflex
