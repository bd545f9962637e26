#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bootlab {

// Larger root of x^2 = (1 - (1-u)^k) x + u (1-u)^k.
double beta(int k, double u);
// -log beta_k(1 - e^{-z}), z > 0.
double g(int k, double z);

double q_of_p(double p);                // -log(1 - p)
double u_of(double q, double x);        // 1 - e^{-qx}
// u(prod_{i != axis} dims_i), axis 1-based.
double u_scaled(std::span<const double> dims, double p, int axis);

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double truncation_point = 0.0;  // upper limit used in place of infinity
};

// Adaptive Gauss-Kronrod on [lo, hi]; error estimate is absolute.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol);

// lambda(d,r) = int_0^inf g_{r-1}(z^{d-r+1}) dz. Throws ConvergenceError if
// the error estimate cannot be brought below tol.
QuadResult lambda(int d, int r, double tol = 1e-8);

// sum_k (-1)^k x^k / (2^{k^2-k} k!), truncated once terms drop below tol/10.
double highdim_series(double x, double tol = 1e-15);
// Smallest positive root of highdim_series.
double lambda_highdim(double tol = 1e-12);

// ---------------------------------------------------------------------------
// Line integrals w_f over increasing axis-parallel paths.

using CostFn = std::function<double(double)>;

struct PathStep {
  int axis = 1;  // 1-based
  double length = 0.0;
};

struct PathPoly {
  std::vector<double> start;
  std::vector<double> end;
  std::vector<PathStep> steps;
};

void validate(const PathPoly& path);

// Along an axis-j step the integrand f(prod_{i != j} x_i) is constant, so
// each step contributes length * f(...).
double w_path(const CostFn& f, const PathPoly& path);

struct WMinResult {
  double value = 0.0;  // best staircase on the requested grid
  double slack = 0.0;  // |value - value on the half grid|
  int grid = 0;
};

// Minimum of w_path over staircases on a node grid between a and b (grid
// intervals per axis, geometric spacing on axes with b_j/a_j > 10).
WMinResult w_min(const CostFn& f, std::span<const double> a, std::span<const double> b, int grid);

struct SwitchCosts {
  double first_axis1 = 0.0;  // a -> a + b e1 -> a + b e1 + b e2
  double first_axis2 = 0.0;  // a -> a + b e2 -> a + b e1 + b e2
};

SwitchCosts w_switch(const CostFn& f, std::span<const double> a, double b);

}  // namespace bootlab
