#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "germkit/errors.hpp"

namespace germkit {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x < hi; }
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 50;
};

// Adaptive Gauss-Kronrod (15|7) integration of f over [a, b]. Endpoints are
// never evaluated (all Kronrod nodes are interior), so integrable endpoint
// behavior is tolerated. a > b integrates with reversed sign.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Solves fn(x) = target on a bracket [lo, hi] where fn is strictly monotone.
// Newton steps using dfn, safeguarded by bisection; x_tol is absolute.
double solve_monotone(const std::function<double(double)>& fn,
                      const std::function<double(double)>& dfn, double target,
                      double lo, double hi, double x_tol = 1e-12,
                      int max_iter = 128);

// x^n for integer n (n may be negative; x==0 with n<0 throws).
double ipow(double x, long long n);

// Polynomial helpers; coefficients are c0..cN, constant term first.
double poly_eval(std::span<const double> coeffs, double x);
std::vector<double> poly_derive(std::span<const double> coeffs);
double poly_max_abs_coeff(std::span<const double> coeffs);

// Shortest round-trip decimal representation of a double ("1", "-0.25",
// "6.931471805599453e-01" style chosen by to_chars). Deterministic.
std::string format_double(double v);

}  // namespace germkit
