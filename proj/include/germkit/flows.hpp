#pragma once

#include <optional>
#include <ostream>

#include "germkit/expr.hpp"
#include "germkit/numerics.hpp"

namespace germkit {

struct Witness;  // conjugacy.hpp

enum class FlowStatus { Ok, Blowup, LeftDomain };

struct FlowResult {
  double value = 0.0;
  FlowStatus status = FlowStatus::Ok;
  double t_escape = 0.0;  // meaningful for Blowup/LeftDomain
};

struct FlowOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double x_max = 1e6;       // |x| beyond this counts as blow-up
  double h_floor = 1e-14;   // hitting the step floor is an error, not a result
  std::optional<Interval> domain;  // exit reported as LeftDomain
};

// Solves x' = f(x), x(0) = x0, to time t with an adaptive embedded
// Runge-Kutta scheme (Dormand-Prince 5(4)). Negative times integrate the
// reversed field. Blow-up times are bracketed to ~1e-9 by bisection over
// the offending step.
FlowResult flow(const Expr& f, double x0, double t,
                const FlowOptions& opts = {});

// Closed-form model flows: a*x gives x0*exp(a*t); x^k (k >= 2, monic)
// gives x0*(1-(k-1)*t*x0^(k-1))^(-1/(k-1)) and requires the bracketed
// factor positive.
double model_flow_linear(double a, double x0, double t);
double model_flow_monomial(int k, double x0, double t);
double model_flow_monomial(int k, double a, double x0, double t);

struct GridSpec {
  double x_lo = -0.5;
  double x_hi = 0.5;
  int nx = 21;
  double t_lo = -1.0;
  double t_hi = 1.0;
  int nt = 9;
};

struct VerifyResult {
  double max_residual = 0.0;
  int skipped = 0;
  int evaluated = 0;
};

// Max over the grid of |phi(f^t(x)) - g^t(phi(x))|. Grid points whose flows
// blow up or leave the witness domain are skipped and counted. Optionally
// emits (x, t, residual) CSV rows. Throws when every point is skipped.
VerifyResult verify_conjugacy(const Expr& f, const Expr& g, const Witness& w,
                              const GridSpec& grid, std::ostream* csv = nullptr,
                              const FlowOptions& opts = {});

}  // namespace germkit
