#include "germkit/flows.hpp"

#include <algorithm>
#include <cmath>

#include "germkit/conjugacy.hpp"

namespace germkit {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

struct StepResult {
  double x;     // 5th order solution
  double err;   // embedded error estimate
  double k_last;
};

StepResult dp_step(const std::function<double(double)>& f, double x, double k1,
                   double h) {
  const double k2 = f(x + h * kA21 * k1);
  const double k3 = f(x + h * (kA31 * k1 + kA32 * k2));
  const double k4 = f(x + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
  const double k5 = f(x + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
  const double k6 = f(x + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 +
                               kA65 * k5));
  const double x5 =
      x + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
  const double k7 = f(x5);
  const double err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 +
                          kE6 * k6 + kE7 * k7);
  return {x5, std::abs(err), k7};
}

// Integrates x' = f(x) over [0, T], T > 0. Returns the exit state when a
// stop predicate fires: `stop(x)` marks blow-up/domain exit, whose crossing
// time is then bisected to ~1e-9 relative.
struct IntegrationExit {
  double x;
  double t;
  bool stopped;
};

IntegrationExit advance(const std::function<double(double)>& f, double x0,
                        double T, const FlowOptions& opts,
                        const std::function<bool(double)>& stop) {
  double t = 0.0;
  double x = x0;
  if (stop(x)) return {x, 0.0, true};
  double k1 = f(x);
  double h = std::min(0.01, T);
  while (t < T) {
    h = std::min(h, T - t);
    if (h < opts.h_floor) {
      throw NumericsError("integration step size underflow");
    }
    const StepResult s = dp_step(f, x, k1, h);
    if (!std::isfinite(s.x)) {
      h *= 0.25;
      continue;
    }
    const double scale =
        opts.abs_tol + opts.rel_tol * std::max(std::abs(x), std::abs(s.x));
    const double ratio = s.err / scale;
    if (ratio <= 1.0) {
      if (stop(s.x)) {
        // bisect the crossing time inside the accepted step
        double lo = 0.0, hi = h;
        double x_hi = s.x;
        for (int it = 0; it < 60 && (hi - lo) > 1e-9 * std::max(1.0, t + hi);
             ++it) {
          const double mid = 0.5 * (lo + hi);
          const StepResult sm = dp_step(f, x, k1, mid);
          if (!std::isfinite(sm.x) || stop(sm.x)) {
            hi = mid;
            x_hi = std::isfinite(sm.x) ? sm.x : x_hi;
          } else {
            lo = mid;
          }
        }
        return {x_hi, t + hi, true};
      }
      t += h;
      x = s.x;
      k1 = s.k_last;
    }
    const double grow =
        ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
  }
  return {x, T, false};
}

}  // namespace

FlowResult flow(const Expr& f, double x0, double t, const FlowOptions& opts) {
  if (std::abs(x0) > opts.x_max) {
    throw InvalidArgument("initial state beyond the blow-up bound");
  }
  if (opts.domain && !opts.domain->contains(x0)) {
    return {x0, FlowStatus::LeftDomain, 0.0};
  }
  if (t == 0.0) return {x0, FlowStatus::Ok, 0.0};

  const double direction = t > 0 ? 1.0 : -1.0;
  const auto rhs = [&f, direction](double x) { return direction * f(x); };

  bool blown = false;
  const auto stop = [&](double x) {
    if (std::abs(x) > opts.x_max) {
      blown = true;
      return true;
    }
    if (opts.domain && !opts.domain->contains(x)) return true;
    return false;
  };

  const IntegrationExit exit = advance(rhs, x0, std::abs(t), opts, stop);
  if (!exit.stopped) return {exit.x, FlowStatus::Ok, 0.0};
  return {exit.x, blown ? FlowStatus::Blowup : FlowStatus::LeftDomain,
          direction * exit.t};
}

double model_flow_linear(double a, double x0, double t) {
  return x0 * std::exp(a * t);
}

double model_flow_monomial(int k, double x0, double t) {
  return model_flow_monomial(k, 1.0, x0, t);
}

double model_flow_monomial(int k, double a, double x0, double t) {
  if (k < 2) throw InvalidArgument("monomial model flow needs k >= 2");
  if (x0 == 0.0) return 0.0;
  const double denom =
      1.0 - static_cast<double>(k - 1) * a * t * ipow(x0, k - 1);
  if (denom <= 0.0) {
    throw InvalidArgument("model flow evaluated past its blow-up time");
  }
  return x0 * std::pow(denom, -1.0 / static_cast<double>(k - 1));
}

VerifyResult verify_conjugacy(const Expr& f, const Expr& g, const Witness& w,
                              const GridSpec& grid, std::ostream* csv,
                              const FlowOptions& opts) {
  if (grid.nx < 1 || grid.nt < 1) throw InvalidArgument("empty grid");
  FlowOptions fopts = opts;
  fopts.domain = w.domain;

  VerifyResult out;
  if (csv) *csv << "x,t,residual\n";
  for (int i = 0; i < grid.nx; ++i) {
    const double x =
        grid.nx == 1
            ? grid.x_lo
            : grid.x_lo + (grid.x_hi - grid.x_lo) * i / (grid.nx - 1.0);
    if (!w.domain.contains(x)) {
      out.skipped += grid.nt;
      continue;
    }
    for (int j = 0; j < grid.nt; ++j) {
      const double t =
          grid.nt == 1
              ? grid.t_lo
              : grid.t_lo + (grid.t_hi - grid.t_lo) * j / (grid.nt - 1.0);
      try {
        const FlowResult fx = flow(f, x, t, fopts);
        if (fx.status != FlowStatus::Ok) {
          ++out.skipped;
          continue;
        }
        const double phix = w.forward(x);
        const FlowResult gy = flow(g, phix, t, opts);
        if (gy.status != FlowStatus::Ok) {
          ++out.skipped;
          continue;
        }
        const double residual = std::abs(w.forward(fx.value) - gy.value);
        out.max_residual = std::max(out.max_residual, residual);
        ++out.evaluated;
        if (csv) {
          *csv << format_double(x) << ',' << format_double(t) << ','
               << format_double(residual) << '\n';
        }
      } catch (const DomainError&) {
        ++out.skipped;
      }
    }
  }
  if (out.evaluated == 0) {
    throw NumericsError("every grid point was skipped");
  }
  return out;
}

}  // namespace germkit
