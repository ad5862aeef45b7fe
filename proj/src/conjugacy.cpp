#include "germkit/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace germkit {

namespace {

int side_of(double x) { return x > 0 ? +1 : -1; }

// Sign of f on the open semi-axis (0, eps) resp. (-eps, 0), sampled on a
// mixed linear/logarithmic grid. Throws when a sample vanishes or the sign
// flips: the construction needs a zero-free interval.
int strict_side_sign(const Expr& f, int side, double eps,
                     const char* which_field) {
  int sign = 0;
  for (int i = 0; i < 96; ++i) {
    double mag;
    if (i < 48) {
      mag = eps * (i + 1) / 49.0;  // linear sweep
    } else {
      mag = eps * 0.5 * std::pow(1e-9, (i - 47) / 48.0);  // toward 0
    }
    const double v = f(side * mag);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) {
      throw ConjugacyError(std::string(which_field) +
                           " vanishes inside the working interval at x = " +
                           format_double(side * mag));
    }
    if (sign == 0) sign = s;
    if (s != sign) {
      throw ConjugacyError(std::string(which_field) +
                           " changes sign inside the working interval");
    }
  }
  return sign;
}

std::function<double(double)> reciprocal_field(const Expr& f) {
  return [f](double y) {
    const double v = f(y);
    if (v == 0.0) {
      throw ConjugacyError("field vanishes in the integration range at x = " +
                           format_double(y));
    }
    return 1.0 / v;
  };
}

// Monotone table of tau_g values on one semi-axis, from near eps down to
// eps*1e-12, built once and immutable afterwards. Inversion brackets on the
// table and polishes with safeguarded Newton.
struct TauTable {
  std::vector<double> x;  // signed positions, |x| decreasing
  std::vector<double> v;  // tau at x[i]
  Expr g;
  QuadratureOptions quad;

  double invert(double target) const {
    const bool increasing = v.back() > v.front();
    const auto cmp = [&](double a, double b) {
      return increasing ? a < b : a > b;
    };
    if (cmp(target, v.front()) || cmp(v.back(), target)) {
      throw DomainError("conjugacy value outside the resolvable range");
    }
    // binary search for the bracketing segment
    std::size_t lo = 0, hi = v.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (cmp(target, v[mid])) hi = mid; else lo = mid;
    }
    const double anchor_x = x[lo];
    const double anchor_v = v[lo];
    const auto inv_g = reciprocal_field(g);
    const auto fn = [&](double y) {
      return anchor_v + integrate(inv_g, anchor_x, y, quad);
    };
    const double a = std::min(x[lo], x[hi]);
    const double b = std::max(x[lo], x[hi]);
    if (a == b) return a;
    const double x_tol = 1e-13 * std::max(1.0, std::abs(anchor_x));
    return solve_monotone(fn, inv_g, target, a, b, x_tol);
  }
};

std::shared_ptr<const TauTable> build_tau_table(const Expr& g, int side,
                                                double eps,
                                                const QuadratureOptions& quad) {
  TauTable tab{{}, {}, g, quad};
  const double top = eps * (1.0 - 1e-9);
  const double floor = eps * 1e-12;
  const double ratio = 0.97;
  const auto inv_g = reciprocal_field(g);
  const double base = side * eps / 2.0;
  double mag = top;
  double prev_x = base;
  double acc = 0.0;
  while (mag > floor) {
    const double xx = side * mag;
    acc += integrate(inv_g, prev_x, xx, quad);
    tab.x.push_back(xx);
    tab.v.push_back(acc);
    prev_x = xx;
    mag *= ratio;
  }
  return std::make_shared<const TauTable>(std::move(tab));
}

// Measures |phi(h)/h - slope| at h = 1e-2, 1e-3, 1e-4 over both semi-axes.
// Accepts when the quotients are non-increasing and actually decay.
struct TtiCheck {
  std::array<double, 3> quotients{0.0, 0.0, 0.0};
  bool ok = false;
};

TtiCheck check_derivative_at_zero(const std::function<double(double)>& phi,
                                  double slope) {
  TtiCheck out;
  const std::array<double, 3> hs = {1e-2, 1e-3, 1e-4};
  for (std::size_t i = 0; i < hs.size(); ++i) {
    double q = 0.0;
    for (int s : {-1, +1}) {
      const double h = s * hs[i];
      q = std::max(q, std::abs(phi(h) / h - slope));
    }
    out.quotients[i] = q;
  }
  out.ok = out.quotients[1] <= out.quotients[0] + 1e-12 &&
           out.quotients[2] <= out.quotients[1] + 1e-12 &&
           out.quotients[2] <= 0.5 * out.quotients[0] + 1e-9;
  return out;
}

// Antiderivative of 1/f on either side of 0, normalized so the analytic
// part vanishes at 0: tau(x) = Q(x) + R log|x| + H(x), where 1/f has the
// Laurent expansion sum_j w_j x^(j-k) about its order-k zero, Q collects the
// antiderivatives of the pure pole terms, R = w_(k-1) is the residue and
// H' = 1/f - (principal part). H is series-summed inside |x| <= delta and
// extended by quadrature beyond, keeping the pole cancellation controlled.
struct SingularTau {
  Expr f;
  int k = 1;
  std::vector<double> principal;  // w_0 .. w_(k-1)
  double residue = 0.0;
  std::vector<double> h_anti;  // antiderivative coefficients of the analytic part
  double delta = 0.05;
  QuadratureOptions quad;

  double principal_at(double t) const {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc += principal[j] * ipow(t, j - k);
    return acc;
  }

  double pole_antiderivative(double x) const {
    double acc = 0.0;
    for (int j = 0; j + 1 < k; ++j) {
      acc += principal[j] * ipow(x, j - k + 1) / static_cast<double>(j - k + 1);
    }
    return acc;
  }

  double analytic_part(double x) const {
    const int s = side_of(x);
    if (std::abs(x) <= delta) return poly_eval(h_anti, x);
    const double head = poly_eval(h_anti, s * delta);
    const auto h = [this](double t) {
      const double ft = f(t);
      if (ft == 0.0) {
        throw ConjugacyError("field vanishes in the integration range");
      }
      return 1.0 / ft - principal_at(t);
    };
    return head + integrate(h, s * delta, x, quad);
  }

  double operator()(double x) const {
    return pole_antiderivative(x) + residue * std::log(std::abs(x)) +
           analytic_part(x);
  }
};

std::shared_ptr<const SingularTau> make_singular_tau(const Expr& f, int k,
                                                     int order) {
  SingularTau tau{f, k, {}, 0.0, {}, 0.05, {}};
  const Series s = Series::taylor(f, order);
  const auto c = s.coeffs();
  std::vector<double> unit(c.begin() + k, c.end());
  const Series w = Series(std::move(unit)).reciprocal();
  tau.principal.assign(w.coeffs().begin(), w.coeffs().begin() + k);
  tau.residue = tau.principal[static_cast<std::size_t>(k - 1)];
  const int analytic_len = w.order() - k + 1;
  tau.h_anti.assign(static_cast<std::size_t>(std::max(analytic_len, 0)) + 1,
                    0.0);
  for (int j = 0; j < analytic_len; ++j) {
    tau.h_anti[static_cast<std::size_t>(j) + 1] =
        w[k + j] / static_cast<double>(j + 1);
  }
  // Handoff radius: the partial sums must have converged well inside it, so
  // keep delta a quarter of the reciprocal series' estimated radius.
  double growth = 1.0;
  const double scale = std::max(1.0, std::abs(w[0]));
  for (int j = 1; j <= w.order(); ++j) {
    const double mag = std::abs(w[j]) / scale;
    if (mag > 0.0) {
      growth = std::max(growth, std::pow(mag, 1.0 / j));
    }
  }
  tau.delta = std::min(0.05, 0.25 / growth);
  return std::make_shared<const SingularTau>(std::move(tau));
}

Witness finish_c1_witness(std::function<double(double)> fwd, const Expr& f,
                          double model_coeff, int model_power, double slope,
                          double eps, std::string target) {
  Witness w;
  w.forward = std::move(fwd);
  w.derivative = [forward = w.forward, f, model_coeff, model_power,
                  slope](double x) {
    if (x == 0.0) return slope;
    const double y = forward(x);
    const double fx = f(x);
    if (fx == 0.0) throw DomainError("field vanishes at the evaluation point");
    return model_coeff * ipow(y, model_power) / fx;
  };
  // The map can stop being resolvable before eps (the image may run out of
  // the model's reach); report the interval on which it actually evaluates.
  const auto side_limit = [&](int s) -> double {
    const auto evaluable = [&](double mag) {
      try {
        (void)w.forward(s * mag);
        return true;
      } catch (const Error&) {
        return false;
      }
    };
    const double top = eps * (1.0 - 1e-9);
    if (evaluable(top)) return top;
    double lo = eps * 1e-6;
    if (!evaluable(lo)) return top;
    double hi = top;
    for (int i = 0; i < 50; ++i) {
      const double mid = 0.5 * (lo + hi);
      (evaluable(mid) ? lo : hi) = mid;
    }
    return lo * (1.0 - 1e-9);
  };
  w.domain = {-side_limit(-1), side_limit(+1)};
  w.orientation =
      slope < 0 ? Orientation::Reversing : Orientation::Preserving;
  w.tangent_to_identity = slope == 1.0;
  w.target = std::move(target);
  const TtiCheck check = check_derivative_at_zero(w.forward, slope);
  w.tti_quotients = check.quotients;
  if (check.ok) {
    w.smoothness = Smoothness::C1;
  } else {
    w.smoothness = Smoothness::C0;
    w.c1_downgraded = true;
  }
  return w;
}

}  // namespace

const char* to_string(Smoothness s) {
  switch (s) {
    case Smoothness::C0:   return "C0";
    case Smoothness::C1:   return "C1";
    case Smoothness::Cinf: return "Cinf";
  }
  return "?";
}

const char* to_string(Orientation o) {
  return o == Orientation::Preserving ? "preserving" : "reversing";
}

TimeMap::TimeMap(Expr f, double base, Side side, QuadratureOptions quad)
    : f_(std::move(f)), base_(base), side_(side), quad_(quad) {
  if (side == Side::Positive ? base <= 0.0 : base >= 0.0) {
    throw InvalidArgument("base point must lie on the stated side of 0");
  }
  const int s = side == Side::Positive ? +1 : -1;
  strict_side_sign(f_, s, std::abs(base), "field");
}

double TimeMap::operator()(double x) const {
  const int s = side_ == Side::Positive ? +1 : -1;
  if (x * s <= 0.0) {
    throw InvalidArgument("evaluation point must lie on the map's side of 0");
  }
  return integrate(reciprocal_field(f_), base_, x, quad_);
}

TimeMap time_map(const Expr& f, double base, Side side) {
  return TimeMap(f, base, side);
}

Witness c0_conjugacy(const Expr& f, const Expr& g, double eps) {
  if (eps <= 0.0) throw InvalidArgument("eps must be positive");
  if (std::abs(f(0.0)) > 1e-12 || std::abs(g(0.0)) > 1e-12) {
    throw InvalidArgument("both fields must fix the origin");
  }
  const int sfp = strict_side_sign(f, +1, eps, "first field");
  const int sfm = strict_side_sign(f, -1, eps, "first field");
  const int sgp = strict_side_sign(g, +1, eps, "second field");
  const int sgm = strict_side_sign(g, -1, eps, "second field");

  // A semi-axis of f can be matched with a semi-axis of g exactly when the
  // flows approach 0 in the same time direction, i.e. when the signs agree
  // (same side) or oppose (crossed sides).
  const bool same_ok = sfp == sgp && sfm == sgm;
  const bool cross_ok = sfp == -sgm && sfm == -sgp;
  if (!same_ok && !cross_ok) {
    throw ConjugacyError(
        "no admissible pairing of semi-axes: the fields are not "
        "topologically conjugate near 0");
  }
  const bool reversing = !same_ok;

  QuadratureOptions quad;
  struct State {
    Expr f;
    double eps;
    bool reversing;
    QuadratureOptions quad;
    std::shared_ptr<const TauTable> g_pos;
    std::shared_ptr<const TauTable> g_neg;
  };
  auto st = std::make_shared<const State>(
      State{f, eps, reversing, quad, build_tau_table(g, +1, eps, quad),
            build_tau_table(g, -1, eps, quad)});

  // The witness is resolvable only while tau_f(x) stays inside the range the
  // tau_g table covers (phi may push past eps before x does); shrink the
  // reported domain accordingly, per side, by bisection.
  const auto side_limit = [&](int s) -> double {
    const int target_side = reversing ? -s : s;
    const TauTable& tab = target_side > 0 ? *st->g_pos : *st->g_neg;
    const double v_lo = std::min(tab.v.front(), tab.v.back());
    const double v_hi = std::max(tab.v.front(), tab.v.back());
    const auto tau_f = [&](double mag) {
      return integrate(reciprocal_field(f), s * eps / 2.0, s * mag, quad);
    };
    const auto in_range = [&](double mag) {
      const double v = tau_f(mag);
      return v >= v_lo && v <= v_hi;
    };
    const double top = eps * (1.0 - 1e-9);
    if (in_range(top)) return top;
    double lo = eps * 1e-6;
    if (!in_range(lo)) return top;
    double hi = top;
    for (int i = 0; i < 50; ++i) {
      const double mid = 0.5 * (lo + hi);
      (in_range(mid) ? lo : hi) = mid;
    }
    return lo * (1.0 - 1e-9);
  };
  const double limit_pos = side_limit(+1);
  const double limit_neg = side_limit(-1);

  Witness w;
  w.forward = [st](double x) {
    if (x == 0.0) return 0.0;
    if (std::abs(x) >= st->eps) {
      throw DomainError("outside the witness domain");
    }
    const int s = side_of(x);
    const double base = s * st->eps / 2.0;
    const double v = integrate(reciprocal_field(st->f), base, x, st->quad);
    const int target_side = st->reversing ? -s : s;
    const TauTable& tab = target_side > 0 ? *st->g_pos : *st->g_neg;
    return tab.invert(v);
  };
  w.domain = {-limit_neg, limit_pos};
  w.smoothness = Smoothness::C0;
  w.orientation =
      reversing ? Orientation::Reversing : Orientation::Preserving;
  w.target = g.str();
  return w;
}

Witness rectify_regular(const Expr& f, bool tti) {
  const double f0 = f(0.0);
  if (f0 == 0.0 || !std::isfinite(f0)) {
    throw InvalidArgument("rectification requires f(0) != 0");
  }
  const double amplitude = tti ? f0 : 1.0;

  // the usable neighborhood: where f keeps the sign of f(0)
  double radius = 1.0;
  for (int i = 1; i <= 128; ++i) {
    const double xx = i / 128.0;
    for (int s : {-1, +1}) {
      bool bad = false;
      try {
        const double v = f(s * xx);
        bad = !std::isfinite(v) || v * f0 <= 0.0;
      } catch (const DomainError&) {
        bad = true;
      }
      if (bad) {
        radius = std::min(radius, xx * (1.0 - 1e-9));
      }
    }
    if (radius < xx) break;
  }

  QuadratureOptions quad;
  Witness w;
  w.forward = [f, amplitude, quad](double x) {
    if (x == 0.0) return 0.0;
    return integrate([&f, amplitude](double t) { return amplitude / f(t); },
                     0.0, x, quad);
  };
  w.derivative = [f, amplitude](double x) { return amplitude / f(x); };
  w.domain = {-radius, radius};
  w.smoothness = Smoothness::C1;
  w.orientation = amplitude / f0 > 0 ? Orientation::Preserving
                                     : Orientation::Reversing;
  w.tangent_to_identity = tti;
  w.target = tti ? format_double(f0) : "1";
  const TtiCheck check = check_derivative_at_zero(w.forward, amplitude / f0);
  w.tti_quotients = check.quotients;
  if (!check.ok) {
    w.smoothness = Smoothness::C0;
    w.c1_downgraded = true;
  }
  return w;
}

Witness scale_conjugacy(double a, double b, int k) {
  if (a == 0.0 || b == 0.0) throw InvalidArgument("coefficients must be nonzero");
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (k == 1) {
    if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
      throw InvalidArgument(
          "the hyperbolic coefficient is a conjugacy invariant: a must "
          "equal b");
    }
  }
  double c = 1.0;
  if (k >= 2) {
    const double ratio = a / b;
    if (k % 2 == 1 && ratio < 0.0) {
      throw InvalidArgument(
          "odd-order monomial models with opposite signs are not conjugate");
    }
    const double expo = 1.0 / (1.0 - static_cast<double>(k));
    c = ratio > 0 ? std::pow(ratio, expo) : -std::pow(-ratio, expo);
  }
  Witness w;
  w.forward = [c](double x) { return c * x; };
  w.derivative = [c](double) { return c; };
  w.domain = {-1e300, 1e300};
  w.smoothness = Smoothness::Cinf;
  w.orientation = c > 0 ? Orientation::Preserving : Orientation::Reversing;
  w.tangent_to_identity = c == 1.0;
  w.target = format_double(a) + "*x" + (k > 1 ? "^" + std::to_string(k) : "");
  return w;
}

Homological solve_homological(const Expr& f, const Expr& g, const Expr& k) {
  const Series gs = Series::taylor(g, 2);
  if (std::abs(gs[0]) > kZeroTol * std::max(1.0, gs.max_abs())) {
    throw InvalidArgument("g must vanish at the origin (g in m)");
  }
  const Series ks = Series::taylor(k, 2);
  const double kscale = std::max(1.0, ks.max_abs());
  if (std::abs(ks[0]) > kZeroTol * kscale ||
      std::abs(ks[1]) > kZeroTol * kscale) {
    throw InvalidArgument(
        "k must vanish along with its derivative at the origin (k in m^2)");
  }
  {
    const Series fs = Series::taylor(f, 8);
    if (!fs.first_nonzero()) {
      throw InvalidArgument("f must not vanish identically");
    }
  }

  const Expr dk = k.derivative();
  QuadratureOptions quad;
  const auto integrand = [f, g, dk](double t) {
    const double ft = f(t);
    if (ft == 0.0) {
      throw NumericsError("field vanishes inside the integration range");
    }
    return (g(t) + dk(t)) / ft;
  };

  // Cauchy probe of the improper integral at 0: shrink the lower limit by
  // two decades twice; stalling differences mean divergence.
  bool divergent = false;
  for (int s : {-1, +1}) {
    const double ref = s * 0.1;
    const double a4 = integrate(integrand, s * 1e-4, ref, quad);
    const double a6 = integrate(integrand, s * 1e-6, ref, quad);
    const double a8 = integrate(integrand, s * 1e-8, ref, quad);
    const double d1 = std::abs(a6 - a4);
    const double d2 = std::abs(a8 - a6);
    if (d2 > 0.1 * d1 + 1e-12 * (1.0 + std::abs(a8))) divergent = true;
  }
  const double base_mag = divergent ? 1e-4 : 0.0;

  const auto J = [integrand, base_mag, quad](double x) {
    const double lower = base_mag == 0.0 ? 0.0 : side_of(x) * base_mag;
    return integrate(integrand, lower, x, quad);
  };

  Homological out;
  out.kernel_note = divergent;
  out.base_magnitude = base_mag;
  out.X = [k, f, J](double x) {
    if (x == 0.0) return 0.0;
    return k(x) - f(x) * J(x);
  };
  const Expr df = f.derivative();
  out.dX = [df, g, J](double x) {
    if (x == 0.0) return 0.0;
    return -df(x) * J(x) - g(x);
  };

  // residual with X' taken from a five-point stencil on the evaluator
  // itself, so quadrature and closed-form parts are checked against each
  // other rather than cancelling algebraically
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i <= 40; ++i) {
    const double x = -0.5 + i / 40.0;
    if (std::abs(x) < 0.02) continue;
    try {
      const double h = 1e-5;
      const double xp = (8.0 * (out.X(x + h) - out.X(x - h)) -
                         (out.X(x + 2 * h) - out.X(x - 2 * h))) /
                        (12.0 * h);
      const double res = std::abs(-xp * f(x) + out.X(x) * df(x) -
                                  f(x) * g(x) - df(x) * k(x));
      worst = std::max(worst, res);
      ++used;
    } catch (const Error&) {
    }
  }
  if (used == 0) {
    throw NumericsError("residual grid entirely outside the domain");
  }
  out.residual_bound = worst;
  return out;
}

Witness c1_conjugator(const Expr& f, double eps, bool tti) {
  if (eps <= 0.0) throw InvalidArgument("eps must be positive");
  const Classification cls = classify_germ(f, 24);
  if (cls.kind == GermKind::Flat || cls.kind == GermKind::ZeroField) {
    throw NotFinitelyDetermined(
        std::string(to_string(cls.kind)) +
        " germ admits no finite-order conjugator (checked through order " +
        std::to_string(cls.checked_order) + ")");
  }
  if (cls.kind == GermKind::Regular) {
    Witness w = rectify_regular(f, tti);
    w.domain = {-std::min(eps, w.domain.hi), std::min(eps, w.domain.hi)};
    return w;
  }

  const int k = cls.k;
  const double a = cls.a;
  strict_side_sign(f, +1, eps, "field");
  strict_side_sign(f, -1, eps, "field");

  const int order = std::max(24, 3 * k + 6);
  const auto tau = make_singular_tau(f, k, order);

  // Stage 1 (two-sided time maps) lands on a*x^k; the general case then
  // rescales onto the monic model sign(a)*x^k for odd k, x^k for even k.
  double model_coeff = a;
  double slope = 1.0;
  std::string target = format_double(a) + "*" +
                       (k == 1 ? "x" : "x^" + std::to_string(k));
  if (!tti && k >= 2) {
    const double b = (k % 2 == 1 && a < 0.0) ? -1.0 : 1.0;
    const double ratio = a / b;  // slope^(k-1) = a/b
    slope = k % 2 == 0 ? std::copysign(
                             std::pow(std::abs(ratio),
                                      1.0 / static_cast<double>(k - 1)),
                             ratio)
                       : std::pow(ratio, 1.0 / static_cast<double>(k - 1));
    model_coeff = b;
    target = (b < 0 ? "-" : "") + std::string("x^") + std::to_string(k);
  }

  auto fwd = [tau, k, a, slope](double x) {
    if (x == 0.0) return 0.0;
    const int s = side_of(x);
    const double v = (*tau)(x);
    double y;
    if (k == 1) {
      y = s * std::exp(a * v);
    } else {
      const double bracket =
          ipow(static_cast<double>(s), k - 1) * a *
          static_cast<double>(1 - k) * v;
      if (bracket <= 0.0) {
        throw DomainError("outside the witness range");
      }
      y = s * std::pow(bracket, 1.0 / static_cast<double>(1 - k));
    }
    return slope * y;
  };

  return finish_c1_witness(std::move(fwd), f, model_coeff, k, slope, eps,
                           std::move(target));
}

Witness builtin_witness(std::string_view name) {
  Witness w;
  if (name == "identity") {
    w.forward = [](double x) { return x; };
    w.derivative = [](double) { return 1.0; };
    w.domain = {-1e300, 1e300};
    w.smoothness = Smoothness::Cinf;
    w.tangent_to_identity = true;
    w.target = "identity";
    return w;
  }
  if (name == "neg") {
    w.forward = [](double x) { return -x; };
    w.derivative = [](double) { return -1.0; };
    w.domain = {-1e300, 1e300};
    w.smoothness = Smoothness::Cinf;
    w.orientation = Orientation::Reversing;
    w.target = "neg";
    return w;
  }
  if (name == "signed-square") {
    w.forward = [](double x) { return x * std::abs(x); };
    w.derivative = [](double x) { return 2.0 * std::abs(x); };
    w.domain = {-1e6, 1e6};
    w.smoothness = Smoothness::C0;  // the inverse is not differentiable at 0
    w.target = "signed-square";
    return w;
  }
  if (name == "example2-phi") {
    const auto denom = [](double x) {
      return 1.0 + x * std::log(std::abs(x)) - x * std::log(std::abs(1.0 + x));
    };
    w.forward = [denom](double x) {
      if (x == 0.0) return 0.0;
      return x / denom(x);
    };
    w.derivative = [denom](double x) {
      if (x == 0.0) return 1.0;
      const double u = denom(x);
      const double du = std::log(std::abs(x)) + 1.0 -
                        std::log(std::abs(1.0 + x)) - x / (1.0 + x);
      return (u - x * du) / (u * u);
    };
    w.domain = {-0.7, 0.7};
    w.smoothness = Smoothness::C1;
    w.tangent_to_identity = true;
    w.target = "example2-phi";
    return w;
  }
  throw InvalidArgument("unknown builtin map '" + std::string(name) + "'");
}

}  // namespace germkit
