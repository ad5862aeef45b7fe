#include "germkit/numerics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace germkit {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule. Standard QUADPACK constants.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kKronrodWeights[7] * fc;
  double resg = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kKronrodNodes[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) resg += kGaussWeights[j / 2] * (f1 + f2);
  }
  const double kronrod = resk * h;
  const double gauss = resg * h;
  return {kronrod, std::abs(kronrod - gauss)};
}

double integrate_recursive(const std::function<double(double)>& f, double a,
                           double b, double tol, int depth,
                           const QuadratureOptions& opts) {
  const PanelResult r = gk15(f, a, b);
  if (!std::isfinite(r.kronrod)) {
    throw NumericsError("quadrature panel produced a non-finite value");
  }
  if (r.err <= std::max(tol, opts.rel_tol * std::abs(r.kronrod))) {
    return r.kronrod;
  }
  if (depth >= opts.max_depth) {
    throw NumericsError("quadrature failed to converge");
  }
  const double m = 0.5 * (a + b);
  return integrate_recursive(f, a, m, 0.5 * tol, depth + 1, opts) +
         integrate_recursive(f, m, b, 0.5 * tol, depth + 1, opts);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, opts);
  return integrate_recursive(f, a, b, opts.abs_tol, 0, opts);
}

double solve_monotone(const std::function<double(double)>& fn,
                      const std::function<double(double)>& dfn, double target,
                      double lo, double hi, double x_tol, int max_iter) {
  double flo = fn(lo) - target;
  double fhi = fn(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericsError("solve_monotone: target not bracketed");
  }
  double x = lo + (hi - lo) * (-flo) / (fhi - flo);  // secant seed
  for (int it = 0; it < max_iter; ++it) {
    const double fx = fn(x) - target;
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
    }
    double step_to = x - fx / dfn(x);
    if (!std::isfinite(step_to) || step_to <= std::min(lo, hi) ||
        step_to >= std::max(lo, hi)) {
      step_to = 0.5 * (lo + hi);  // Newton left the bracket
    }
    const double dx = std::abs(step_to - x);
    x = step_to;
    if (dx <= x_tol || std::abs(hi - lo) <= x_tol) return x;
  }
  throw NumericsError("solve_monotone: no convergence");
}

double ipow(double x, long long n) {
  if (n < 0) {
    if (x == 0.0) throw DomainError("zero raised to a negative power");
    return 1.0 / ipow(x, -n);
  }
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

double poly_eval(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<double> poly_derive(std::span<const double> coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  std::vector<double> d(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    d[i - 1] = coeffs[i] * static_cast<double>(i);
  }
  return d;
}

double poly_max_abs_coeff(std::span<const double> coeffs) {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // drop the sign of negative zero
  std::array<char, 40> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace germkit
