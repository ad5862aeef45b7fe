#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "germkit/series.hpp"

namespace testutil {

// Central finite differences of F at 0, Richardson-extrapolated once
// (leading error O(h^4)). Independent oracle for low-order Taylor
// coefficients; supports orders 0..4.
inline double fd_derivative(const std::function<double(double)>& F, int order,
                            double h) {
  switch (order) {
    case 0:
      return F(0.0);
    case 1:
      return (F(h) - F(-h)) / (2 * h);
    case 2:
      return (F(h) - 2 * F(0.0) + F(-h)) / (h * h);
    case 3:
      return (F(2 * h) - 2 * F(h) + 2 * F(-h) - F(-2 * h)) / (2 * h * h * h);
    case 4:
      return (F(2 * h) - 4 * F(h) + 6 * F(0.0) - 4 * F(-h) + F(-2 * h)) /
             (h * h * h * h);
    default:
      throw std::invalid_argument("finite differences support order <= 4");
  }
}

inline double fd_taylor_coeff(const std::function<double(double)>& F,
                              int order, double h = 0.02) {
  const double d1 = fd_derivative(F, order, h);
  const double d2 = fd_derivative(F, order, h / 2);
  double deriv = (4.0 * d2 - d1) / 3.0;
  double factorial = 1.0;
  for (int i = 2; i <= order; ++i) factorial *= i;
  return deriv / factorial;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Magnitude in [lo_mag, hi_mag] with a random sign.
inline double signed_uniform(std::mt19937_64& rng, double lo_mag,
                             double hi_mag) {
  const double v = uniform(rng, lo_mag, hi_mag);
  return rng() % 2 ? v : -v;
}

// Random germ jet with prescribed leading order k: c_k in +/-[0.5, 2],
// higher coefficients in [-1, 1].
inline germkit::Series random_germ(std::mt19937_64& rng, int k, int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[static_cast<std::size_t>(k)] = signed_uniform(rng, 0.5, 2.0);
  for (int i = k + 1; i <= order; ++i) {
    c[static_cast<std::size_t>(i)] = uniform(rng, -1.0, 1.0);
  }
  return germkit::Series(std::move(c));
}

// Random tangent-to-identity polynomial jet psi = x + sum p_j x^j.
inline germkit::Series random_tti_jet(std::mt19937_64& rng, int order,
                                      int degree = 5) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[1] = 1.0;
  for (int j = 2; j <= degree && j <= order; ++j) {
    c[static_cast<std::size_t>(j)] = uniform(rng, -0.5, 0.5);
  }
  return germkit::Series(std::move(c));
}

}  // namespace testutil
