#include "germkit/series.hpp"

#include <algorithm>
#include <cmath>

#include "germkit/numerics.hpp"

namespace germkit {

namespace {

void check_finite(const std::vector<double>& c) {
  for (double v : c) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("series coefficients must be finite");
    }
  }
}

// Order-by-order recurrences for elementary functions applied to a series u
// about its constant term (u0 need not vanish). Standard truncated-Taylor
// propagation rules.

std::vector<double> exp_series(std::span<const double> u) {
  const std::size_t n = u.size();
  std::vector<double> v(n);
  v[0] = std::exp(u[0]);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= i; ++j) {
      acc += static_cast<double>(j) * u[j] * v[i - j];
    }
    v[i] = acc / static_cast<double>(i);
  }
  return v;
}

std::vector<double> log_series(std::span<const double> u) {
  if (u[0] <= 0.0) {
    throw DomainError(u[0] == 0.0
                          ? "log is singular at the origin for this argument"
                          : "log of non-positive constant term");
  }
  const std::size_t n = u.size();
  std::vector<double> v(n);
  v[0] = std::log(u[0]);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = static_cast<double>(i) * u[i];
    for (std::size_t j = 1; j < i; ++j) {
      acc -= static_cast<double>(j) * v[j] * u[i - j];
    }
    v[i] = acc / (static_cast<double>(i) * u[0]);
  }
  return v;
}

std::vector<double> sqrt_series(std::span<const double> u) {
  if (u[0] <= 0.0) {
    throw DomainError(u[0] == 0.0
                          ? "sqrt is singular at the origin for this argument"
                          : "sqrt of negative constant term");
  }
  const std::size_t n = u.size();
  std::vector<double> v(n);
  v[0] = std::sqrt(u[0]);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = u[i];
    for (std::size_t j = 1; j < i; ++j) acc -= v[j] * v[i - j];
    v[i] = acc / (2.0 * v[0]);
  }
  return v;
}

std::vector<double> pow_series(std::span<const double> u, double p) {
  if (u[0] <= 0.0) {
    throw DomainError("fractional power requires positive constant term");
  }
  const std::size_t n = u.size();
  std::vector<double> v(n);
  v[0] = std::pow(u[0], p);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= i; ++j) {
      acc += p * static_cast<double>(j) * u[j] * v[i - j];
    }
    for (std::size_t j = 1; j < i; ++j) {
      acc -= static_cast<double>(j) * v[j] * u[i - j];
    }
    v[i] = acc / (static_cast<double>(i) * u[0]);
  }
  return v;
}

// sin and cos propagate jointly: s' = u' cos(u), c' = -u' sin(u).
std::pair<std::vector<double>, std::vector<double>> sincos_series(
    std::span<const double> u) {
  const std::size_t n = u.size();
  std::vector<double> s(n), c(n);
  s[0] = std::sin(u[0]);
  c[0] = std::cos(u[0]);
  for (std::size_t i = 1; i < n; ++i) {
    double as = 0.0, ac = 0.0;
    for (std::size_t j = 1; j <= i; ++j) {
      as += static_cast<double>(j) * u[j] * c[i - j];
      ac += static_cast<double>(j) * u[j] * s[i - j];
    }
    s[i] = as / static_cast<double>(i);
    c[i] = -ac / static_cast<double>(i);
  }
  return {std::move(s), std::move(c)};
}

Series int_pow(const Series& s, long long n) {
  const int ord = s.order();
  if (n == 0) return Series::constant(1.0, ord);
  if (n < 0) return int_pow(s, -n).reciprocal();
  Series result = Series::constant(1.0, ord);
  Series base = s;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

Series taylor_node(const ast::Node& node, int order);

Series taylor_unary(const ast::Node& node, int order) {
  const Series inner = taylor_node(*node.a, order);
  switch (node.uop) {
    case UnaryOp::Neg:
      return -inner;
    case UnaryOp::Sin:
      return Series(sincos_series(inner.coeffs()).first);
    case UnaryOp::Cos:
      return Series(sincos_series(inner.coeffs()).second);
    case UnaryOp::Exp: {
      std::vector<double> v = exp_series(inner.coeffs());
      return Series(std::move(v));
    }
    case UnaryOp::Log:
      return Series(log_series(inner.coeffs()));
    case UnaryOp::Sqrt:
      return Series(sqrt_series(inner.coeffs()));
    case UnaryOp::Atan: {
      // atan(u)' = u' / (1 + u^2), integrated with constant atan(u0).
      const Series one_plus_u2 =
          Series::constant(1.0, order) + inner * inner;
      const Series z = (inner.derive() * one_plus_u2.reciprocal().truncated(
                                             order - 1))
                           .integrate();
      std::vector<double> v(z.coeffs().begin(), z.coeffs().end());
      v[0] = std::atan(inner[0]);
      return Series(std::move(v));
    }
  }
  throw InvalidArgument("unsupported unary operator");
}

Series taylor_node(const ast::Node& node, int order) {
  switch (node.kind) {
    case ast::Kind::Number:
      return Series::constant(node.value, order);
    case ast::Kind::Variable:
      return Series::identity(order);
    case ast::Kind::Unary:
      return taylor_unary(node, order);
    case ast::Kind::Binary: {
      switch (node.bop) {
        case BinaryOp::Add:
          return taylor_node(*node.a, order) + taylor_node(*node.b, order);
        case BinaryOp::Sub:
          return taylor_node(*node.a, order) - taylor_node(*node.b, order);
        case BinaryOp::Mul:
          return taylor_node(*node.a, order) * taylor_node(*node.b, order);
        case BinaryOp::Div: {
          const Series num = taylor_node(*node.a, order);
          const Series den = taylor_node(*node.b, order);
          if (std::abs(den[0]) <= 1e-13 * std::max(1.0, den.max_abs())) {
            throw DomainError("division is singular at the origin");
          }
          return num * den.reciprocal();
        }
        case BinaryOp::Pow: {
          const Expr exponent{node.b};
          if (exponent.depends_on_x()) {
            throw InvalidArgument(
                "series expansion requires a constant exponent");
          }
          const double p = exponent(0.0);
          const Series base = taylor_node(*node.a, order);
          const double r = std::round(p);
          if (std::abs(p - r) < 1e-12 && std::abs(r) < 1e15) {
            return int_pow(base, static_cast<long long>(r));
          }
          return Series(pow_series(base.coeffs(), p));
        }
      }
      break;
    }
  }
  throw InvalidArgument("unsupported node");
}

}  // namespace

Series::Series(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw InvalidArgument("series needs at least one coefficient");
  check_finite(c_);
}

Series Series::zero(int order) {
  return Series(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
}

Series Series::constant(double value, int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = value;
  return Series(std::move(c));
}

Series Series::identity(int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  if (order >= 1) c[1] = 1.0;
  return Series(std::move(c));
}

Series Series::taylor(const Expr& e, int order) {
  if (order < 1) throw InvalidArgument("truncation order must be >= 1");
  return taylor_node(e.root(), order);
}

Series Series::truncated(int m) const {
  if (m < 0 || m > order()) throw InvalidArgument("bad truncation order");
  return Series(std::vector<double>(c_.begin(), c_.begin() + m + 1));
}

Series Series::operator+(const Series& rhs) const {
  const std::size_t n = std::min(c_.size(), rhs.c_.size());
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = c_[i] + rhs.c_[i];
  return Series(std::move(c));
}

Series Series::operator-(const Series& rhs) const {
  const std::size_t n = std::min(c_.size(), rhs.c_.size());
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = c_[i] - rhs.c_[i];
  return Series(std::move(c));
}

Series Series::operator*(const Series& rhs) const {
  const std::size_t n = std::min(c_.size(), rhs.c_.size());
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += c_[i] * rhs.c_[j];
  }
  return Series(std::move(c));
}

Series Series::operator*(double s) const {
  std::vector<double> c(c_);
  for (double& v : c) v *= s;
  return Series(std::move(c));
}

Series Series::reciprocal() const {
  if (std::abs(c_[0]) <= 1e-13 * std::max(1.0, max_abs())) {
    throw InvalidArgument("reciprocal of series with zero constant term");
  }
  std::vector<double> r(c_.size());
  r[0] = 1.0 / c_[0];
  for (std::size_t i = 1; i < c_.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= i; ++j) acc += c_[j] * r[i - j];
    r[i] = -acc / c_[0];
  }
  return Series(std::move(r));
}

Series Series::compose(const Series& inner) const {
  if (std::abs(inner[0]) > 1e-12 * std::max(1.0, inner.max_abs())) {
    throw InvalidArgument("compose requires zero inner constant term");
  }
  const int n = std::min(order(), inner.order());
  Series t = inner.truncated(n);
  // force the constant term so tiny residues do not leak into powers
  {
    std::vector<double> tc(t.coeffs().begin(), t.coeffs().end());
    tc[0] = 0.0;
    t = Series(std::move(tc));
  }
  Series acc = Series::constant(c_[static_cast<std::size_t>(order())], n);
  for (int i = order() - 1; i >= 0; --i) {
    acc = acc * t + Series::constant(c_[static_cast<std::size_t>(i)], n);
  }
  return acc;
}

Series Series::derive() const {
  if (order() < 1) throw InvalidArgument("cannot derive an order-0 series");
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    d[i - 1] = c_[i] * static_cast<double>(i);
  }
  return Series(std::move(d));
}

Series Series::integrate() const {
  std::vector<double> v(c_.size() + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    v[i + 1] = c_[i] / static_cast<double>(i + 1);
  }
  return Series(std::move(v));
}

std::optional<int> Series::first_nonzero(double tol) const {
  if (tol <= 0.0) throw InvalidArgument("tolerance must be positive");
  const double threshold = tol * std::max(1.0, max_abs());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (std::abs(c_[i]) > threshold) return static_cast<int>(i);
  }
  return std::nullopt;
}

double Series::eval(double x) const { return poly_eval(c_, x); }

double Series::max_abs() const { return poly_max_abs_coeff(c_); }

}  // namespace germkit
