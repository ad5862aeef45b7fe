#pragma once

#include <optional>
#include <span>
#include <vector>

#include "germkit/expr.hpp"

namespace germkit {

// Relative zero threshold shared by jet arithmetic and classification:
// a coefficient counts as nonzero when |c| > tol * max(1, max_i |c_i|).
inline constexpr double kZeroTol = 1e-9;

// Truncated power series at the origin: coefficients c0..cN with
// c_i = f^(i)(0)/i!. Arithmetic is exact modulo x^(N+1); mixed-order
// operands truncate to the shorter order. Immutable values.
class Series {
 public:
  explicit Series(std::vector<double> coeffs);

  static Series zero(int order);
  static Series constant(double value, int order);
  static Series identity(int order);  // the series of x

  // Maclaurin coefficients of e through the given order, propagated through
  // the expression tree. Throws DomainError when e is singular at 0 (1/x,
  // log at 0, sqrt at 0, ...) and InvalidArgument for non-constant exponents.
  static Series taylor(const Expr& e, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coeffs() const { return c_; }

  Series truncated(int m) const;

  Series operator+(const Series& rhs) const;
  Series operator-(const Series& rhs) const;
  Series operator*(const Series& rhs) const;
  Series operator*(double s) const;
  Series operator-() const { return *this * -1.0; }

  // Requires a nonzero constant term.
  Series reciprocal() const;

  // Composition this(inner); requires inner constant term zero.
  Series compose(const Series& inner) const;

  // Derivative (order drops by one) and antiderivative with zero constant
  // (order grows by one).
  Series derive() const;
  Series integrate() const;

  // Smallest k with |c_k| > tol * max(1, max|c_i|); nullopt when every
  // coefficient fails the test (jet-flat at this truncation order).
  std::optional<int> first_nonzero(double tol = kZeroTol) const;

  double eval(double x) const;
  double max_abs() const;

 private:
  std::vector<double> c_;
};

}  // namespace germkit
