#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "germkit/classify.hpp"
#include "germkit/expr.hpp"
#include "germkit/numerics.hpp"

namespace germkit {

enum class Side { Positive, Negative };
enum class Smoothness { C0, C1, Cinf };
enum class Orientation { Preserving, Reversing };

const char* to_string(Smoothness s);
const char* to_string(Orientation o);

// A numerically evaluable local conjugacy phi with phi(0)=0. The convention
// throughout: a witness "conjugates f to g" when phi maps f-orbits to
// g-orbits, phi(f^t(x)) = g^t(phi(x)), equivalently f(x) = g(phi(x))/phi'(x).
struct Witness {
  std::function<double(double)> forward;
  std::function<double(double)> derivative;  // empty for C0-only witnesses
  Interval domain{0.0, 0.0};
  Smoothness smoothness = Smoothness::C0;
  Orientation orientation = Orientation::Preserving;
  bool tangent_to_identity = false;
  bool c1_downgraded = false;  // differentiability check failed; claim lowered
  // measured |phi(h)/h - phi'(0)| at h = 1e-2, 1e-3, 1e-4 (max over sides)
  std::array<double, 3> tti_quotients{0.0, 0.0, 0.0};
  std::string target;  // display of the model field on the image side
};

// tau(x) = integral from base to x of dy/f(y), the time the flow of f needs
// to travel from base to x. Strictly monotone on its side; may diverge as
// x -> 0. Evaluation is adaptive quadrature; panels never cross 0.
class TimeMap {
 public:
  TimeMap(Expr f, double base, Side side, QuadratureOptions quad = {});
  double operator()(double x) const;
  const Expr& field() const { return f_; }
  double base_point() const { return base_; }
  Side side() const { return side_; }

 private:
  Expr f_;
  double base_;
  Side side_;
  QuadratureOptions quad_;
};

TimeMap time_map(const Expr& f, double base, Side side);

// Glued time-map homeomorphism phi = tau_g^{-1} o tau_f per semi-axis, with
// base points +/-eps/2. Pairs semi-axes by matching limit behavior; when only
// the crossed pairing is admissible the witness is orientation-reversing.
Witness c0_conjugacy(const Expr& f, const Expr& g, double eps);

// Rectification of a field with f(0) != 0: psi(x) = int_0^x dt/f(t)
// (general, flows onto the unit field) or psi(x) = int_0^x f(0)/f(t) dt
// (tangent to identity, flows onto the constant f(0)).
Witness rectify_regular(const Expr& f, bool tti);

// Linear map psi(x) = (a/b)^(1/(1-k)) x between the monomial models: the
// pullback of a*x^k by psi is b*x^k, so psi maps the b*x^k flow to the
// a*x^k flow. k = 1 requires a = b (the hyperbolic coefficient is an
// invariant); odd k requires a/b > 0.
Witness scale_conjugacy(double a, double b, int k);

// Solution of -X' f + X f' = f g + f' k with X(0) = X'(0) = 0:
// X(x) = k(x) - f(x) * int_0^x (g(t)+k'(t))/f(t) dt. When the improper
// integral diverges at 0 the lower limit moves to +/-1e-4 per side and
// kernel_note is set (solutions differ by multiples of f).
struct Homological {
  std::function<double(double)> X;
  std::function<double(double)> dX;
  double residual_bound = 0.0;
  bool kernel_note = false;
  double base_magnitude = 0.0;  // lower integration limit magnitude when kernel_note
};

Homological solve_homological(const Expr& f, const Expr& g, const Expr& k);

// Witness from f to its C1 normal form: rectification for regular germs,
// singular time maps glued at 0 for hyperbolic/degenerate germs, composed
// with a linear scaling in the general (non-tti) degenerate case. The
// derivative is nf(phi(x))/f(x) away from 0. Differentiability at 0 is
// checked by difference quotients, never assumed; on failure the witness is
// returned downgraded to C0 with c1_downgraded set.
Witness c1_conjugator(const Expr& f, double eps, bool tti);

// Closed-form reference maps: "identity", "neg", "signed-square"
// (x*|x|), "example2-phi" (x / (1 + x log|x| - x log|1+x|)).
Witness builtin_witness(std::string_view name);

}  // namespace germkit
