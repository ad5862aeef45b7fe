#pragma once

#include <optional>
#include <string>

#include "germkit/series.hpp"

namespace germkit {

enum class GermKind { Regular, Hyperbolic, Degenerate, Flat, ZeroField };
enum class C0Class {
  Regular,
  Attracting,
  Repelling,
  SemiStableRight,  // attracting from the left, repelling to the right
  SemiStableLeft
};
enum class Relation { C0, C1, Cinf };

const char* to_string(GermKind k);
const char* to_string(C0Class c);
const char* to_string(Relation r);

// Everything a germ's jet determines: singularity type, order k of the first
// nonvanishing jet, leading Taylor coefficient a = f^(k)(0)/k!, the smooth
// modulus d (degenerate germs only), determinacy orders and the topological
// class of the phase portrait around 0.
struct Classification {
  GermKind kind = GermKind::ZeroField;
  int k = 0;
  double a = 0.0;
  std::optional<double> d;
  int sign = +1;  // leading sign of the smooth general-case model
  int determinacy_c1 = 0;
  std::optional<int> determinacy_cinf;
  std::optional<C0Class> c0_class;
  int checked_order = 0;  // truncation order a Flat/ZeroField verdict refers to
};

struct NormalForm {
  Relation relation = Relation::C1;
  bool tangent_to_identity = false;
  Series coefficients = Series::zero(1);
  std::string display;
};

// Outcome of the order-by-order jet reduction of a degenerate germ: the
// tangent-to-identity polynomial change `change` pulls the input back to
// a*x^k + d*x^(2k-1) modulo x^(2k); `reduced` is that pulled-back jet.
struct ReduceResult {
  double a = 0.0;
  double d = 0.0;
  Series change = Series::identity(1);
  Series reduced = Series::zero(1);
};

// Classification from an expression. ZeroField additionally requires the
// expression to vanish on a sample grid; a vanishing jet with nonzero sampled
// values yields Flat (with the checked order). With sample_flat_signs, a Flat
// verdict still gets a c0_class from sign sampling on +/-[1e-6, 1e-2].
Classification classify_germ(const Expr& f, int max_order = 16,
                             double tol = kZeroTol,
                             bool sample_flat_signs = false);

// Classification from a jet alone (no sampling; a vanishing jet is Flat).
Classification classify_series(const Series& s, double tol = kZeroTol);

// Normal form per the classification tables. Throws NotFinitelyDetermined
// for Flat/ZeroField germs.
NormalForm normal_form(const Classification& c, Relation relation, bool tti);

// Removes the non-resonant orders k+1..2k-2 of a series with first nonzero
// coefficient at order k >= 2 by tangent-to-identity substitutions
// x -> x + c*x^(m-k+1); the resonant order 2k-1 survives as the modulus d.
// Requires truncation order >= 2k-1.
ReduceResult belitskii_reduce(const Series& s, int k, double tol = kZeroTol);

// Coefficient of x^(-1) in the Laurent expansion of 1/f, computed as
// coefficient k-1 of the reciprocal of s shifted by x^k. A conjugacy
// invariant; d = -a^2 * residue for degenerate germs.
double reciprocal_residue(const Series& s, int k);

// Pullback of a field jet under a polynomial coordinate change psi with
// psi(0)=0: the jet of f(psi)/psi'. Result order drops by one.
Series jet_pullback(const Series& field, const Series& change);

}  // namespace germkit
