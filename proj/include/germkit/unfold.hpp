#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "germkit/numerics.hpp"

namespace germkit {

// Parametric families through the degenerate monomial germs:
//   Q  : x^k + sum_{i=1..k-1} lambda_i x^i            (k-1 parameters)
//   Q1 : (a+lambda_k) x^k + sum_{i=1..k-1} lambda_i x^i   (k parameters)
//   F  : sign*x^k + sum_{i=1..k-1} lambda_i x^(k-1-i) + d x^(2k-1)
//   F1 : a*x^k      + sum_{i=1..k-1} lambda_i x^(k-1-i) + d x^(2k-1)
// F and F1 expose k-1 sweep parameters; d stays a fixed modulus of the base
// germ (an extra axis can add it to a sweep explicitly).
enum class FamilyKind { Q, Q1, F, F1 };

const char* to_string(FamilyKind k);

struct UnfoldingFamily {
  FamilyKind kind = FamilyKind::Q;
  int k = 2;
  std::optional<double> a;
  std::optional<double> d;
  int sign = +1;  // leading sign, F only
  int param_count = 1;
  std::vector<int> schedule;  // monomial exponent attached to each lambda_i
};

UnfoldingFamily build_unfolding(FamilyKind kind, int k,
                                std::optional<double> a = std::nullopt,
                                std::optional<double> d = std::nullopt,
                                int sign = +1);

// Coefficient vector (constant term first) of the instantiated polynomial.
std::vector<double> instantiate(const UnfoldingFamily& fam,
                                std::span<const double> lambda);

enum class Stability { Attracting, Repelling, SemiStable };

const char* to_string(Stability s);

struct Equilibrium {
  double location = 0.0;
  int multiplicity = 1;
  Stability stability = Stability::SemiStable;
};

struct EquilibriumReport {
  std::vector<double> params;
  std::vector<Equilibrium> equilibria;
  Interval window{-2.0, 2.0};
};

// All real roots of the polynomial inside the window, found by recursive
// derivative-based isolation (monotone segments between critical points),
// refined to 1e-12, with multiplicity from the first non-vanishing
// derivative and stability from the field's sign change across the root.
EquilibriumReport equilibria(std::span<const double> poly, Interval window,
                             double deriv_tol = 1e-7);

struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
};

struct BifurcationTable {
  std::vector<EquilibriumReport> rows;  // lexicographic grid order
  std::size_t param_count = 0;
  std::size_t max_equilibria = 0;
};

// One equilibria() row per grid node, first axis slowest. The node count is
// capped (default 1e6).
BifurcationTable sweep(const UnfoldingFamily& fam,
                       std::span<const AxisSpec> axes, Interval window,
                       std::size_t node_cap = 1000000);

// CSV: lambda_1..lambda_p, n_equilibria, then (root, multiplicity,
// stability) triples padded with empty fields; header row first.
void write_csv(const BifurcationTable& table, std::ostream& os);

}  // namespace germkit
