#include "germkit/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace germkit {

namespace {

std::vector<double> trimmed(std::span<const double> p) {
  std::vector<double> c(p.begin(), p.end());
  const double maxc = poly_max_abs_coeff(c);
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * std::max(1.0, maxc)) {
    c.pop_back();
  }
  return c;
}

// Real roots inside [lo, hi] by derivative recursion: between consecutive
// critical points the polynomial is monotone, so a sign change pins exactly
// one root and a near-zero value at a critical point is a multiple root.
std::vector<double> real_roots(const std::vector<double>& poly, double lo,
                               double hi) {
  const std::vector<double> p = trimmed(poly);
  const int deg = static_cast<int>(p.size()) - 1;
  std::vector<double> roots;
  if (deg <= 0) return roots;

  const double bound = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double scale =
      poly_max_abs_coeff(p) * std::pow(bound, static_cast<double>(deg));
  const double val_tol = 1e-11 * scale;

  if (deg == 1) {
    const double r = -p[0] / p[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }

  std::vector<double> breaks = real_roots(poly_derive(p), lo, hi);
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> vals(breaks.size());
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    vals[i] = poly_eval(p, breaks[i]);
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (std::abs(vals[i]) <= val_tol) roots.push_back(breaks[i]);
  }
  const std::vector<double> dp = poly_derive(p);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (std::abs(vals[i]) <= val_tol || std::abs(vals[i + 1]) <= val_tol) {
      continue;  // endpoint is itself a root
    }
    if ((vals[i] > 0) == (vals[i + 1] > 0)) continue;
    const double r = solve_monotone(
        [&p](double x) { return poly_eval(p, x); },
        [&dp](double x) { return poly_eval(dp, x); }, 0.0, breaks[i],
        breaks[i + 1], 1e-13);
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [bound](double x, double y) {
                            return std::abs(x - y) <= 1e-9 * bound;
                          }),
              roots.end());
  return roots;
}

}  // namespace

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Q:  return "Q";
    case FamilyKind::Q1: return "Q1";
    case FamilyKind::F:  return "F";
    case FamilyKind::F1: return "F1";
  }
  return "?";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling:  return "repelling";
    case Stability::SemiStable: return "semi-stable";
  }
  return "?";
}

UnfoldingFamily build_unfolding(FamilyKind kind, int k,
                                std::optional<double> a,
                                std::optional<double> d, int sign) {
  if (k < 2) throw InvalidArgument("unfolding families require k >= 2");
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  UnfoldingFamily fam;
  fam.kind = kind;
  fam.k = k;
  fam.sign = sign;
  switch (kind) {
    case FamilyKind::Q:
      fam.param_count = k - 1;
      for (int i = 1; i <= k - 1; ++i) fam.schedule.push_back(i);
      break;
    case FamilyKind::Q1:
      if (!a || *a == 0.0) {
        throw InvalidArgument("Q1 requires a nonzero coefficient a");
      }
      fam.a = a;
      fam.param_count = k;
      for (int i = 1; i <= k - 1; ++i) fam.schedule.push_back(i);
      fam.schedule.push_back(k);
      break;
    case FamilyKind::F:
      if (!d) throw InvalidArgument("F requires the modulus d");
      fam.d = d;
      fam.param_count = k - 1;
      for (int i = 1; i <= k - 1; ++i) fam.schedule.push_back(k - 1 - i);
      break;
    case FamilyKind::F1:
      if (!a || *a == 0.0) {
        throw InvalidArgument("F1 requires a nonzero coefficient a");
      }
      if (!d) throw InvalidArgument("F1 requires the modulus d");
      fam.a = a;
      fam.d = d;
      fam.param_count = k - 1;
      for (int i = 1; i <= k - 1; ++i) fam.schedule.push_back(k - 1 - i);
      break;
  }
  return fam;
}

std::vector<double> instantiate(const UnfoldingFamily& fam,
                                std::span<const double> lambda) {
  if (static_cast<int>(lambda.size()) != fam.param_count) {
    throw InvalidArgument("expected " + std::to_string(fam.param_count) +
                          " parameters, got " + std::to_string(lambda.size()));
  }
  const int k = fam.k;
  const bool smooth_family =
      fam.kind == FamilyKind::F || fam.kind == FamilyKind::F1;
  const int deg = smooth_family ? 2 * k - 1 : k;
  std::vector<double> c(static_cast<std::size_t>(deg) + 1, 0.0);
  switch (fam.kind) {
    case FamilyKind::Q:
      c[static_cast<std::size_t>(k)] = 1.0;
      break;
    case FamilyKind::Q1:
      c[static_cast<std::size_t>(k)] = *fam.a + lambda[lambda.size() - 1];
      break;
    case FamilyKind::F:
      c[static_cast<std::size_t>(k)] = static_cast<double>(fam.sign);
      c[static_cast<std::size_t>(2 * k - 1)] += *fam.d;
      break;
    case FamilyKind::F1:
      c[static_cast<std::size_t>(k)] = *fam.a;
      c[static_cast<std::size_t>(2 * k - 1)] += *fam.d;
      break;
  }
  const int n_low = k - 1;  // lambdas attached to the schedule exponents
  for (int i = 0; i < n_low; ++i) {
    c[static_cast<std::size_t>(fam.schedule[static_cast<std::size_t>(i)])] +=
        lambda[static_cast<std::size_t>(i)];
  }
  return c;
}

EquilibriumReport equilibria(std::span<const double> poly, Interval window,
                             double deriv_tol) {
  if (!(window.lo < window.hi)) throw InvalidArgument("degenerate window");
  const std::vector<double> p = trimmed(poly);
  if (p.size() == 1 && p[0] == 0.0) {
    throw InvalidArgument("identically zero polynomial");
  }
  EquilibriumReport report;
  report.window = window;
  const std::vector<double> roots = real_roots(p, window.lo, window.hi);
  if (roots.empty()) return report;

  const double maxc = poly_max_abs_coeff(p);

  // field signs on the gaps between consecutive roots
  std::vector<double> gaps;
  gaps.push_back(window.lo);
  for (double r : roots) gaps.push_back(r);
  gaps.push_back(window.hi);

  for (std::size_t j = 0; j < roots.size(); ++j) {
    Equilibrium eq;
    eq.location = roots[j];

    std::vector<double> deriv = p;
    int mult = 0;
    for (int order = 1; order <= static_cast<int>(p.size()) - 1; ++order) {
      deriv = poly_derive(deriv);
      if (std::abs(poly_eval(deriv, roots[j])) > deriv_tol * maxc) {
        mult = order;
        break;
      }
    }
    eq.multiplicity = mult == 0 ? static_cast<int>(p.size()) - 1 : mult;

    const double left_mid = 0.5 * (gaps[j] + gaps[j + 1]);
    const double right_mid = 0.5 * (gaps[j + 1] + gaps[j + 2]);
    const double vl = poly_eval(p, left_mid);
    const double vr = poly_eval(p, right_mid);
    if (vl > 0 && vr < 0) {
      eq.stability = Stability::Attracting;
    } else if (vl < 0 && vr > 0) {
      eq.stability = Stability::Repelling;
    } else {
      eq.stability = Stability::SemiStable;
    }
    report.equilibria.push_back(eq);
  }
  return report;
}

BifurcationTable sweep(const UnfoldingFamily& fam,
                       std::span<const AxisSpec> axes, Interval window,
                       std::size_t node_cap) {
  if (static_cast<int>(axes.size()) != fam.param_count) {
    throw InvalidArgument("axis count must match the parameter count");
  }
  std::size_t total = 1;
  for (const AxisSpec& ax : axes) {
    if (ax.count < 1) throw InvalidArgument("axis needs at least one node");
    total *= static_cast<std::size_t>(ax.count);
    if (total > node_cap) {
      throw InvalidArgument("grid exceeds the node cap of " +
                            std::to_string(node_cap));
    }
  }

  BifurcationTable table;
  table.param_count = axes.size();
  table.rows.reserve(total);

  std::vector<int> idx(axes.size(), 0);
  std::vector<double> lambda(axes.size(), 0.0);
  for (std::size_t node = 0; node < total; ++node) {
    for (std::size_t d = 0; d < axes.size(); ++d) {
      const AxisSpec& ax = axes[d];
      lambda[d] = ax.count == 1 ? ax.lo
                                : ax.lo + (ax.hi - ax.lo) * idx[d] /
                                      (ax.count - 1.0);
    }
    EquilibriumReport row = equilibria(instantiate(fam, lambda), window);
    row.params = lambda;
    table.max_equilibria = std::max(table.max_equilibria,
                                    row.equilibria.size());
    table.rows.push_back(std::move(row));
    // odometer, last axis fastest
    for (std::size_t d = axes.size(); d-- > 0;) {
      if (++idx[d] < axes[d].count) break;
      idx[d] = 0;
    }
  }
  return table;
}

void write_csv(const BifurcationTable& table, std::ostream& os) {
  for (std::size_t i = 1; i <= table.param_count; ++i) {
    os << "lambda_" << i << ',';
  }
  os << "n_equilibria";
  for (std::size_t j = 1; j <= table.max_equilibria; ++j) {
    os << ",root_" << j << ",multiplicity_" << j << ",stability_" << j;
  }
  os << '\n';
  for (const EquilibriumReport& row : table.rows) {
    for (double l : row.params) os << format_double(l) << ',';
    os << row.equilibria.size();
    for (std::size_t j = 0; j < table.max_equilibria; ++j) {
      if (j < row.equilibria.size()) {
        const Equilibrium& eq = row.equilibria[j];
        os << ',' << format_double(eq.location) << ',' << eq.multiplicity
           << ',' << to_string(eq.stability);
      } else {
        os << ",,,";
      }
    }
    os << '\n';
  }
}

}  // namespace germkit
