#include "germkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "germkit/numerics.hpp"

namespace germkit {

namespace {

C0Class c0_class_for(int k, double a) {
  if (k == 0) return C0Class::Regular;
  if (k % 2 == 1) return a > 0 ? C0Class::Repelling : C0Class::Attracting;
  return a > 0 ? C0Class::SemiStableRight : C0Class::SemiStableLeft;
}

// Consistent sign of f on a logarithmic sample of one semi-axis, 0 when the
// samples disagree or cannot be evaluated.
int sampled_sign(const Expr& f, double lo, double hi, int side) {
  int sign = 0;
  for (int i = 0; i < 16; ++i) {
    const double mag = lo * std::pow(hi / lo, i / 15.0);
    double v;
    try {
      v = f(side * mag);
    } catch (const DomainError&) {
      return 0;
    }
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) return 0;
    if (sign == 0) sign = s;
    if (s != sign) return 0;
  }
  return sign;
}

std::string power_display(int k) {
  return k == 1 ? std::string("x") : "x^" + std::to_string(k);
}

std::string monic_display(int sign, int k) {
  return (sign < 0 ? "-" : "") + power_display(k);
}

std::string coeff_display(double c, int k) {
  return format_double(c) + "*" + power_display(k);
}

std::string with_modulus(std::string head, double d, int m) {
  head += d < 0 ? " - " : " + ";
  head += coeff_display(std::abs(d), m);
  return head;
}

Series monomial(double c, int degree, int order) {
  std::vector<double> v(static_cast<std::size_t>(order) + 1, 0.0);
  v[static_cast<std::size_t>(degree)] = c;
  return Series(std::move(v));
}

}  // namespace

const char* to_string(GermKind k) {
  switch (k) {
    case GermKind::Regular:    return "Regular";
    case GermKind::Hyperbolic: return "Hyperbolic";
    case GermKind::Degenerate: return "Degenerate";
    case GermKind::Flat:       return "Flat";
    case GermKind::ZeroField:  return "ZeroField";
  }
  return "?";
}

const char* to_string(C0Class c) {
  switch (c) {
    case C0Class::Regular:         return "regular";
    case C0Class::Attracting:      return "attracting";
    case C0Class::Repelling:       return "repelling";
    case C0Class::SemiStableRight: return "semi-stable-right";
    case C0Class::SemiStableLeft:  return "semi-stable-left";
  }
  return "?";
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::C0:   return "c0";
    case Relation::C1:   return "c1";
    case Relation::Cinf: return "cinf";
  }
  return "?";
}

Classification classify_series(const Series& s, double tol) {
  Classification cls;
  cls.checked_order = s.order();
  const auto kopt = s.first_nonzero(tol);
  if (!kopt) {
    cls.kind = GermKind::Flat;
    return cls;
  }
  const int k = *kopt;
  cls.k = k;
  cls.a = s[k];
  cls.c0_class = c0_class_for(k, cls.a);
  if (k == 0) {
    cls.kind = GermKind::Regular;
    cls.determinacy_c1 = 0;
    cls.sign = +1;
    return cls;
  }
  if (k == 1) {
    cls.kind = GermKind::Hyperbolic;
    cls.determinacy_c1 = 1;
    cls.sign = cls.a > 0 ? +1 : -1;
    return cls;
  }
  cls.kind = GermKind::Degenerate;
  cls.determinacy_c1 = k;
  cls.determinacy_cinf = 2 * k - 1;
  cls.sign = (k % 2 == 1) ? +1 : (cls.a > 0 ? +1 : -1);
  if (s.order() >= 2 * k - 1) {
    const ReduceResult red = belitskii_reduce(s, k, tol);
    const double expected = -cls.a * cls.a * reciprocal_residue(s, k);
    if (std::abs(red.d - expected) >
        1e-6 * std::max(1.0, std::abs(expected))) {
      throw NumericsError("modulus cross-check failed (jet reduction " +
                          format_double(red.d) + " vs residue " +
                          format_double(expected) + ")");
    }
    cls.d = red.d;
  }
  return cls;
}

Classification classify_germ(const Expr& f, int max_order, double tol,
                             bool sample_flat_signs) {
  if (max_order < 2) throw InvalidArgument("max_order must be >= 2");
  Series s = Series::taylor(f, max_order);
  Classification cls = classify_series(s, tol);
  if (cls.kind == GermKind::Degenerate && !cls.d) {
    // the caller's order found k but not the resonant order; extend
    s = Series::taylor(f, std::max(max_order, 2 * cls.k + 2));
    cls = classify_series(s, tol);
  }
  cls.checked_order = max_order;
  if (cls.kind == GermKind::Flat) {
    bool all_zero = true;
    bool any_evaluated = false;
    for (int side : {-1, +1}) {
      for (int i = 0; i < 24 && all_zero; ++i) {
        const double mag = 1e-6 * std::pow(1e6, i / 23.0);  // up to 1.0
        try {
          const double v = f(side * mag);
          any_evaluated = true;
          if (std::abs(v) > 1e-12) all_zero = false;
        } catch (const DomainError&) {
        }
      }
    }
    if (all_zero && any_evaluated) {
      cls.kind = GermKind::ZeroField;
    } else if (sample_flat_signs) {
      const int sp = sampled_sign(f, 1e-6, 1e-2, +1);
      const int sm = sampled_sign(f, 1e-6, 1e-2, -1);
      if (sp != 0 && sm != 0) {
        if (sm > 0 && sp < 0) cls.c0_class = C0Class::Attracting;
        else if (sm < 0 && sp > 0) cls.c0_class = C0Class::Repelling;
        else if (sm > 0 && sp > 0) cls.c0_class = C0Class::SemiStableRight;
        else cls.c0_class = C0Class::SemiStableLeft;
      }
    }
  }
  return cls;
}

NormalForm normal_form(const Classification& c, Relation relation, bool tti) {
  if (c.kind == GermKind::Flat || c.kind == GermKind::ZeroField) {
    throw NotFinitelyDetermined(
        std::string(to_string(c.kind)) +
        " germ has no finite normal form (checked through order " +
        std::to_string(c.checked_order) + ")");
  }
  NormalForm nf;
  nf.relation = relation;
  nf.tangent_to_identity = tti && relation != Relation::C0;

  if (relation == Relation::C0) {
    if (!c.c0_class) {
      throw InvalidArgument("classification carries no topological class");
    }
    switch (*c.c0_class) {
      case C0Class::Regular:
        nf.coefficients = Series(std::vector<double>{1.0});
        nf.display = "1";
        break;
      case C0Class::Attracting:
        nf.coefficients = monomial(-1.0, 1, 1);
        nf.display = "-x";
        break;
      case C0Class::Repelling:
        nf.coefficients = monomial(1.0, 1, 1);
        nf.display = "x";
        break;
      case C0Class::SemiStableRight:
      case C0Class::SemiStableLeft:
        nf.coefficients = monomial(1.0, 2, 2);
        nf.display = "x^2";
        break;
    }
    return nf;
  }

  switch (c.kind) {
    case GermKind::Regular:
      if (nf.tangent_to_identity) {
        nf.coefficients = Series(std::vector<double>{c.a});
        nf.display = format_double(c.a);
      } else {
        nf.coefficients = Series(std::vector<double>{1.0});
        nf.display = "1";
      }
      return nf;
    case GermKind::Hyperbolic:
      nf.coefficients = monomial(c.a, 1, 1);
      nf.display = coeff_display(c.a, 1);
      return nf;
    case GermKind::Degenerate: {
      const int k = c.k;
      if (relation == Relation::C1) {
        if (nf.tangent_to_identity) {
          nf.coefficients = monomial(c.a, k, k);
          nf.display = coeff_display(c.a, k);
        } else {
          nf.coefficients = monomial(1.0, k, k);
          nf.display = monic_display(+1, k);
        }
        return nf;
      }
      if (!c.d) {
        throw InvalidArgument(
            "smooth normal form needs the modulus d; classify with "
            "truncation order >= 2k-1");
      }
      const int m = 2 * k - 1;
      if (nf.tangent_to_identity) {
        nf.coefficients = monomial(c.a, k, m) + monomial(*c.d, m, m);
        nf.display = with_modulus(coeff_display(c.a, k), *c.d, m);
      } else {
        nf.coefficients =
            monomial(static_cast<double>(c.sign), k, m) + monomial(*c.d, m, m);
        nf.display = with_modulus(monic_display(c.sign, k), *c.d, m);
      }
      return nf;
    }
    default:
      break;
  }
  throw InvalidArgument("unclassifiable germ");
}

ReduceResult belitskii_reduce(const Series& s, int k, double tol) {
  if (k < 2) throw InvalidArgument("jet reduction requires k >= 2");
  const int n = s.order();
  if (n < 2 * k - 1) {
    throw InvalidArgument("insufficient truncation order (need >= 2k-1)");
  }
  const auto lead = s.first_nonzero(tol);
  if (!lead || *lead != k) {
    throw InvalidArgument("series does not have its first nonzero "
                          "coefficient at the stated order k");
  }
  const double a = s[k];
  Series current = s;
  Series change = Series::identity(n);
  // Substituting x -> x + c*x^(m-k+1) shifts the order-m coefficient by
  // a*c*(2k-1-m) and leaves lower orders alone, so orders are cleared
  // bottom-up; 2k-1 is resonant and survives as the modulus.
  for (int m = k + 1; m <= 2 * k - 2; ++m) {
    const double cm = current[m];
    if (cm == 0.0) continue;
    const int j = m - k + 1;
    const double c = -cm / (a * static_cast<double>(2 * k - 1 - m));
    std::vector<double> psi(static_cast<std::size_t>(n) + 1, 0.0);
    psi[1] = 1.0;
    psi[static_cast<std::size_t>(j)] = c;
    std::vector<double> dpsi(static_cast<std::size_t>(n) + 1, 0.0);
    dpsi[0] = 1.0;
    dpsi[static_cast<std::size_t>(j - 1)] += static_cast<double>(j) * c;
    const Series subst(std::move(psi));
    current = current.compose(subst) * Series(std::move(dpsi)).reciprocal();
    change = change.compose(subst);
  }
  return {a, current[2 * k - 1], change, current};
}

double reciprocal_residue(const Series& s, int k) {
  if (k < 1) throw InvalidArgument("residue needs a zero of order k >= 1");
  if (s.order() < 2 * k - 1) {
    throw InvalidArgument("insufficient truncation order for the residue");
  }
  const auto c = s.coeffs();
  std::vector<double> unit(c.begin() + k, c.end());
  return Series(std::move(unit)).reciprocal()[k - 1];
}

Series jet_pullback(const Series& field, const Series& change) {
  const int n = std::min(field.order(), change.order());
  if (n < 1) throw InvalidArgument("pullback needs order >= 1");
  const Series psi = change.truncated(n);
  const Series composed = field.truncated(n).compose(psi);
  return composed.truncated(n - 1) * psi.derive().reciprocal();
}

}  // namespace germkit
