#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "germkit/classify.hpp"
#include "helpers.hpp"

using namespace germkit;

TEST_SUITE_BEGIN("classify");

TEST_CASE("degenerate germ x^2 + x^3") {
  const Classification c = classify_germ(Expr::parse("x^2 + x^3"));
  CHECK(c.kind == GermKind::Degenerate);
  CHECK(c.k == 2);
  CHECK(c.a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.determinacy_c1 == 2);
  REQUIRE(c.determinacy_cinf);
  CHECK(*c.determinacy_cinf == 3);
  REQUIRE(c.d);
  CHECK(*c.d == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.c0_class == C0Class::SemiStableRight);
  CHECK(c.sign == 1);
}

TEST_CASE("hyperbolic germ 2x + x^2") {
  const Classification c = classify_germ(Expr::parse("2*x + x^2"));
  CHECK(c.kind == GermKind::Hyperbolic);
  CHECK(c.k == 1);
  CHECK(c.a == doctest::Approx(2.0));
  const NormalForm nf = normal_form(c, Relation::C1, false);
  CHECK(nf.display == "2*x");
  CHECK(nf.coefficients[1] == doctest::Approx(2.0));
}

TEST_CASE("regular germ 3 + x") {
  const Classification c = classify_germ(Expr::parse("3 + x"));
  CHECK(c.kind == GermKind::Regular);
  CHECK(c.a == doctest::Approx(3.0));
  CHECK(c.c0_class == C0Class::Regular);
  CHECK(normal_form(c, Relation::C1, false).display == "1");
  CHECK(normal_form(c, Relation::C1, true).display == "3");
}

TEST_CASE("-x^2 mirrors x^2") {
  const Classification neg = classify_germ(Expr::parse("-x^2"));
  const Classification pos = classify_germ(Expr::parse("x^2"));
  CHECK(neg.c0_class == C0Class::SemiStableLeft);
  CHECK(pos.c0_class == C0Class::SemiStableRight);
  // both land on the same topological model, through an
  // orientation-reversing pairing for the mirrored germ
  CHECK(normal_form(neg, Relation::C0, false).display == "x^2");
  CHECK(normal_form(pos, Relation::C0, false).display == "x^2");
  CHECK(neg.sign == -1);
}

TEST_CASE("zero field and flat germs") {
  CHECK(classify_germ(Expr::parse("0")).kind == GermKind::ZeroField);
  CHECK(classify_germ(Expr::parse("x - x")).kind == GermKind::ZeroField);

  const Classification flat = classify_germ(Expr::parse("x^20"), 16);
  CHECK(flat.kind == GermKind::Flat);
  CHECK(flat.checked_order == 16);
  CHECK_FALSE(flat.c0_class);

  const Classification sampled =
      classify_germ(Expr::parse("x^20"), 16, kZeroTol, true);
  CHECK(sampled.kind == GermKind::Flat);
  CHECK(sampled.c0_class == C0Class::SemiStableRight);

  CHECK_THROWS_AS(normal_form(flat, Relation::C1, false),
                  NotFinitelyDetermined);
  CHECK_THROWS_AS(normal_form(classify_germ(Expr::parse("0")), Relation::C0,
                              false),
                  NotFinitelyDetermined);
}

TEST_CASE("normal form tables") {
  Classification deg;
  deg.kind = GermKind::Degenerate;
  deg.k = 2;
  deg.a = 1.0;
  deg.d = 1.0;
  deg.sign = 1;
  deg.c0_class = C0Class::SemiStableRight;
  const NormalForm cinf = normal_form(deg, Relation::Cinf, false);
  CHECK(cinf.display == "x^2 + 1*x^3");
  CHECK(cinf.coefficients[2] == 1.0);
  CHECK(cinf.coefficients[3] == 1.0);

  Classification hyp;
  hyp.kind = GermKind::Hyperbolic;
  hyp.k = 1;
  hyp.a = -3.0;
  hyp.sign = -1;
  hyp.c0_class = C0Class::Attracting;
  const NormalForm tti = normal_form(hyp, Relation::C1, true);
  CHECK(tti.display == "-3*x");
  CHECK(tti.coefficients[1] == -3.0);
  CHECK(normal_form(hyp, Relation::C0, false).display == "-x");

  Classification reg;
  reg.kind = GermKind::Regular;
  reg.a = 5.0;
  reg.c0_class = C0Class::Regular;
  CHECK(normal_form(reg, Relation::C1, false).display == "1");
  CHECK(normal_form(reg, Relation::Cinf, true).display == "5");
}

TEST_CASE("smooth sign rule: odd k keeps a monic plus sign") {
  const Classification c = classify_germ(Expr::parse("-x^3 - x^4"));
  CHECK(c.kind == GermKind::Degenerate);
  CHECK(c.k == 3);
  CHECK(c.a == doctest::Approx(-1.0));
  CHECK(c.sign == 1);
  const NormalForm nf = normal_form(c, Relation::Cinf, false);
  CHECK(nf.coefficients[3] == 1.0);

  const Classification even = classify_germ(Expr::parse("-x^2"));
  CHECK(normal_form(even, Relation::Cinf, false).coefficients[2] == -1.0);
}

TEST_CASE("jet reduction: fixed moduli") {
  SUBCASE("x^2 + x^3 is already reduced") {
    const Series s = Series::taylor(Expr::parse("x^2 + x^3"), 6);
    const ReduceResult r = belitskii_reduce(s, 2);
    CHECK(r.a == doctest::Approx(1.0));
    CHECK(r.d == doctest::Approx(1.0).epsilon(1e-12));
    // k = 2 has no removable orders, so the change is the identity
    CHECK(r.change[1] == 1.0);
    for (int i = 2; i <= r.change.order(); ++i) CHECK(r.change[i] == 0.0);
  }
  SUBCASE("x^2 has modulus zero") {
    const Series s = Series::taylor(Expr::parse("x^2"), 6);
    const ReduceResult r = belitskii_reduce(s, 2);
    CHECK(r.d == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  }
  SUBCASE("x^3 + x^4 reduces to x^3 - x^5") {
    const Series s = Series::taylor(Expr::parse("x^3 + x^4"), 8);
    const ReduceResult r = belitskii_reduce(s, 3);
    CHECK(r.a == doctest::Approx(1.0));
    CHECK(r.d == doctest::Approx(-1.0).epsilon(1e-12));
    // the change really kills the x^4 term
    CHECK(std::abs(r.reduced[4]) < 1e-13);
  }
}

TEST_CASE("the truncation order extends automatically for the modulus") {
  // k=3 needs order 2k-1=5; a max_order of 4 still finds k and then d
  const Classification c = classify_germ(Expr::parse("x^3 + x^4"), 4);
  CHECK(c.kind == GermKind::Degenerate);
  CHECK(c.k == 3);
  REQUIRE(c.d);
  CHECK(*c.d == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("jet reduction: errors") {
  const Series s = Series::taylor(Expr::parse("x^2 + x^3"), 6);
  CHECK_THROWS_AS(belitskii_reduce(s, 3), InvalidArgument);  // wrong k
  const Series shallow = Series::taylor(Expr::parse("x^3"), 4);
  CHECK_THROWS_AS(belitskii_reduce(shallow, 3), InvalidArgument);
}

TEST_CASE("modulus equals the residue invariant on random germs") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const Series s = testutil::random_germ(rng, k, 2 * k + 4);
    const ReduceResult r = belitskii_reduce(s, k);
    const double expected = -r.a * r.a * reciprocal_residue(s, k);
    CHECK(r.d == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("the returned change of coordinates reproduces the reduced jet") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const Series s = testutil::random_germ(rng, k, 2 * k + 6);
    const ReduceResult r = belitskii_reduce(s, k);
    CHECK(r.change[0] == 0.0);
    CHECK(r.change[1] == 1.0);
    const Series pulled = jet_pullback(s, r.change);
    for (int i = 0; i <= 2 * k - 1; ++i) {
      CHECK(pulled[i] ==
            doctest::Approx(r.reduced[i]).epsilon(1e-10).scale(1.0));
    }
    // all orders strictly between k and 2k-1 were removed
    for (int m = k + 1; m <= 2 * k - 2; ++m) {
      CHECK(std::abs(r.reduced[m]) < 1e-10);
    }
  }
}

TEST_CASE("residue is invariant under tangent-to-identity substitutions") {
  std::mt19937_64 rng(1311);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const Series f = testutil::random_germ(rng, k, 16);
    const Series psi = testutil::random_tti_jet(rng, 16);
    const Series pulled = jet_pullback(f, psi);
    CHECK(reciprocal_residue(pulled, k) ==
          doctest::Approx(reciprocal_residue(f, k)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("classification is invariant under tti pullback") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const Series f = testutil::random_germ(rng, k, 16);
    const Series psi = testutil::random_tti_jet(rng, 16);
    const Classification before = classify_series(f);
    const Classification after = classify_series(jet_pullback(f, psi));
    CHECK(after.kind == before.kind);
    CHECK(after.k == before.k);
    CHECK(after.a ==
          doctest::Approx(before.a).epsilon(1e-8).scale(1.0));
    if (before.d && after.d) {
      CHECK(*after.d == doctest::Approx(*before.d).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("general pullback rescales a by c^(k-1)") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const Series f = testutil::random_germ(rng, k, 16);
    const double c = testutil::uniform(rng, 0.5, 2.0);
    std::vector<double> jet(17, 0.0);
    jet[1] = c;
    for (int j = 2; j <= 5; ++j) jet[j] = testutil::uniform(rng, -0.3, 0.3);
    const Classification before = classify_series(f);
    const Classification after = classify_series(jet_pullback(f, Series(jet)));
    CHECK(after.kind == before.kind);
    CHECK(after.k == before.k);
    CHECK(after.a == doctest::Approx(before.a * std::pow(c, k - 1))
                         .epsilon(1e-8)
                         .scale(1.0));
  }
}

TEST_CASE("perturbations above the determinacy order are invisible") {
  std::mt19937_64 rng(777);
  for (int k : {2, 3, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> c(static_cast<std::size_t>(k) + 5, 0.0);
      c[static_cast<std::size_t>(k)] = 1.0;
      for (std::size_t i = static_cast<std::size_t>(k) + 1; i < c.size();
           ++i) {
        c[i] = testutil::uniform(rng, -1.0, 1.0);
      }
      const Classification cls = classify_series(Series(c));
      CHECK(cls.kind == GermKind::Degenerate);
      CHECK(cls.k == k);
      CHECK(cls.a == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("pullback by the identity changes nothing") {
  const Series f = Series::taylor(Expr::parse("x^2 + x^3"), 10);
  const Series g = jet_pullback(f, Series::identity(10));
  for (int i = 0; i <= g.order(); ++i) {
    CHECK(g[i] == doctest::Approx(f[i]).epsilon(1e-13).scale(1.0));
  }
}

TEST_SUITE_END();
