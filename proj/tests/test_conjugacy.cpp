#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "germkit/conjugacy.hpp"
#include "germkit/flows.hpp"
#include "helpers.hpp"

using namespace germkit;

namespace {

double example2_phi(double x) {
  if (x == 0.0) return 0.0;
  return x / (1.0 + x * std::log(std::abs(x)) -
              x * std::log(std::abs(1.0 + x)));
}

void check_strictly_monotone(const Witness& w, int side) {
  const double r =
      0.9 * (side > 0 ? w.domain.hi : std::abs(w.domain.lo));
  double prev = w.forward(side * r / 200.0);
  for (int i = 2; i <= 200; ++i) {
    const double x = side * r * i / 200.0;
    const double value = w.forward(x);
    if (side > 0) {
      CHECK(value > prev);
    } else {
      CHECK(value < prev);
    }
    prev = value;
  }
}

}  // namespace

TEST_SUITE_BEGIN("conjugacy");

TEST_CASE("time maps of elementary fields") {
  const TimeMap tau_x = time_map(Expr::parse("x"), 1.0, Side::Positive);
  CHECK(tau_x(2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(tau_x(0.5) == doctest::Approx(std::log(0.5)).epsilon(1e-9));

  const TimeMap tau_x2 = time_map(Expr::parse("x^2"), 1.0, Side::Positive);
  CHECK(tau_x2(0.5) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("time map argument validation") {
  CHECK_THROWS_AS(time_map(Expr::parse("x"), -1.0, Side::Positive),
                  InvalidArgument);
  const TimeMap tau = time_map(Expr::parse("x"), 1.0, Side::Positive);
  CHECK_THROWS_AS(tau(-0.5), InvalidArgument);
  // a zero between the base point and 0 is rejected up front
  CHECK_THROWS_AS(time_map(Expr::parse("x - 0.25"), 0.5, Side::Positive),
                  ConjugacyError);
}

TEST_CASE("translation property of the time map") {
  std::mt19937_64 rng(2718);
  for (const char* field : {"x", "2*x", "x^2", "x^2 + x^3"}) {
    const Expr f = Expr::parse(field);
    const TimeMap tau = time_map(f, 0.5, Side::Positive);
    for (int i = 0; i < 5; ++i) {
      const double x = testutil::uniform(rng, 0.2, 0.8);
      const double t = testutil::uniform(rng, -1.0, 1.0);
      const FlowResult ft = flow(f, x, t);
      if (ft.status != FlowStatus::Ok) continue;
      CHECK(tau(ft.value) - tau(x) ==
            doctest::Approx(t).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("glued time-map homeomorphism for x vs 2x") {
  const Witness w = c0_conjugacy(Expr::parse("x"), Expr::parse("2*x"), 2.0);
  CHECK(w.orientation == Orientation::Preserving);
  CHECK(w.smoothness == Smoothness::C0);
  CHECK_FALSE(w.derivative);
  for (int i = -20; i <= 20; ++i) {
    const double x = i / 40.0;
    CHECK(w.forward(x) ==
          doctest::Approx(x * std::abs(x)).epsilon(1e-8).scale(1.0));
  }
  check_strictly_monotone(w, +1);
  check_strictly_monotone(w, -1);
}

TEST_CASE("orientation-reversing pairing for x^2 vs -x^2") {
  const Witness w = c0_conjugacy(Expr::parse("x^2"), Expr::parse("-x^2"), 1.0);
  CHECK(w.orientation == Orientation::Reversing);
  for (int i = -10; i <= 10; ++i) {
    const double x = i / 20.0;
    CHECK(w.forward(x) == doctest::Approx(-x).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("identical fields give the identity") {
  const Witness w = c0_conjugacy(Expr::parse("x^2"), Expr::parse("x^2"), 1.0);
  for (int i = -10; i <= 10; ++i) {
    const double x = i / 25.0;
    CHECK(w.forward(x) == doctest::Approx(x).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("topologically incompatible fields are rejected") {
  CHECK_THROWS_AS(c0_conjugacy(Expr::parse("-x"), Expr::parse("x^2"), 1.0),
                  ConjugacyError);
  CHECK_THROWS_AS(c0_conjugacy(Expr::parse("1 + x"), Expr::parse("x"), 1.0),
                  InvalidArgument);
  // a zero inside the working interval
  CHECK_THROWS_AS(
      c0_conjugacy(Expr::parse("x*(x - 0.5)"), Expr::parse("x"), 1.0),
      ConjugacyError);
}

TEST_CASE("rectification of regular germs") {
  SUBCASE("constant field, general target") {
    const Witness w = rectify_regular(Expr::parse("2"), false);
    CHECK(w.forward(0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(w.derivative(0.3) == doctest::Approx(0.5));
    CHECK(w.target == "1");
  }
  SUBCASE("constant field, tangent to identity") {
    const Witness w = rectify_regular(Expr::parse("2"), true);
    CHECK(w.forward(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.tangent_to_identity);
    CHECK(w.target == "2");
  }
  SUBCASE("1/(1+x) rectifies to x + x^2/2") {
    const Expr f = Expr::parse("1/(1+x)");
    const Witness w = rectify_regular(f, true);
    for (double x : {-0.4, -0.1, 0.2, 0.5}) {
      CHECK(w.forward(x) ==
            doctest::Approx(x + 0.5 * x * x).epsilon(1e-10).scale(1.0));
      // defining relation: f = a / psi'
      CHECK(f(x) == doctest::Approx(1.0 / w.derivative(x)).epsilon(1e-12));
    }
    CHECK(w.derivative(0.0) == doctest::Approx(1.0));
  }
  SUBCASE("f(0) = 0 is rejected") {
    CHECK_THROWS_AS(rectify_regular(Expr::parse("x"), false), InvalidArgument);
  }
}

TEST_CASE("linear scaling between monomial models") {
  SUBCASE("x^3 vs 4x^3") {
    const Witness w = scale_conjugacy(1.0, 4.0, 3);
    CHECK(w.forward(1.0) == doctest::Approx(2.0));
    // pullback identity: (1/psi') * a * psi(x)^3 = b * x^3
    for (double x : {-0.7, 0.3, 1.1}) {
      const double psi = w.forward(x);
      CHECK(psi * psi * psi / w.derivative(x) ==
            doctest::Approx(4.0 * x * x * x).epsilon(1e-12).scale(1.0));
    }
  }
  SUBCASE("equal coefficients give the identity") {
    const Witness w = scale_conjugacy(5.0, 5.0, 2);
    CHECK(w.forward(0.3) == doctest::Approx(0.3));
    CHECK(w.tangent_to_identity);
  }
  SUBCASE("hyperbolic coefficients are invariant") {
    CHECK_THROWS_AS(scale_conjugacy(1.0, 2.0, 1), InvalidArgument);
  }
  SUBCASE("odd k with opposite signs is impossible") {
    CHECK_THROWS_AS(scale_conjugacy(1.0, -1.0, 3), InvalidArgument);
  }
  SUBCASE("even k flips orientation instead") {
    const Witness w = scale_conjugacy(-1.0, 1.0, 2);
    CHECK(w.orientation == Orientation::Reversing);
    CHECK(w.forward(1.0) == doctest::Approx(-1.0));
  }
}

TEST_CASE("homological equation: closed-form solutions") {
  SUBCASE("f=x, g=x, k=0 gives X = -x^2") {
    const Homological sol = solve_homological(
        Expr::parse("x"), Expr::parse("x"), Expr::parse("0"));
    CHECK_FALSE(sol.kernel_note);
    for (double x : {-0.5, -0.2, 0.1, 0.4}) {
      CHECK(sol.X(x) == doctest::Approx(-x * x).epsilon(1e-10).scale(1.0));
    }
    CHECK(sol.residual_bound < 1e-8);
  }
  SUBCASE("f=x^2, g=0, k=x^3 gives X = -2x^3") {
    const Homological sol = solve_homological(
        Expr::parse("x^2"), Expr::parse("0"), Expr::parse("x^3"));
    CHECK_FALSE(sol.kernel_note);
    for (double x : {-0.5, -0.2, 0.1, 0.4}) {
      CHECK(sol.X(x) ==
            doctest::Approx(-2 * x * x * x).epsilon(1e-10).scale(1.0));
    }
    CHECK(sol.residual_bound < 1e-8);
  }
  SUBCASE("g = k = 0 gives X = 0") {
    const Homological sol = solve_homological(
        Expr::parse("x^2 + x^3"), Expr::parse("0"), Expr::parse("0"));
    for (double x : {-0.3, 0.2}) {
      CHECK(std::abs(sol.X(x)) < 1e-12);
    }
  }
}

TEST_CASE("homological equation: divergent integral falls back to a base "
          "point") {
  const Homological sol = solve_homological(
      Expr::parse("x^2"), Expr::parse("x"), Expr::parse("0"));
  CHECK(sol.kernel_note);
  CHECK(sol.base_magnitude == doctest::Approx(1e-4));
  // X(h)/h must still vanish at 0 (membership in m^2)
  double prev = std::abs(sol.X(1e-2) / 1e-2);
  for (double h : {1e-3, 1e-4}) {
    const double q = std::abs(sol.X(h) / h);
    CHECK(q < prev);
    prev = q;
  }
  CHECK(sol.residual_bound < 1e-7);
}

TEST_CASE("homological equation: jet preconditions") {
  CHECK_THROWS_AS(solve_homological(Expr::parse("x"), Expr::parse("1"),
                                    Expr::parse("0")),
                  InvalidArgument);
  CHECK_THROWS_AS(solve_homological(Expr::parse("x"), Expr::parse("x"),
                                    Expr::parse("x")),
                  InvalidArgument);
  CHECK_THROWS_AS(solve_homological(Expr::parse("0"), Expr::parse("x"),
                                    Expr::parse("0")),
                  InvalidArgument);
}

TEST_CASE("homological residual stays below 1e-8 on polynomial inputs") {
  std::mt19937_64 rng(9119);
  for (int trial = 0; trial < 12; ++trial) {
    const int k0 = static_cast<int>(rng() % 4);  // order of f at 0, <= 3
    // f = c*x^k0 + small corrections: no zeros besides the origin
    std::vector<double> fc(7, 0.0);
    fc[static_cast<std::size_t>(k0)] = testutil::signed_uniform(rng, 0.5, 2.0);
    for (int j = k0 + 1; j <= 6; ++j) {
      fc[static_cast<std::size_t>(j)] =
          0.1 * testutil::uniform(rng, -1.0, 1.0);
    }
    std::vector<double> gc(7, 0.0);
    for (int j = 1; j <= 6; ++j) {
      gc[static_cast<std::size_t>(j)] = testutil::uniform(rng, -1.0, 1.0);
    }
    std::vector<double> kc(7, 0.0);
    for (int j = 2; j <= 6; ++j) {
      kc[static_cast<std::size_t>(j)] = testutil::uniform(rng, -1.0, 1.0);
    }
    const auto text = [](const std::vector<double>& c) {
      std::string out;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0.0) continue;
        if (!out.empty()) out += " + ";
        out += format_double(c[i]) + "*x^" + std::to_string(i);
      }
      return out.empty() ? std::string("0") : out;
    };
    const Homological sol = solve_homological(
        Expr::parse(text(fc)), Expr::parse(text(gc)), Expr::parse(text(kc)));
    CHECK_MESSAGE(sol.residual_bound < 1e-8, text(fc));
  }
}

TEST_CASE("c1 conjugator reproduces the closed-form tti map for x^2 + x^3") {
  const Expr f = Expr::parse("x^2 + x^3");
  const Witness w = c1_conjugator(f, 0.5, true);
  CHECK(w.smoothness == Smoothness::C1);
  CHECK(w.tangent_to_identity);
  CHECK_FALSE(w.c1_downgraded);
  for (int i = 1; i <= 20; ++i) {
    const double x = 0.02 * i;  // (0, 0.4]
    CHECK(w.forward(x) ==
          doctest::Approx(example2_phi(x)).epsilon(1e-8).scale(1.0));
  }
  // defining relation with an independent (finite-difference) derivative
  for (double x : {0.05, 0.15, 0.3, 0.4}) {
    const double h = 1e-6;
    const double dphi = (w.forward(x + h) - w.forward(x - h)) / (2 * h);
    const double phi = w.forward(x);
    CHECK(phi * phi / dphi == doctest::Approx(f(x)).epsilon(1e-8).scale(1.0));
  }
  // measured difference quotients decrease toward the tti limit
  CHECK(w.tti_quotients[2] < w.tti_quotients[1]);
  CHECK(w.tti_quotients[1] < w.tti_quotients[0]);
  check_strictly_monotone(w, +1);
  check_strictly_monotone(w, -1);
}

TEST_CASE("c1 conjugator is the identity on the model itself") {
  const Witness w = c1_conjugator(Expr::parse("x^2"), 0.5, true);
  for (double x : {-0.4, -0.1, 0.05, 0.3}) {
    CHECK(w.forward(x) == doctest::Approx(x).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("c1 conjugator handles hyperbolic germs") {
  const Expr f = Expr::parse("2*x + x^3");
  const Witness w = c1_conjugator(f, 0.5, true);
  CHECK(w.target == "2*x");
  GridSpec grid;
  grid.x_lo = -0.05;
  grid.x_hi = 0.05;
  grid.nx = 7;
  grid.nt = 7;
  const VerifyResult r = verify_conjugacy(f, Expr::parse("2*x"), w, grid);
  CHECK(r.max_residual < 1e-7);

  // attracting side: negative linear coefficient
  const Expr fa = Expr::parse("-x + x^2");
  const Witness wa = c1_conjugator(fa, 0.4, true);
  CHECK(wa.target == "-1*x");
  const VerifyResult ra = verify_conjugacy(fa, Expr::parse("-x"), wa, grid);
  CHECK(ra.max_residual < 1e-7);
  CHECK(wa.tangent_to_identity);
}

TEST_CASE("c1 conjugator: general case rescales onto the monic model") {
  SUBCASE("even order, a=2") {
    const Expr f = Expr::parse("2*x^2 + x^3");
    const Witness w = c1_conjugator(f, 0.4, false);
    CHECK(w.target == "x^2");
    CHECK_FALSE(w.tangent_to_identity);
    GridSpec grid;
    grid.x_lo = -0.1;
    grid.x_hi = 0.1;
    grid.nx = 7;
    grid.nt = 5;
    const VerifyResult r = verify_conjugacy(f, Expr::parse("x^2"), w, grid);
    CHECK(r.max_residual < 1e-7);
  }
  SUBCASE("odd order with a<0 lands on -x^3") {
    const Expr f = Expr::parse("-2*x^3");
    const Witness w = c1_conjugator(f, 0.4, false);
    CHECK(w.target == "-x^3");
    GridSpec grid;
    grid.x_lo = -0.1;
    grid.x_hi = 0.1;
    grid.nx = 7;
    grid.nt = 5;
    const VerifyResult r = verify_conjugacy(f, Expr::parse("-x^3"), w, grid);
    CHECK(r.max_residual < 1e-7);
  }
}

TEST_CASE("c1 conjugator delegates regular germs to rectification") {
  const Expr f = Expr::parse("3 + x");
  const Witness w = c1_conjugator(f, 0.5, true);
  CHECK(w.target == "3");
  GridSpec grid;
  grid.x_lo = -0.2;
  grid.x_hi = 0.2;
  grid.nx = 5;
  grid.t_lo = -0.05;
  grid.t_hi = 0.05;
  grid.nt = 5;
  const VerifyResult r = verify_conjugacy(f, Expr::parse("3"), w, grid);
  CHECK(r.max_residual < 1e-7);
}

TEST_CASE("c1 conjugator rejects flat and zero germs") {
  CHECK_THROWS_AS(c1_conjugator(Expr::parse("0"), 0.5, true),
                  NotFinitelyDetermined);
  // jet-flat at every order the conjugator inspects
  CHECK_THROWS_AS(c1_conjugator(Expr::parse("x^30"), 0.5, true),
                  NotFinitelyDetermined);
}

TEST_CASE("c1 conjugator copes with a small radius of convergence") {
  // 1/f has a pole at -1/12, well inside the default handoff radius
  const Expr f = Expr::parse("x^2 + 12*x^3");
  const Witness w = c1_conjugator(f, 0.05, true);
  GridSpec grid;
  grid.x_lo = -0.02;
  grid.x_hi = 0.02;
  grid.nx = 5;
  grid.nt = 5;
  const VerifyResult r = verify_conjugacy(f, Expr::parse("x^2"), w, grid);
  CHECK(r.max_residual < 1e-6);

  // the image runs out of the model's reach just past x ~ 0.0203, and the
  // reported domain reflects that
  CHECK(w.domain.hi < 0.025);
  CHECK(w.domain.hi > 0.015);
  // closed form by partial fractions of 1/(x^2(1+12x))
  double worst = 0.0;
  for (int i = -40; i <= 40; ++i) {
    if (i == 0) continue;
    const double x = 0.95 * (i > 0 ? w.domain.hi : -w.domain.lo) * i / 40.0;
    const double ref =
        x / (1.0 + 12 * x * std::log(std::abs(x)) -
             12 * x * std::log(std::abs(1.0 + 12 * x)));
    worst = std::max(worst, std::abs(w.forward(x) - ref));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("witness flow commutation across kinds") {
  std::mt19937_64 rng(12993);
  const std::vector<std::string> fields = {"x^2 + x^3", "x^3 + x^4",
                                           "-x^2 + x^3", "2*x + x^2"};
  for (const auto& text : fields) {
    const Expr f = Expr::parse(text);
    const Witness w = c1_conjugator(f, 0.4, true);
    const Expr target = Expr::parse(w.target);
    GridSpec grid;
    grid.x_lo = -0.08;
    grid.x_hi = 0.08;
    grid.nx = 5;
    grid.nt = 5;
    const VerifyResult r = verify_conjugacy(f, target, w, grid);
    CHECK_MESSAGE(r.max_residual < 1e-6, text);
  }
}

TEST_CASE("witness evaluation is safe for concurrent reads") {
  const Expr f = Expr::parse("x^2 + x^3");
  const Witness w = c1_conjugator(f, 0.5, true);
  std::vector<double> reference(64);
  for (int i = 0; i < 64; ++i) {
    reference[i] = w.forward(0.3 * (i + 1) / 64.0);
  }
  std::array<bool, 4> agree{true, true, true, true};
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (int round = 0; round < 50; ++round) {
        for (int i = 0; i < 64; ++i) {
          if (w.forward(0.3 * (i + 1) / 64.0) != reference[i]) {
            agree[t] = false;
          }
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (bool ok : agree) CHECK(ok);
}

TEST_CASE("builtin maps") {
  CHECK(builtin_witness("identity").forward(0.3) == 0.3);
  CHECK(builtin_witness("neg").forward(0.3) == -0.3);
  CHECK(builtin_witness("signed-square").forward(-0.5) == -0.25);
  CHECK(builtin_witness("example2-phi").forward(0.2) ==
        doctest::Approx(example2_phi(0.2)).epsilon(1e-14));
  CHECK_THROWS_AS(builtin_witness("nope"), InvalidArgument);
}

TEST_SUITE_END();
