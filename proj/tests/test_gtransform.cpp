#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace srvbv;
using testsup::v2;

TEST_CASE("Reparam basics") {
  const Reparam id = Reparam::identity();
  REQUIRE(id(0.25) == 0.25);
  REQUIRE(id.is_strict());

  Reparam plateau;
  plateau.knots.push_back({0.0, 0.0});
  plateau.knots.push_back({0.25, 0.5});
  plateau.knots.push_back({0.75, 0.5});
  plateau.knots.push_back({1.0, 1.0});
  REQUIRE_FALSE(plateau.is_strict());
  REQUIRE(plateau(0.5) == 0.5);   // inside the plateau, exactly the plateau value
  REQUIRE(plateau(0.25) == 0.5);
  REQUIRE(plateau(1.0) == 1.0);

  Reparam bad;
  bad.knots.push_back({0.0, 0.0});
  bad.knots.push_back({0.5, 0.6});
  bad.knots.push_back({1.0, 0.4});  // decreasing y
  REQUIRE_THROWS_AS(require_valid(bad), std::invalid_argument);
}

TEST_CASE("compose_ac: identity and plateau behavior") {
  std::mt19937_64 rng(301);
  const AcCurve c = testsup::random_ac(rng, 2);
  const AcCurve same = compose_ac(c, Reparam::identity());
  REQUIRE(testsup::max_pointwise_gap(as_sbv(same), as_sbv(c)) == 0.0);

  Reparam hold;  // constant at 0.5 on [0.25, 0.75]
  hold.knots.push_back({0.0, 0.0});
  hold.knots.push_back({0.25, 0.5});
  hold.knots.push_back({0.75, 0.5});
  hold.knots.push_back({1.0, 1.0});
  const AcCurve held = compose_ac(c, hold);
  REQUIRE(exact_equal(eval(held, 0.4), eval(c, 0.5)));
  REQUIRE(exact_equal(eval(held, 0.6), eval(c, 0.5)));
}

TEST_CASE("compose_ac preserves length under a dense strict reparametrisation") {
  Reparam square;  // x^2 sampled at 64 knots
  for (int k = 0; k <= 64; ++k) {
    const double x = k / 64.0;
    square.knots.push_back({x, x * x});
  }
  square.knots.back() = {1.0, 1.0};
  const AcCurve c = testsup::l_shape();
  REQUIRE(std::abs(length(compose_ac(c, square)) - length(c)) < 1e-12);
}

TEST_CASE("xi and alpha on canonical fixtures") {
  SECTION("AC curve: identity profile, alpha zero") {
    const auto [profile, alpha] = xi(as_sbv(testsup::l_shape()));
    REQUIRE(alpha == 0.0);
    REQUIRE_FALSE(has_jumps(profile));
    for (const Node& n : profile.nodes) REQUIRE(n.left[0] == Catch::Approx(n.t).margin(1e-15));
  }
  SECTION("pure step: alpha 1/2, profile jumps from 1/4 to 3/4") {
    const auto [profile, alpha] = xi(testsup::unit_step());
    REQUIRE(alpha == 0.5);
    REQUIRE(eval(profile, 0.5, EvalSide::left())[0] == 0.25);
    REQUIRE(eval(profile, 0.5, EvalSide::right())[0] == 0.75);
    REQUIRE(eval(profile, 0.25)[0] == 0.125);
  }
  SECTION("ramp-plus-step: alpha 1/4, jump of height 1/4 at 0.5") {
    const auto [profile, alpha] = xi(testsup::ramp_plus_step());
    REQUIRE(alpha == 0.25);
    REQUIRE(eval(profile, 0.5, EvalSide::left())[0] == 0.375);
    REQUIRE(eval(profile, 0.5, EvalSide::right())[0] == 0.625);
  }
  SECTION("zero length is rejected") {
    SbvCurve point;
    point.dimension = 2;
    point.nodes.push_back({0.0, v2(0, 0), v2(0, 0)});
    point.nodes.push_back({1.0, v2(0, 0), v2(0, 0)});
    REQUIRE_THROWS_AS(xi(point), std::invalid_argument);
  }
}

TEST_CASE("zeta inverts xi and is Lipschitz with the predicted constant") {
  SECTION("pure step: the 2y / plateau / 2y-1 profile") {
    const Reparam z = zeta(testsup::unit_step());
    REQUIRE(z(0.125) == Catch::Approx(0.25).margin(1e-15));
    REQUIRE(z(0.25) == 0.5);
    REQUIRE(z(0.5) == 0.5);
    REQUIRE(z(0.75) == 0.5);
    REQUIRE(z(0.875) == Catch::Approx(0.75).margin(1e-15));
  }
  SECTION("random curves: zeta(xi(t)) = t off jumps, slope bounded") {
    std::mt19937_64 rng(307);
    for (int trial = 0; trial < 100; ++trial) {
      const SbvCurve c = testsup::random_sbv(rng, 2);
      const auto [profile, alpha] = xi(c);
      const Reparam z = zeta(c);
      REQUIRE(alpha >= 0.0);
      REQUIRE(alpha <= 0.5);

      double max_slope = 0.0;
      for (std::size_t i = 1; i < z.knots.size(); ++i) {
        const double dx = z.knots[i].x - z.knots[i - 1].x;
        const double dy = z.knots[i].y - z.knots[i - 1].y;
        if (dx > 0.0) max_slope = std::max(max_slope, dy / dx);
      }
      REQUIRE(max_slope <= 1.0 / (1.0 - alpha) + 1e-12);
      REQUIRE(max_slope <= 2.0 + 1e-12);

      for (int k = 0; k <= 50; ++k) {
        const double t = k / 50.0;
        if (detail::find_node(c, t) != nullptr) continue;  // skip node params entirely
        REQUIRE(std::abs(z(eval(profile, t)[0]) - t) < 1e-12);
      }
    }
  }
}

TEST_CASE("g_transform opens jumps into ramps") {
  SECTION("pure step: exact quarter points") {
    const AcCurve g = g_transform(testsup::unit_step());
    REQUIRE(g.nodes.size() == 4);
    REQUIRE(g.nodes[0].t == 0.0);
    REQUIRE(g.nodes[1].t == 0.25);
    REQUIRE(g.nodes[2].t == 0.75);
    REQUIRE(g.nodes[3].t == 1.0);
    REQUIRE(exact_equal(g.nodes[1].value, v2(0, 0)));
    REQUIRE(exact_equal(g.nodes[2].value, v2(1, 0)));
    REQUIRE(length(g) == 1.0);
  }
  SECTION("AC curve passes through unchanged") {
    const AcCurve c = testsup::l_shape();
    const AcCurve g = g_transform(as_sbv(c));
    REQUIRE(g.nodes.size() == c.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      REQUIRE(g.nodes[i].t == c.nodes[i].t);
      REQUIRE(exact_equal(g.nodes[i].value, c.nodes[i].value));
    }
  }
  SECTION("length is preserved and membership holds on random curves") {
    std::mt19937_64 rng(311);
    for (int trial = 0; trial < 100; ++trial) {
      const SbvCurve c = testsup::random_sbv(rng, 3);
      const AcCurve g = g_transform(c);
      REQUIRE(std::abs(length(g) - length(c)) < 1e-12 * std::max(1.0, length(c)));
      REQUIRE(is_in_bracket(as_sbv(g), c, zeta(c)));
    }
  }
  SECTION("membership fails when the jump is skipped") {
    const SbvCurve step = testsup::unit_step();
    AcCurve skipped;  // collapses the jump: wrong length
    skipped.dimension = 2;
    skipped.nodes.push_back({0.0, v2(0, 0)});
    skipped.nodes.push_back({1.0, v2(0, 0)});
    REQUIRE_FALSE(is_in_bracket(as_sbv(skipped), step, zeta(step)));
  }
}

TEST_CASE("bracket_representative matches g_transform on the zeta plateau") {
  const SbvCurve step = testsup::unit_step();
  const SbvCurve rep = bracket_representative(step, zeta(step));
  const AcCurve g = g_transform(step);
  REQUIRE_FALSE(has_jumps(rep));
  REQUIRE(testsup::max_pointwise_gap(rep, as_sbv(g)) < 1e-15);
}

TEST_CASE("constant-speed shape representative is reparametrisation invariant") {
  std::mt19937_64 rng(313);
  const SbvCurve c = testsup::random_sbv(rng, 2);
  const AcCurve base = constant_speed(g_transform(c));
  for (int trial = 0; trial < 10; ++trial) {
    const Reparam eta = testsup::random_strict_reparam(rng);
    const SbvCurve warped = bracket_representative(c, eta);
    const AcCurve other = constant_speed(g_transform(warped));
    REQUIRE(testsup::max_pointwise_gap(as_sbv(base), as_sbv(other)) < 1e-10);
  }
}
