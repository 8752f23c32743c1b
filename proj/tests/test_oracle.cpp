#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace srvbv;
using testsup::v2;

namespace {

SbvCurve step_with(const Vec& from, const Vec& to, double at = 0.5) {
  SbvCurve c;
  c.dimension = static_cast<int>(from.size());
  c.nodes.push_back({0.0, from, from});
  c.nodes.push_back({at, from, to});
  c.nodes.push_back({1.0, to, to});
  return c;
}

}  // namespace

TEST_CASE("recovery_pair on co-located jumps") {
  SECTION("parallel jumps: aligned ramps realize the full kernel at every eps") {
    const SbvCurve s = testsup::unit_step();
    for (double eps : {0.2, 0.05, 0.001}) {
      const auto [a1, a2] = recovery_pair(s, s, eps);
      // the window endpoints round, so the speed/dt chain is off by ulps
      REQUIRE(s_functional(a1, a2) == Catch::Approx(1.0).margin(1e-12));
      REQUIRE(length(a1) == length(s));
    }
  }
  SECTION("antiparallel jumps: disjoint half ramps contribute exactly zero") {
    const SbvCurve up = testsup::unit_step();
    const SbvCurve down = step_with(v2(1, 0), v2(0, 0));
    const auto [a1, a2] = recovery_pair(up, down, 0.01);
    REQUIRE(s_functional(a1, a2) == 0.0);
    REQUIRE(s_hat(up, down) == 0.0);
  }
  SECTION("lone jump against a smooth curve stays mutually singular") {
    const auto [a1, a2] = recovery_pair(testsup::unit_step(), as_sbv(testsup::unit_segment()), 0.02);
    REQUIRE(s_functional(a1, a2) == 0.0);
  }
  SECTION("eps bounds are enforced") {
    const SbvCurve s = testsup::unit_step();
    REQUIRE_THROWS_AS(recovery_pair(s, s, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(recovery_pair(s, s, 0.25), std::invalid_argument);
    REQUIRE_THROWS_AS(recovery_pair(s, s, -0.1), std::invalid_argument);
  }
}

TEST_CASE("recovery_pair passes aligned AC inputs through unchanged") {
  const AcCurve seg = testsup::unit_segment();
  const auto [a1, a2] = recovery_pair(as_sbv(seg), as_sbv(seg), 0.1);
  REQUIRE(a1.nodes.size() == seg.nodes.size());
  for (std::size_t i = 0; i < seg.nodes.size(); ++i) {
    REQUIRE(a1.nodes[i].t == seg.nodes[i].t);
    REQUIRE(exact_equal(a1.nodes[i].value, seg.nodes[i].value));
  }
}

TEST_CASE("recovery_pair interleaves opposed velocities") {
  AcCurve fwd = testsup::unit_segment();
  AcCurve bwd;
  bwd.dimension = 2;
  bwd.nodes.push_back({0.0, v2(1, 0)});
  bwd.nodes.push_back({1.0, v2(0, 0)});
  const auto [a1, a2] = recovery_pair(as_sbv(fwd), as_sbv(bwd), 0.05);
  REQUIRE(s_functional(a1, a2) == 0.0);  // moving sets are disjoint
  REQUIRE(std::abs(length(a1) - 1.0) < 1e-12);
  REQUIRE(std::abs(length(a2) - 1.0) < 1e-12);
  // endpoint images are untouched
  REQUIRE(exact_equal(eval(a1, 1.0), v2(1, 0)));
  REQUIRE(exact_equal(eval(a2, 1.0), v2(0, 0)));
}

TEST_CASE("recovery_pair handles a jump at the right endpoint") {
  SbvCurve c;
  c.dimension = 2;
  c.nodes.push_back({0.0, v2(0, 0), v2(0, 0)});
  c.nodes.push_back({0.5, v2(0.5, 0), v2(0.5, 0)});
  c.nodes.push_back({1.0, v2(1, 0), v2(1, 1)});  // jump at t = 1
  const auto [a1, a2] = recovery_pair(c, c, 0.1);
  REQUIRE(a1.nodes.back().t == 1.0);
  REQUIRE(exact_equal(eval(a1, 1.0), v2(1, 1)));
  REQUIRE(std::abs(length(a1) - length(c)) < 1e-12);
  REQUIRE(std::abs(s_functional(a1, a2) - s_hat(c, c)) < 1e-12);
}

TEST_CASE("verify_relaxation reports overshoot and the closing gap") {
  SECTION("identical steps: the gap closes to rounding at every eps") {
    const SbvCurve s = testsup::unit_step();
    const auto rep = verify_relaxation(s, s, {0.1, 0.01, 0.001});
    REQUIRE(rep.s_hat_target == 1.0);
    for (double sv : rep.s_values) REQUIRE(sv == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(rep.max_overshoot <= 1e-12);
    REQUIRE(rep.final_gap <= 1e-12);
  }
  SECTION("orthogonal jump directions: target zero, gap zero") {
    const SbvCurve s1 = testsup::unit_step();
    const SbvCurve s2 = step_with(v2(0, 0), v2(0, 1));
    const auto rep = verify_relaxation(s1, s2, {0.1, 0.01});
    REQUIRE(rep.s_hat_target == 0.0);
    REQUIRE(rep.max_overshoot == 0.0);
    REQUIRE(rep.final_gap == 0.0);
  }
  SECTION("mixed signs: opposed ramps plus a partially aligned jump") {
    const SbvCurve c1 = testsup::ramp_plus_step();
    SbvCurve c2;  // ramp (1,0) -> (0,0) against c1's forward ramp, then jump to (1,1)
    c2.dimension = 2;
    c2.nodes.push_back({0.0, v2(1, 0), v2(1, 0)});
    c2.nodes.push_back({0.5, v2(0, 0), v2(1, 1)});
    c2.nodes.push_back({1.0, v2(1, 1), v2(1, 1)});
    const auto rep = verify_relaxation(c1, c2, {1e-1, 1e-2, 1e-3, 1e-4});
    // opposed ramps cancel; the jump pair contributes <J1,J2>/sqrt(|J1||J2|) = 2^(-1/4)
    REQUIRE(rep.s_hat_target == Catch::Approx(std::pow(2.0, -0.25)).margin(1e-15));
    REQUIRE(rep.max_overshoot <= 1e-8);
    REQUIRE(rep.final_gap <= 1e-12);
  }
  SECTION("schedule validation") {
    const SbvCurve s = testsup::unit_step();
    REQUIRE_THROWS_AS(verify_relaxation(s, s, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_relaxation(s, s, {0.01, 0.1}), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_relaxation(s, s, {0.1, -0.01}), std::invalid_argument);
  }
}

TEST_CASE("brute_force_match reference values and limits") {
  REQUIRE(brute_force_match(testsup::unit_segment(), testsup::unit_segment(), 5, 5) == 1.0);

  AcCurve rev;
  rev.dimension = 2;
  rev.nodes.push_back({0.0, v2(1, 0)});
  rev.nodes.push_back({1.0, v2(0, 0)});
  REQUIRE(brute_force_match(testsup::unit_segment(), rev, 5, 5) == 0.0);

  SECTION("agrees with match_dp at full window") {
    std::mt19937_64 rng(501);
    const AcCurve a = testsup::random_lattice_ac(rng, 6, 2);
    const AcCurve b = testsup::random_lattice_ac(rng, 6, 2);
    const auto [g1, g2] = detail::build_grids(a, b, 6, 6);
    const MatchResult r = match_dp_on_grids(a, b, g1, g2,
                                            static_cast<int>(std::max(g1.size(), g2.size())));
    REQUIRE(brute_force_match(a, b, 6, 6) == r.s_star);
  }
  SECTION("refuses oversized path spaces") {
    REQUIRE_THROWS_AS(brute_force_match(testsup::unit_segment(), testsup::unit_segment(), 9, 9),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(brute_force_match(testsup::unit_segment(), testsup::unit_segment(), 1, 5),
                      std::invalid_argument);
  }
}

TEST_CASE("lemma_mu_opt closed form") {
  SECTION("symmetric instance") {
    const auto r = lemma_mu_opt({1.0, 1.0}, {1.0, 1.0});
    REQUIRE(r.mu == std::vector<double>{0.5, 0.5});
    REQUIRE(r.value == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
  }
  SECTION("no mass where nu vanishes") {
    const auto r = lemma_mu_opt({1.0, 0.0}, {1.0, 1.0});
    REQUIRE(r.mu == std::vector<double>{1.0, 0.0});
  }
  SECTION("hand-checked three-point instance") {
    const auto r = lemma_mu_opt({1.0, 2.0, 1.0}, {2.0, 1.0, 0.0});
    REQUIRE(r.mu[0] == Catch::Approx(2.0 / 3.0).margin(1e-15));
    REQUIRE(r.mu[1] == Catch::Approx(1.0 / 3.0).margin(1e-15));
    REQUIRE(r.mu[2] == 0.0);
    REQUIRE(r.value == Catch::Approx(std::sqrt(6.0)).margin(1e-15));
  }
  SECTION("degenerate objective keeps mu on the support of nu") {
    const auto r = lemma_mu_opt({1.0, 0.0, 3.0}, {0.0, 5.0, 0.0});
    REQUIRE(r.value == 0.0);
    REQUIRE(r.mu == std::vector<double>{0.5, 0.0, 0.5});
  }
  SECTION("input validation") {
    REQUIRE_THROWS_AS(lemma_mu_opt({}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(lemma_mu_opt({1.0}, {1.0, 2.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(lemma_mu_opt({-1.0, 2.0}, {1.0, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(lemma_mu_opt({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
  }
  SECTION("beats random feasible points and agrees with a coarse grid search") {
    std::mt19937_64 rng(503);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int inst = 0; inst < 10; ++inst) {
      std::vector<double> nu(3), g(3);
      for (auto& x : nu) x = u(rng);
      for (auto& x : g) x = u(rng);
      nu[0] += 0.1;  // keep total mass positive
      const auto opt = lemma_mu_opt(nu, g);
      REQUIRE(std::abs(lemma_objective(nu, g, opt.mu) - opt.value) < 1e-12);
      for (int k = 0; k < 10000; ++k) {
        double a = u(rng), b = u(rng);
        if (a + b > 1.0) {
          a = 1.0 - a;
          b = 1.0 - b;
        }
        REQUIRE(lemma_objective(nu, g, {a, b, 1.0 - a - b}) <= opt.value + 1e-12);
      }
      double best_grid = 0.0;
      const int res = 100;
      for (int i = 0; i <= res; ++i)
        for (int j = 0; i + j <= res; ++j)
          best_grid = std::max(best_grid,
                               lemma_objective(nu, g,
                                               {static_cast<double>(i) / res,
                                                static_cast<double>(j) / res,
                                                static_cast<double>(res - i - j) / res}));
      REQUIRE(std::abs(best_grid - opt.value) < 1e-2);
    }
  }
}

TEST_CASE("strict_limit_check") {
  const SbvCurve s = testsup::unit_step();
  const std::vector<double> samples{0.1, 0.3, 0.7, 0.9};

  SECTION("constant sequence passes with zero deviation") {
    const auto rep = strict_limit_check({s, s, s}, s, samples);
    REQUIRE(rep.pass);
    for (double d : rep.value_deviations) REQUIRE(d == 0.0);
    for (double d : rep.length_gaps) REQUIRE(d == 0.0);
  }
  SECTION("recovery outputs converge strictly") {
    std::vector<SbvCurve> seq;
    for (double eps : {0.1, 0.01, 1e-4}) {
      const auto [a1, a2] = recovery_pair(s, s, eps);
      seq.push_back(as_sbv(a1));
    }
    const auto rep = strict_limit_check(seq, s, samples, 1e-3, 1e-12);
    REQUIRE(rep.pass);
    REQUIRE(rep.value_deviations.back() <= rep.value_deviations.front());
  }
  SECTION("length gap is caught even when sampled values agree") {
    SbvCurve m;  // detour on (0.15, 0.25) cancels pointwise at the sample times
    m.dimension = 2;
    m.nodes.push_back({0.0, v2(0, 0), v2(0, 0)});
    m.nodes.push_back({0.15, v2(0, 0), v2(0, 0)});
    m.nodes.push_back({0.2, v2(0.5, 0), v2(0.5, 0)});
    m.nodes.push_back({0.25, v2(0, 0), v2(0, 0)});
    m.nodes.push_back({0.5, v2(0, 0), v2(1, 0)});
    m.nodes.push_back({1.0, v2(1, 0), v2(1, 0)});
    const auto rep = strict_limit_check({m}, s, samples);
    REQUIRE(rep.values_converged);
    REQUIRE_FALSE(rep.lengths_converged);
    REQUIRE_FALSE(rep.pass);
  }
  SECTION("samples on a jump are rejected") {
    REQUIRE_THROWS_AS(strict_limit_check({s}, s, {0.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(strict_limit_check({s}, s, {1.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(strict_limit_check({}, s, samples), std::invalid_argument);
  }
}
