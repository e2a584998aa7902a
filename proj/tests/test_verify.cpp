#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/frontsim.hpp"
#include "kpp/logistic.hpp"
#include "kpp/verify.hpp"

using namespace kpp;

TEST_SUITE("verify") {

TEST_CASE("fit_decay_rate recovers an exact exponential") {
  std::vector<std::pair<double, double>> samples;
  const double rate = 1.37, c = 0.42;
  for (double T : {2.0, 4.0, 6.0, 8.0}) samples.emplace_back(T, c * std::exp(-rate * T));
  CHECK(fit_decay_rate(samples) == doctest::Approx(rate).epsilon(1e-12));
}

TEST_CASE("fit_decay_rate validates its input") {
  CHECK_THROWS_AS(fit_decay_rate({{1.0, 0.5}, {2.0, 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay_rate({{1.0, 0.5}, {2.0, -0.2}, {3.0, 0.1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_decay_rate({{2.0, 0.5}, {1.0, 0.2}, {3.0, 0.1}}),
                  std::invalid_argument);
}

TEST_CASE("homogeneous level-set brackets pass on a planned run") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const LogisticProfile profile = solve_profile(f);
  const DomainPlan plan = plan_domain(u0, 1.0, 6.0, 0.25);
  const FrontRun run =
      simulate_front(f, u0, 6.0, {plan.dx, plan.x_left, plan.x_right}, 1e-3);
  const VerificationReport rep =
      verify_homogeneous_levelsets(run, profile, u0, {0.25, 0.5, 0.75}, 6.0, 0.05);
  CHECK(rep.pass());
  CHECK(rep.checks.size() == 3);
  for (const auto& c : rep.checks) CHECK(c.counted);
}

TEST_CASE("pre-asymptotic horizons are reported but not counted") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const LogisticProfile profile = solve_profile(f);
  const FrontRun run = simulate_front(f, u0, 0.5, {0.25, -10.0, 60.0}, 1e-3);
  const VerificationReport rep =
      verify_homogeneous_levelsets(run, profile, u0, {0.5}, 0.5, 0.05);
  REQUIRE(rep.checks.size() == 1);
  CHECK_FALSE(rep.checks[0].counted);
  CHECK(rep.pass());  // uncounted entries never fail the report
}

TEST_CASE("tainted runs are refused") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const LogisticProfile profile = solve_profile(f);
  const FrontRun run = simulate_front(f, u0, 8.0, {0.25, -10.0, 15.0}, 1e-3);
  REQUIRE(run.tainted_at(8.0));
  CHECK_THROWS_AS(verify_homogeneous_levelsets(run, profile, u0, {0.5}, 8.0, 0.05),
                  StabilityError);
}

TEST_CASE("bracket nesting: pass at small eps implies pass at larger eps") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const LogisticProfile profile = solve_profile(f);
  const DomainPlan plan = plan_domain(u0, 1.0, 6.0, 0.5);
  const FrontRun run =
      simulate_front(f, u0, 6.0, {plan.dx, plan.x_left, plan.x_right}, 1e-3);
  const bool pass_small =
      verify_homogeneous_levelsets(run, profile, u0, {0.5}, 6.0, 0.02).pass();
  const bool pass_large =
      verify_homogeneous_levelsets(run, profile, u0, {0.5}, 6.0, 0.05).pass();
  if (pass_small) CHECK(pass_large);
}

TEST_CASE("flatness scan: homogeneous S_n reduces to u0(nL)") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const GlobalSolution g = construct_global_solution(f, 1000, 6.0, 32, 1e-3);
  // psi0 is flat with integral 1 on L=1, so S_n = u0(n).
  const double psi_int = g.at_zero.psi.integral();
  CHECK(psi_int == doctest::Approx(1.0).epsilon(1e-6));

  const DomainPlan plan = plan_domain(u0, 1.0, 6.0, 0.25);
  const FrontRun run =
      simulate_front(f, u0, 6.0, {plan.dx, plan.x_left, plan.x_right}, 1e-3);
  const FlatnessScan scan = flatness_scan(run, g, u0, 6.0, 1, 60);
  CHECK_FALSE(scan.per_cell.empty());
  CHECK(scan.max_discrepancy > 0.0);
  CHECK(scan.max_discrepancy < 1.0);
  // Cells beyond the domain are skipped, not scanned.
  const FlatnessScan far = flatness_scan(run, g, u0, 6.0, 10000, 10005);
  CHECK(far.per_cell.empty());
  CHECK(far.skipped.size() == 6);
}

TEST_CASE("verify_flatness requires increasing horizons") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const GlobalSolution g = construct_global_solution(f, 100, 4.0, 32, 1e-3,
                                                     {0.03, 0.97, 0.01});
  const FrontRun run = simulate_front(f, u0, 2.0, {0.25, -10.0, 120.0}, 1e-3);
  CHECK_THROWS_AS(verify_flatness(run, 2.0, run, 1.0, g, u0, 1, 10, 0.05),
                  std::invalid_argument);
}

TEST_CASE("margin zero yields an uncounted at-boundary entry") {
  const Nonlinearity f = make_periodic_fisher(0.5, 1.0);
  const InitialData u0 = make_algebraic(2.0);
  const GlobalSolution g = construct_global_solution(f, 1000, 6.0, 64, 1e-3);
  const DomainPlan plan = plan_domain(u0, g.at_zero.eigenvalue, 4.0, 0.5);
  const FrontRun run =
      simulate_front(f, u0, 4.0, {plan.dx, plan.x_left, plan.x_right}, 1e-3);
  const VerificationReport rep = verify_mean_levelsets(run, g, u0, {0.5}, 4.0, 0.05, 0.0);
  REQUIRE(rep.checks.size() == 1);
  CHECK_FALSE(rep.checks[0].counted);
  CHECK(rep.pass());
}

}  // TEST_SUITE
