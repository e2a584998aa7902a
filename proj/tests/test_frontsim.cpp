#include <doctest.h>

#include <cmath>
#include <random>

#include "kpp/errors.hpp"
#include "kpp/frontsim.hpp"
#include "kpp/reaction.hpp"

using namespace kpp;

namespace {

InitialData constant_data(double level) {
  InitialData u0;
  u0.family = InitialData::Family::Table;
  u0.plateau = level;
  u0.left_level = level;
  u0.tail_start = 0.0;
  u0.eval = [level](double) { return level; };
  return u0;
}

}  // namespace

TEST_SUITE("frontsim") {

TEST_CASE("constant 1/2 follows the logistic flow to 1e-6") {
  const Nonlinearity f = make_fisher();
  const LineGrid grid{0.25, -2.0, 2.0};
  const FrontRun run = simulate_front(f, constant_data(0.5), std::log(3.0), grid, 1e-5);
  const LineField& last = run.snapshots.back();
  for (double v : last.values) CHECK(v == doctest::Approx(0.75).epsilon(1e-6));
  CHECK(run.times.back() == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("zero data stays zero forever") {
  const Nonlinearity f = make_fisher();
  const LineGrid grid{0.25, -2.0, 2.0};
  const FrontRun run = simulate_front(f, constant_data(0.0), 3.0, grid, 1e-3);
  for (const LineField& s : run.snapshots)
    for (double v : s.values) CHECK(v == 0.0);
  CHECK_FALSE(run.tainted_at(3.0));
}

TEST_CASE("taint is detected when the front reaches the boundary") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const LineGrid small{0.25, -10.0, 15.0};
  const FrontRun run = simulate_front(f, u0, 8.0, small, 1e-3);
  CHECK(run.tainted_at(8.0));
  CHECK(run.taint_time < 8.0);
  CHECK_FALSE(run.tainted_at(0.5 * run.taint_time));
}

TEST_CASE("planned domain stays untainted at the horizon") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const DomainPlan plan = plan_domain(u0, 1.0, 6.0, 0.25);
  const FrontRun run = simulate_front(f, u0, 6.0, {plan.dx, plan.x_left, plan.x_right},
                                      1e-3);
  CHECK_FALSE(run.tainted_at(6.0));
}

TEST_CASE("plan_domain closed-form oracle") {
  // x_right = 1.5 * ((15 e^{10})^{1/4}) + 10 sqrt(10) for alpha=4, T=10,
  // m_min=0.25, f0=1: B_est = (1/15) e^{-10}.
  const InitialData u0 = make_algebraic(4.0);
  const DomainPlan plan = plan_domain(u0, 1.0, 10.0, 0.25);
  const double expect = 1.5 * std::pow(15.0 * std::exp(10.0), 0.25) +
                        10.0 * std::sqrt(10.0);
  CHECK(plan.x_right == doctest::Approx(expect).epsilon(1e-6));
  CHECK(plan.x_left == -20.0);
  CHECK(plan.dx == 0.25);
}

TEST_CASE("plan_domain enforces the node budget") {
  const InitialData u0 = make_algebraic(2.0);
  // x_right ~ 1.5 sqrt(15) e^{T/2}: astronomically beyond 1e7 nodes at T=50.
  CHECK_THROWS_AS(plan_domain(u0, 1.0, 50.0, 0.25, 1.5, 0.25, 10'000'000),
                  BudgetError);
}

TEST_CASE("level-set extraction: linear interpolation oracle") {
  FrontRun run;
  run.dt = 1e-3;
  run.dx = 1.0;
  run.times = {0.0};
  LineField s;
  s.x_left = 0.0;
  s.dx = 1.0;
  s.values = {1.0, 0.8, 0.6, 0.4, 0.2};
  run.snapshots.push_back(s);
  const auto xs = extract_level_set(run, 0.5, 0.0);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(extract_level_set(run, 1.5, 0.0).empty());
}

TEST_CASE("all crossings are returned sorted") {
  FrontRun run;
  run.dt = 1e-3;
  run.dx = 1.0;
  run.times = {0.0};
  LineField s;
  s.x_left = 0.0;
  s.dx = 1.0;
  s.values = {0.0, 1.0, 0.0, 1.0, 0.0};
  run.snapshots.push_back(s);
  const auto xs = extract_level_set(run, 0.5, 0.0);
  REQUIRE(xs.size() == 4);
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
  CHECK(xs[0] == doctest::Approx(0.5));
  CHECK(xs[3] == doctest::Approx(3.5));
}

TEST_CASE("window average by prefix sums matches direct quadrature") {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(2.0);
  const LineGrid grid{0.25, -10.0, 60.0};
  const FrontRun run = simulate_front(f, u0, 2.0, grid, 1e-3);
  const LineField& snap = run.snapshots.back();
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> xpos(-9.0, 50.0);
  std::uniform_real_distribution<double> wlen(0.5, 8.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double x = xpos(rng);
    const double w = wlen(rng);
    // Direct trapezoid of the piecewise-linear interpolant on a fine grid
    // aligned with the nodes.
    auto interp = [&](double xx) {
      const double fx = (xx - snap.x_left) / snap.dx;
      const std::size_t i = std::min(static_cast<std::size_t>(fx), snap.size() - 2);
      const double t = fx - static_cast<double>(i);
      return snap.values[i] * (1.0 - t) + snap.values[i + 1] * t;
    };
    const int steps = 4096;
    double acc = 0.5 * (interp(x) + interp(x + w));
    for (int k = 1; k < steps; ++k) acc += interp(x + w * k / steps);
    const double direct = acc * (w / steps) / w;
    // The piecewise-linear function is quadrature-exact per cell; the fine
    // trapezoid converges second order, so compare at 1e-7.
    CHECK(window_average(run, 2.0, x, w) == doctest::Approx(direct).epsilon(1e-6));
  }
}

TEST_CASE("average-level set of a constant field reports the degenerate flag") {
  FrontRun run;
  run.dt = 1e-3;
  run.dx = 0.5;
  run.times = {0.0};
  LineField s;
  s.x_left = 0.0;
  s.dx = 0.5;
  s.values.assign(21, 0.5);
  run.snapshots.push_back(s);
  const AverageLevelSet avg = extract_average_level_set(run, 0.5, 0.0, 2.0);
  CHECK(avg.all);
}

TEST_CASE("snapshot_index picks the nearest stored time") {
  FrontRun run;
  run.times = {0.0, 0.5, 1.0, 1.5};
  run.snapshots.resize(4);
  CHECK(run.snapshot_index(0.6) == 1);
  CHECK(run.snapshot_index(0.76) == 2);
  CHECK(run.snapshot_index(9.0) == 3);
}

}  // TEST_SUITE
