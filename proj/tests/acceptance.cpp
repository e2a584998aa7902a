// Acceptance gate: one criterion per invocation, selected by the single
// numeric argument (1-9). Prints one pass/fail line per criterion and
// exits 0 on pass, 1 on fail.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "dense_eigen_oracle.hpp"
#include "kpp/cell.hpp"
#include "kpp/frontsim.hpp"
#include "kpp/logistic.hpp"
#include "kpp/profiles.hpp"
#include "kpp/reaction.hpp"
#include "kpp/spectral.hpp"
#include "kpp/verify.hpp"

using namespace kpp;

namespace {

bool g_ok = true;

void check(bool cond, const char* fmt, ...) {
  if (!cond) g_ok = false;
  std::va_list args;
  va_start(args, fmt);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  std::printf("  [%s] %s\n", cond ? "ok" : "FAIL", buf);
}

// --- criterion 1: logistic closed form -----------------------------------

bool criterion1() {
  const LogisticProfile profile = solve_profile(make_fisher());
  double sup = 0.0;
  for (int i = 0; i <= 40000; ++i) {
    const double t = -20.0 + i * 1e-3;
    const double exact = 1.0 / (1.0 + std::exp(-t));
    sup = std::max(sup, std::fabs(profile.eval(t) - exact));
  }
  check(sup <= 1e-8, "sup|phi - e^T/(1+e^T)| on [-20,20] = %.3e (tol 1e-8)", sup);
  return g_ok;
}

// --- criterion 2: homogeneous reduction of B(m,T) ------------------------

bool criterion2() {
  const TerminalValueResult r =
      solve_terminal_value(make_fisher(), 0.5, std::log(3.0), 1e-10, 16, 1e-5);
  check(std::fabs(r.B - 0.25) <= 1e-6,
        "B(1/2, ln 3) = %.9f, |B - 0.25| = %.3e (tol 1e-6)", r.B,
        std::fabs(r.B - 0.25));
  return g_ok;
}

// --- criterion 3: decay rate of B(0.5, T) equals f0 ----------------------

bool criterion3() {
  const Nonlinearity f = make_periodic_fisher(0.5, 1.0);
  std::vector<std::pair<double, double>> samples;
  for (double T : {6.0, 8.0, 10.0, 12.0})
    samples.emplace_back(T, solve_terminal_value(f, 0.5, T, 1e-10, 64, 1e-3).B);
  const double fitted = fit_decay_rate(samples);

  const double f0 = eigenpair_at_zero(f, 4096).eigenvalue;
  const double rel = std::fabs(fitted - f0) / f0;
  check(rel <= 0.02, "fitted rate %.6f vs f0 %.6f, rel err %.4f (tol 0.02)",
        fitted, f0, rel);

  const double dense = dense_principal_eigenvalue(f.du_at_zero, f.period, 4096);
  check(std::fabs(f0 - dense) <= 1e-5,
        "iterative f0 %.10f vs dense oracle %.10f, |diff| = %.3e (tol 1e-5)",
        f0, dense, std::fabs(f0 - dense));
  return g_ok;
}

// --- criterion 4: ratio limit --------------------------------------------

bool criterion4() {
  const Nonlinearity f = make_periodic_fisher(0.5, 1.0);
  const std::vector<double> T_list = {6.0, 9.0, 12.0};
  const std::vector<double> r = ratio_limit_check(f, 0.5, T_list, 64, 1e-3);
  for (std::size_t i = 0; i < r.size(); ++i)
    std::printf("  T = %4.1f: ratio = %.6f\n", T_list[i], r[i]);
  check(std::fabs(r.back() - 1.0) <= 0.05,
        "|ratio(T=12) - 1| = %.4f (tol 0.05)", std::fabs(r.back() - 1.0));
  bool decreasing = true;
  for (std::size_t i = 1; i < r.size(); ++i)
    decreasing = decreasing && std::fabs(r[i] - 1.0) < std::fabs(r[i - 1] - 1.0);
  check(decreasing, "deviations |ratio - 1| decrease over T = {6, 9, 12}");
  return g_ok;
}

// --- criterion 5: spreading law, homogeneous, alpha = 4 ------------------

bool criterion5() {
  const Nonlinearity f = make_fisher();
  const InitialData u0 = make_algebraic(4.0);
  const double T = 10.0;
  const LineGrid grid{0.25, -20.0, 3000.0};
  const FrontRun run = simulate_front(f, u0, T, grid, 1e-3);
  check(!run.tainted_at(T), "run untainted at T = 10");

  for (double m : {0.25, 0.5, 0.75}) {
    const double predicted = std::pow((1.0 - m) / m * std::exp(T), 0.25);
    const std::vector<double> xs = extract_level_set(run, m, T);
    if (xs.empty()) {
      check(false, "m = %.2f: no level-set crossing found", m);
      continue;
    }
    const double ratio = xs.back() / predicted;
    check(ratio >= 0.85 && ratio <= 1.15,
          "m = %.2f: rightmost %.3f vs predicted %.3f, ratio %.3f (need [0.85, 1.15])",
          m, xs.back(), predicted, ratio);
  }

  const LogisticProfile profile = solve_profile(f);
  const VerificationReport rep =
      verify_homogeneous_levelsets(run, profile, u0, {0.25, 0.5, 0.75}, T, 0.05);
  for (const auto& c : rep.checks)
    std::printf("  bracket %s: %s%s\n", c.label.c_str(),
                c.pass ? "contained" : "violated",
                c.counted ? "" : " (not counted)");
  check(rep.pass(), "level-set bracket containment at eps = 0.05");

  // Informational: the same measurement at longer horizons, showing the
  // asymptotic regime. At T = 10 the classical speed-2 front launched from
  // the saturated plateau (position ~ 2t - 1.5 ln t ~ 16.5) still leads the
  // accelerated tail front; the tail takes over near T ~ 13.
  std::printf("  -- trend (informational, m = 0.5) --\n");
  for (double Ti : {14.0, 18.0, 22.0, 26.0}) {
    const DomainPlan plan = plan_domain(u0, 1.0, Ti, 0.25);
    const FrontRun r =
        simulate_front(f, u0, Ti, {plan.dx, plan.x_left, plan.x_right}, 1e-3);
    const double pred = std::pow(std::exp(Ti), 0.25);
    const std::vector<double> xs = extract_level_set(r, 0.5, Ti);
    std::printf("  T = %4.1f: rightmost/predicted = %.3f%s\n", Ti,
                xs.empty() ? 0.0 : xs.back() / pred,
                r.tainted_at(Ti) ? " (tainted)" : "");
  }
  return g_ok;
}

// --- criterion 6: periodic window-average bounds and bracket -------------

bool criterion6() {
  const Nonlinearity f = make_periodic_fisher(0.5, 1.0);
  const InitialData u0 = make_algebraic(4.0);
  const double T = 10.0;
  const GlobalSolution g = construct_global_solution(f, 1000, 12.0, 64, 1e-3);
  const DomainPlan plan = plan_domain(u0, g.at_zero.eigenvalue, T, 0.5);
  std::printf("  planned domain [%.1f, %.1f], dx = %.3f\n", plan.x_left,
              plan.x_right, plan.dx);
  const FrontRun run =
      simulate_front(f, u0, T, {plan.dx, plan.x_left, plan.x_right}, 1e-3);
  check(!run.tainted_at(T), "run untainted at T = 10");

  const VerificationReport rep = verify_mean_levelsets(run, g, u0, {0.5}, T, 0.05);
  for (const auto& c : rep.checks)
    std::printf("  %s: predicted %.4f measured %.4f tol %.4f -> %s%s\n",
                c.label.c_str(), c.predicted, c.measured, c.tolerance,
                c.pass ? "ok" : "violated", c.counted ? "" : " (not counted)");
  check(rep.pass(), "window-average bounds and average-level bracket, eps = 0.05");

  // Informational: the bracket at longer horizons (the T = 10 violation is
  // the pre-asymptotic classical front leading the accelerated one).
  std::printf("  -- trend (informational) --\n");
  const GlobalSolution g2 = construct_global_solution(f, 1000, 30.0, 64, 1e-3);
  for (double Ti : {14.0, 18.0, 22.0}) {
    const DomainPlan plan2 = plan_domain(u0, g2.at_zero.eigenvalue, Ti, 0.5);
    const FrontRun r =
        simulate_front(f, u0, Ti, {plan2.dx, plan2.x_left, plan2.x_right}, 1e-3);
    const VerificationReport rr = verify_mean_levelsets(r, g2, u0, {0.5}, Ti, 0.05);
    for (const auto& c : rr.checks)
      if (c.label.rfind("mean_bracket", 0) == 0)
        std::printf("  T = %4.1f: predicted %8.3f measured %8.3f -> %s\n", Ti,
                    c.predicted, c.measured, c.pass ? "contained" : "violated");
  }
  return g_ok;
}

// --- criterion 7: flatness decreases and is small at T = 12 --------------

bool criterion7() {
  const Nonlinearity f = make_periodic_fisher(0.5, 1.0);
  const InitialData u0 = make_algebraic(4.0);
  const GlobalSolution g = construct_global_solution(f, 1000, 14.0, 64, 1e-3);
  const DomainPlan plan = plan_domain(u0, g.at_zero.eigenvalue, 12.0, 0.5);
  const FrontRun run =
      simulate_front(f, u0, 12.0, {plan.dx, plan.x_left, plan.x_right}, 1e-3);
  check(!run.tainted_at(12.0), "run untainted at T = 12");

  const int n_hi = static_cast<int>(plan.x_right) - 1;
  const FlatnessScan s8 = flatness_scan(run, g, u0, 8.0, 1, n_hi);
  const FlatnessScan s12 = flatness_scan(run, g, u0, 12.0, 1, n_hi);
  std::printf("  max discrepancy: %.4f at T = 8 (cell %d), %.4f at T = 12 (cell %d)\n",
              s8.max_discrepancy, s8.worst_cell, s12.max_discrepancy, s12.worst_cell);
  const VerificationReport rep = verify_flatness(run, 8.0, run, 12.0, g, u0, 1, n_hi, 0.05);
  check(rep.pass(), "discrepancy decreases T = 8 -> 12 and is <= 0.05 at T = 12");

  // Informational: the scan keeps decaying at longer horizons.
  std::printf("  -- trend (informational) --\n");
  const GlobalSolution g2 = construct_global_solution(f, 1000, 30.0, 64, 1e-3);
  for (double Ti : {14.0, 18.0, 22.0}) {
    const DomainPlan plan2 = plan_domain(u0, g2.at_zero.eigenvalue, Ti, 0.5);
    const FrontRun r =
        simulate_front(f, u0, Ti, {plan2.dx, plan2.x_left, plan2.x_right}, 1e-3);
    const FlatnessScan s =
        flatness_scan(r, g2, u0, Ti, 1, static_cast<int>(plan2.x_right) - 1);
    std::printf("  T = %4.1f: max discrepancy %.4f (cell %d)\n", Ti,
                s.max_discrepancy, s.worst_cell);
  }
  return g_ok;
}

// --- criterion 8: global solution normalization and uniqueness -----------

bool criterion8() {
  const Nonlinearity f = make_fisher();
  const GlobalSolution g1000 = construct_global_solution(f, 1000, 8.0, 32, 1e-4);
  check(std::fabs(g1000.alpha - 1.0) <= 0.01, "alpha = %.6f (1 +/- 1%%)", g1000.alpha);
  check(std::fabs(g1000.omega - 1.0) <= 0.01, "omega = %.6f (1 +/- 1%%)", g1000.omega);

  const GlobalSolution g100 =
      construct_global_solution(f, 100, 8.0, 32, 1e-4, {0.03, 0.97, 0.01});
  for (double t : {-5.0, 0.0, 5.0}) {
    const TorusField a = g100.field_at(t);
    const TorusField b = g1000.field_at(t);
    double sup = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      sup = std::max(sup, std::fabs(a.values[i] - b.values[i]));
    check(sup <= 1e-4, "n = 100 vs n = 1000 at t = %+.0f: sup diff %.3e (tol 1e-4)",
          t, sup);
  }
  return g_ok;
}

// --- criterion 9: property suites ----------------------------------------

bool criterion9() {
  // Comparison principle and [0,1] invariance on the cell.
  {
    const Nonlinearity f = make_periodic_fisher(0.5, 1.0);
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> uni(0.05, 0.6);
    TorusField lo(64, 0.0, 1.0), hi(64, 0.0, 1.0);
    for (std::size_t i = 0; i < 64; ++i) {
      lo.values[i] = uni(rng);
      hi.values[i] = std::min(1.0, lo.values[i] * 1.3);
    }
    const CellTrajectory a = evolve_cell(f, lo, 2.0, 1e-3, 100);
    const CellTrajectory b = evolve_cell(f, hi, 2.0, 1e-3, 100);
    bool ordered = true, bounded = true;
    for (std::size_t k = 0; k < a.snapshots.size(); ++k)
      for (std::size_t i = 0; i < 64; ++i) {
        ordered = ordered &&
                  a.snapshots[k].values[i] <= b.snapshots[k].values[i] + 1e-12;
        bounded = bounded && a.snapshots[k].values[i] >= -1e-12 &&
                  b.snapshots[k].values[i] <= 1.0 + 1e-12;
      }
    check(ordered, "comparison principle: ordered data stay ordered");
    check(bounded, "solutions remain in [0,1]");

    // Mean-growth identity over one step.
    const double dt = 1e-3;
    const CellTrajectory one = evolve_cell(f, lo, dt, dt, 1);
    double predicted = lo.mean(), reacted = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i)
      reacted += f.eval(lo.node(i), lo.values[i]);
    predicted += dt * reacted / static_cast<double>(lo.size());
    check(std::fabs(one.final_field().mean() - predicted) <= 1e-13,
          "discrete mean-growth identity exact to rounding");

    // B monotone in m and in T.
    const double Bm1 = solve_terminal_value(f, 0.3, 3.0, 1e-8, 32, 1e-2).B;
    const double Bm2 = solve_terminal_value(f, 0.7, 3.0, 1e-8, 32, 1e-2).B;
    const double BT1 = solve_terminal_value(f, 0.5, 2.0, 1e-8, 32, 1e-2).B;
    const double BT2 = solve_terminal_value(f, 0.5, 6.0, 1e-8, 32, 1e-2).B;
    check(Bm1 < Bm2 && BT1 > BT2, "B(m,T) increasing in m, decreasing in T");

    // Eigen residual and Rayleigh bound.
    const int N = 512;
    const EigenPair pair = eigenpair_at_zero(f, N);
    const double dx = pair.psi.dx();
    double res2 = 0.0;
    for (int i = 0; i < N; ++i) {
      const double lap =
          (pair.psi.values[(i + 1) % N] - 2.0 * pair.psi.values[i] +
           pair.psi.values[(i + N - 1) % N]) / (dx * dx);
      const double v = lap +
                       f.du_at_zero(pair.psi.node(i)) * pair.psi.values[i] -
                       pair.eigenvalue * pair.psi.values[i];
      res2 += v * v;
    }
    check(std::sqrt(res2 * dx) <= 1e-6, "eigen residual %.3e <= 1e-6",
          std::sqrt(res2 * dx));

    std::mt19937 rng2(31337);
    std::uniform_real_distribution<double> uni2(0.05, 1.0);
    bool rayleigh_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
      TorusField w(N, 0.0, 1.0);
      for (double& v : w.values) v = uni2(rng2);
      rayleigh_ok = rayleigh_ok &&
                    rayleigh_quotient(w, f.du_at_zero) <= pair.eigenvalue + 1e-10;
    }
    check(rayleigh_ok, "Rayleigh quotient bounded by f0 on 50 random fields");

    // Second-order grid self-convergence.
    auto run_at = [&f](int n) {
      TorusField init(static_cast<std::size_t>(n), 0.0, 1.0);
      for (int i = 0; i < n; ++i)
        init.values[static_cast<std::size_t>(i)] =
            0.25 + 0.1 * std::sin(2.0 * M_PI * i / n);
      return evolve_cell(f, init, 1.0, 1e-5, 100000).final_field();
    };
    const TorusField f64 = run_at(64), f128 = run_at(128), f256 = run_at(256);
    double e1 = 0.0, e2 = 0.0;
    for (int i = 0; i < 64; ++i)
      e1 = std::max(e1, std::fabs(f64.values[i] - f128.values[2 * i]));
    for (int i = 0; i < 128; ++i)
      e2 = std::max(e2, std::fabs(f128.values[i] - f256.values[2 * i]));
    check(std::fabs(e1 / e2 - 4.0) <= 0.8,
          "grid self-convergence order 2: error ratio %.3f (expect 4)", e1 / e2);
  }

  // Oscillation ratios approach 1 for each admissible family.
  {
    auto lambda = [](double t) { return std::exp(-t); };
    const double c3 = 2.0;
    struct Probe { const char* name; InitialData u0; double t; };
    const Probe probes[] = {
        {"algebraic(2)", make_algebraic(2.0), 20.0},
        {"stretched(0.25)", make_stretched(0.25), 14.0},
        {"log_algebraic(2, 0.5)", make_log_algebraic(2.0, 0.5), 22.0},
    };
    for (const Probe& p : probes)
      for (int sign : {+1, -1}) {
        const double r = oscillation_ratio(p.u0, lambda, c3, p.t, sign);
        check(std::fabs(r - 1.0) < 0.01,
              "oscillation ratio %s sign %+d: %.6f (|r-1| < 0.01)", p.name, sign, r);
      }
  }
  return g_ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <criterion 1-9>\n", argv[0]);
    return 2;
  }
  const int which = std::atoi(argv[1]);
  bool pass = false;
  switch (which) {
    case 1: pass = criterion1(); break;
    case 2: pass = criterion2(); break;
    case 3: pass = criterion3(); break;
    case 4: pass = criterion4(); break;
    case 5: pass = criterion5(); break;
    case 6: pass = criterion6(); break;
    case 7: pass = criterion7(); break;
    case 8: pass = criterion8(); break;
    case 9: pass = criterion9(); break;
    default:
      std::fprintf(stderr, "usage: %s <criterion 1-9>\n", argv[0]);
      return 2;
  }
  std::printf("criterion %d: %s\n", which, pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}
