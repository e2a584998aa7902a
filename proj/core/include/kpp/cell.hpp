#pragma once

#include <vector>

#include "kpp/grid.hpp"
#include "kpp/reaction.hpp"
#include "kpp/spectral.hpp"

namespace kpp {

/// Time-stamped snapshots of a periodic-cell evolution.
struct CellTrajectory {
  std::vector<double> times;
  std::vector<TorusField> snapshots;
  double dt = 0.0;

  const TorusField& final_field() const { return snapshots.back(); }
  double final_time() const { return times.back(); }
};

/// IMEX evolution on the torus: backward-Euler diffusion via a periodic
/// tridiagonal solve, forward-Euler reaction. Snapshots every `stride`
/// steps plus the final state. Throws StabilityError if a node leaves
/// [-1e-8, 1+1e-8].
CellTrajectory evolve_cell(const Nonlinearity& f, const TorusField& init,
                           double horizon, double dt, int stride = 1);

struct TerminalValueResult {
  double B = 0.0;       // starting constant B(m,T)
  double m = 0.0;       // target spatial mean at time T
  double T = 0.0;
  double terminal_mean = 0.0;
  int iterations = 0;
  CellTrajectory trajectory;
};

/// Bisection on the constant starting level B in [1e-14, m]; the map from
/// B to the terminal mean is strictly increasing, so this converges. Stops
/// at terminal-mean error <= tol or after 60 iterations.
TerminalValueResult solve_terminal_value(const Nonlinearity& f, double m, double T,
                                         double tol = 1e-8, int N = 64,
                                         double dt = 1e-3);

struct GlobalSolutionOptions {
  double low_threshold = 0.01;   // alpha window: snapshots with max phi below
  double high_threshold = 0.99;  // omega window: snapshots with min phi above
  double snapshot_spacing = 0.01;
};

/// The global-in-time cell solution, re-indexed so the spatial mean at
/// t = 0 is 1/2, with the asymptotic constants of its exponential tails.
class GlobalSolution {
public:
  double alpha = 0.0;  // phi(t,x) ~ alpha psi0(x) e^{f0 t},  t -> -inf
  double omega = 0.0;  // 1 - phi(t,x) ~ omega psi1(x) e^{-f1 t},  t -> +inf
  int n = 0;           // construction parameter: starting level 1/n
  EigenPair at_zero;   // (psi0, f0)
  EigenPair at_one;    // (psi1, f1)
  Nonlinearity reaction;
  int grid_n = 0;
  double dt = 0.0;

  std::vector<double> times;  // re-indexed, increasing
  std::vector<TorusField> fields;
  std::vector<double> means;

  double t_min() const { return times.front(); }
  double t_max() const { return times.back(); }

  /// Linear interpolation in time; below t_min the field decays with the
  /// e^{f0 t} tail, above t_max it saturates with the e^{-f1 t} tail.
  TorusField field_at(double t) const;
  double mean_at(double t) const;

  /// T_m: |mean(T_m) - m| <= 1e-8 on the interpolated mean series.
  double mean_crossing_time(double m) const;
};

/// Evolves from the constant 1/n, re-indexes time by the interpolated
/// mean-1/2 crossing, and extracts alpha and omega over the amplitude-
/// threshold windows. Requires n >= 10.
GlobalSolution construct_global_solution(const Nonlinearity& f, int n,
                                         double t_max, int N = 64,
                                         double dt = 1e-3,
                                         const GlobalSolutionOptions& opts = {});

/// B(m,T) * integral(psi0) / integral(phi(T_m - T, .) psi0), one entry per
/// horizon; approaches 1 as T grows.
std::vector<double> ratio_limit_check(const Nonlinearity& f, double m,
                                      const std::vector<double>& T_list,
                                      int N = 64, double dt = 1e-3);

}  // namespace kpp
