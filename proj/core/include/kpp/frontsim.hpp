#pragma once

#include <limits>
#include <vector>

#include "kpp/grid.hpp"
#include "kpp/profiles.hpp"
#include "kpp/reaction.hpp"

namespace kpp {

struct LineGrid {
  double dx = 0.25;
  double x_left = -20.0;
  double x_right = 100.0;
};

struct FrontSimOptions {
  int stride = 50;  // steps between stored snapshots
  // A right-boundary value above this marks the run tainted from that
  // time on: the front itself has reached the truncation. Slowly decaying
  // tails legitimately carry values of order m_min/4 at a well-planned
  // boundary, so the default sits above that but far below front levels.
  double boundary_threshold = 0.1;
};

/// A finished line-domain run with its diagnostics.
struct FrontRun {
  std::vector<double> times;
  std::vector<LineField> snapshots;
  std::vector<double> right_boundary;  // per snapshot
  std::vector<double> mass;            // per snapshot, trapezoid of u
  double dt = 0.0;
  double dx = 0.0;
  double period = 1.0;  // of the reaction
  double boundary_threshold = 0.0;
  double taint_time = std::numeric_limits<double>::infinity();

  bool tainted_at(double t) const { return t >= taint_time; }
  /// Index of the stored snapshot nearest to t.
  std::size_t snapshot_index(double t) const;
};

/// IMEX evolution on [x_left, x_right]: left boundary follows the
/// spatially averaged saturation ODE started from u0(x_left); right
/// boundary is homogeneous Neumann with taint monitoring.
FrontRun simulate_front(const Nonlinearity& f, const InitialData& u0,
                        double horizon, const LineGrid& grid, double dt,
                        const FrontSimOptions& opts = {});

struct DomainPlan {
  double x_left = -20.0;
  double x_right = 0.0;
  double dx = 0.25;
};

/// Sizes the domain so the slowest tracked level set stays well inside:
/// x_right = safety * u0^{-1}(B_est(m_min/4, T)) + 10 sqrt(T), with the
/// linearized estimate B_est = (m'/(1-m')) e^{-f0 T}.
DomainPlan plan_domain(const InitialData& u0, double f0, double T, double m_min,
                       double safety = 1.5, double dx = 0.25,
                       long long node_budget = 10'000'000);

/// All crossings of u(t,.) = m at the snapshot nearest t, each located by
/// linear interpolation; sorted, possibly empty.
std::vector<double> extract_level_set(const FrontRun& run, double m, double t);

struct AverageLevelSet {
  std::vector<double> positions;
  bool all = false;  // the window average is identically m
};

/// Crossings of the length-L moving window average A(x) = m, window
/// anchored at its left edge; computed by prefix sums.
AverageLevelSet extract_average_level_set(const FrontRun& run, double m,
                                          double t, double window);

/// The window average (1/L) integral of u(t,.) over [x, x+L] at the
/// snapshot nearest t.
double window_average(const FrontRun& run, double t, double x, double window);

}  // namespace kpp
