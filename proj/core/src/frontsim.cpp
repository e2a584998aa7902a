#include "kpp/frontsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpp/errors.hpp"
#include "kpp/tridiag.hpp"

namespace kpp {

namespace {

// Spatial average of f(.,u) over one period; the left boundary follows
// this ODE from the plateau level.
double averaged_reaction(const Nonlinearity& f, double u) {
  if (f.homogeneous()) return f.eval(0.0, u);
  const int k = 64;
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += f.eval(f.period * (i + 0.5) / k, u);
  return s / k;
}

double rk4_saturation_step(const Nonlinearity& f, double b, double dt) {
  auto g = [&f](double u) { return averaged_reaction(f, u); };
  const double k1 = g(b);
  const double k2 = g(b + 0.5 * dt * k1);
  const double k3 = g(b + 0.5 * dt * k2);
  const double k4 = g(b + dt * k3);
  return b + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::size_t FrontRun::snapshot_index(double t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return times.size() - 1;
  std::size_t i = static_cast<std::size_t>(it - times.begin());
  if (i > 0 && t - times[i - 1] < times[i] - t) --i;
  return i;
}

FrontRun simulate_front(const Nonlinearity& f, const InitialData& u0,
                        double horizon, const LineGrid& grid, double dt,
                        const FrontSimOptions& opts) {
  if (dt <= 0.0) throw std::invalid_argument("simulate_front: dt must be positive");
  if (!(grid.x_left < 0.0) || !(grid.x_right > 0.0))
    throw std::invalid_argument("simulate_front: need x_left < 0 < x_right");

  const std::size_t n =
      static_cast<std::size_t>(std::llround((grid.x_right - grid.x_left) / grid.dx)) + 1;
  const double dx = grid.dx;
  const double r = dt / (dx * dx);

  std::vector<double> x(n), u(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = grid.x_left + static_cast<double>(i) * dx;
    u[i] = std::clamp(u0.eval(x[i]), 0.0, 1.0);
  }

  // Row 0: Dirichlet. Rows 1..n-2: standard. Row n-1: homogeneous Neumann
  // via the reflected ghost node.
  auto make_solver = [n](double rr) {
    std::vector<double> sub(n, -rr), diag(n, 1.0 + 2.0 * rr), sup(n, -rr);
    diag[0] = 1.0;
    sup[0] = 0.0;
    sub[n - 1] = -2.0 * rr;
    return TridiagFactor(std::move(sub), std::move(diag), std::move(sup));
  };
  TridiagFactor solver = make_solver(r);

  FrontRun run;
  run.dt = dt;
  run.dx = dx;
  run.period = f.period;
  run.boundary_threshold = opts.boundary_threshold;

  auto record = [&](double t) {
    run.times.push_back(t);
    LineField snap;
    snap.values = u;
    snap.x_left = grid.x_left;
    snap.dx = dx;
    run.snapshots.push_back(std::move(snap));
    run.right_boundary.push_back(u[n - 1]);
    double mass = 0.5 * (u.front() + u.back());
    for (std::size_t i = 1; i + 1 < n; ++i) mass += u[i];
    run.mass.push_back(mass * dx);
    if (u[n - 1] > opts.boundary_threshold && t < run.taint_time) run.taint_time = t;
  };
  record(0.0);

  double left = u[0];
  auto step = [&](double dt_step, TridiagFactor& slv) {
    left = rk4_saturation_step(f, left, dt_step);
    rhs[0] = left;
    for (std::size_t i = 1; i < n; ++i) rhs[i] = u[i] + dt_step * f.eval(x[i], u[i]);
    slv.solve(rhs, u);
    for (double v : u)
      if (v < -1e-8 || v > 1.0 + 1e-8)
        throw StabilityError("simulate_front: node left [0,1]; dt too large for the reaction");
  };

  // Full steps plus one remainder step, so the final time is exact.
  const long long full = static_cast<long long>(horizon / dt);
  const double rem = horizon - static_cast<double>(full) * dt;
  const bool has_rem = rem > 1e-12;
  for (long long k = 1; k <= full; ++k) {
    step(dt, solver);
    const double t = static_cast<double>(k) * dt;
    if (k % opts.stride == 0 || (k == full && !has_rem)) record(t);
    else if (u[n - 1] > opts.boundary_threshold && t < run.taint_time)
      run.taint_time = t;
  }
  if (has_rem) {
    TridiagFactor last = make_solver(rem / (dx * dx));
    step(rem, last);
    record(horizon);
  }
  return run;
}

DomainPlan plan_domain(const InitialData& u0, double f0, double T, double m_min,
                       double safety, double dx, long long node_budget) {
  if (T <= 0.0) throw std::invalid_argument("plan_domain: T must be positive");
  if (!(m_min > 0.0) || !(m_min < 1.0))
    throw std::invalid_argument("plan_domain: m_min must be in (0,1)");

  const double m_probe = m_min / 4.0;
  const double level = std::min(m_probe / (1.0 - m_probe) * std::exp(-f0 * T),
                                u0.eval(u0.tail_start));
  DomainPlan plan;
  plan.dx = dx;
  plan.x_right = safety * inverse_tail(u0, level) + 10.0 * std::sqrt(T);
  const double nodes = (plan.x_right - plan.x_left) / dx;
  if (nodes > static_cast<double>(node_budget))
    throw BudgetError("plan_domain: node budget exceeded; reduce T or the tail exponent");
  return plan;
}

std::vector<double> extract_level_set(const FrontRun& run, double m, double t) {
  const LineField& snap = run.snapshots[run.snapshot_index(t)];
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < snap.size(); ++i) {
    const double a = snap.values[i] - m;
    const double b = snap.values[i + 1] - m;
    if (a == 0.0) crossings.push_back(snap.node(i));
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))
      crossings.push_back(snap.node(i) + run.dx * a / (a - b));
  }
  if (!snap.values.empty() && snap.values.back() == m)
    crossings.push_back(snap.x_right());
  std::sort(crossings.begin(), crossings.end());
  return crossings;
}

namespace {

// Trapezoid prefix sums: P[i] = integral of u from node 0 to node i.
std::vector<double> prefix_integral(const LineField& snap) {
  std::vector<double> p(snap.size(), 0.0);
  for (std::size_t i = 1; i < snap.size(); ++i)
    p[i] = p[i - 1] + 0.5 * snap.dx * (snap.values[i - 1] + snap.values[i]);
  return p;
}

double integral_to(const LineField& snap, const std::vector<double>& p, double x) {
  const double fx = (x - snap.x_left) / snap.dx;
  const std::size_t i = std::min(static_cast<std::size_t>(std::max(fx, 0.0)),
                                 snap.size() - 2);
  const double t = fx - static_cast<double>(i);
  // Exact trapezoid of the piecewise-linear field up to x.
  const double ua = snap.values[i];
  const double ub = snap.values[i + 1];
  const double ux = ua + (ub - ua) * t;
  return p[i] + 0.5 * (ua + ux) * (t * snap.dx);
}

}  // namespace

double window_average(const FrontRun& run, double t, double x, double window) {
  const LineField& snap = run.snapshots[run.snapshot_index(t)];
  const auto p = prefix_integral(snap);
  return (integral_to(snap, p, x + window) - integral_to(snap, p, x)) / window;
}

AverageLevelSet extract_average_level_set(const FrontRun& run, double m,
                                          double t, double window) {
  const LineField& snap = run.snapshots[run.snapshot_index(t)];
  if (window <= 0.0 || window > snap.x_right() - snap.x_left)
    throw std::invalid_argument("extract_average_level_set: bad window length");

  const auto p = prefix_integral(snap);
  const std::size_t w = static_cast<std::size_t>(std::llround(window / snap.dx));
  const bool aligned = std::fabs(static_cast<double>(w) * snap.dx - window) < 1e-9;

  std::vector<double> avg;
  std::size_t count = aligned ? snap.size() - w
                              : static_cast<std::size_t>(
                                    (snap.x_right() - snap.x_left - window) / snap.dx);
  avg.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double xi = snap.node(i);
    const double num = aligned ? p[i + w] - p[i]
                               : integral_to(snap, p, xi + window) - p[i];
    avg.push_back(num / window);
  }

  AverageLevelSet out;
  bool constant = true;
  for (double a : avg)
    if (std::fabs(a - m) > 1e-12) {
      constant = false;
      break;
    }
  if (constant && !avg.empty()) {
    out.all = true;
    return out;
  }

  for (std::size_t i = 0; i + 1 < avg.size(); ++i) {
    const double a = avg[i] - m;
    const double b = avg[i + 1] - m;
    if (a == 0.0) out.positions.push_back(snap.node(i));
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))
      out.positions.push_back(snap.node(i) + snap.dx * a / (a - b));
  }
  std::sort(out.positions.begin(), out.positions.end());
  return out;
}

}  // namespace kpp
