#include "kpp/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

// Cash-Karp 4(5) pair.
struct RkResult {
  double y5;
  double err;
};

template <typename F>
RkResult rk45_step(const F& g, double y, double h) {
  const double k1 = g(y);
  const double k2 = g(y + h * (k1 / 5.0));
  const double k3 = g(y + h * (3.0 * k1 + 9.0 * k2) / 40.0);
  const double k4 = g(y + h * (0.3 * k1 - 0.9 * k2 + 1.2 * k3));
  const double k5 =
      g(y + h * (-11.0 / 54.0 * k1 + 2.5 * k2 - 70.0 / 27.0 * k3 + 35.0 / 27.0 * k4));
  const double k6 = g(y + h * (1631.0 / 55296.0 * k1 + 175.0 / 512.0 * k2 +
                               575.0 / 13824.0 * k3 + 44275.0 / 110592.0 * k4 +
                               253.0 / 4096.0 * k5));
  const double y5 = y + h * (37.0 / 378.0 * k1 + 250.0 / 621.0 * k3 +
                             125.0 / 594.0 * k4 + 512.0 / 1771.0 * k6);
  const double y4 = y + h * (2825.0 / 27648.0 * k1 + 18575.0 / 48384.0 * k3 +
                             13525.0 / 55296.0 * k4 + 277.0 / 14336.0 * k5 +
                             0.25 * k6);
  return {y5, std::fabs(y5 - y4)};
}

// Integrates y' = g(y) from y(0) = y0 over [0, t_end], t_end > 0, appending
// accepted nodes (t, y, g(y)) to the output arrays.
template <typename F>
void integrate(const F& g, double y0, double t_end, double tol,
               std::vector<double>& ts, std::vector<double>& ys,
               std::vector<double>& dys) {
  // The step cap keeps the cubic Hermite dense output below 1e-8.
  const double h_max = 0.02;
  double t = 0.0;
  double y = y0;
  double h = h_max;
  ts.push_back(0.0);
  ys.push_back(y0);
  dys.push_back(g(y0));
  while (t < t_end) {
    h = std::min(h, t_end - t);
    RkResult r = rk45_step(g, y, h);
    const double scale = tol * std::max(std::fabs(y), 1e-280);
    if (r.err <= scale) {
      t += h;
      y = r.y5;
      ts.push_back(t);
      ys.push_back(y);
      dys.push_back(g(y));
      const double grow = r.err > 0.0 ? 0.9 * std::pow(scale / r.err, 0.2) : 2.0;
      h = std::min(h * std::min(grow, 2.0), h_max);
    } else {
      h *= std::max(0.9 * std::pow(scale / r.err, 0.25), 0.1);
    }
    if (h < 1e-14)
      throw ConvergenceError("solve_profile: step-size underflow near saturation");
  }
}

double hermite(double t0, double t1, double y0, double y1, double d0, double d1,
               double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

}  // namespace

LogisticProfile::LogisticProfile(std::vector<double> t, std::vector<double> y,
                                 std::vector<double> dy, double rate0, double rate1)
    : t_(std::move(t)), y_(std::move(y)), dy_(std::move(dy)),
      rate0_(rate0), rate1_(rate1) {}

double LogisticProfile::eval(double t) const {
  if (t <= t_.front())
    return y_.front() * std::exp(rate0_ * (t - t_.front()));
  if (t >= t_.back())
    return 1.0 - (1.0 - y_.back()) * std::exp(-rate1_ * (t - t_.back()));
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
  return hermite(t_[i], t_[i + 1], y_[i], y_[i + 1], dy_[i], dy_[i + 1], t);
}

double LogisticProfile::level_time(double m) const {
  if (!(m > 0.0) || !(m < 1.0))
    throw RangeError("level_time: level must be in (0,1)");
  if (m <= y_.front())
    return t_.front() + std::log(m / y_.front()) / rate0_;
  if (m >= y_.back())
    return t_.back() + std::log((1.0 - y_.back()) / (1.0 - m)) / rate1_;
  // Nodes are strictly increasing in value; bisect on the dense output.
  auto it = std::lower_bound(y_.begin(), y_.end(), m);
  std::size_t i = static_cast<std::size_t>(it - y_.begin());
  double a = t_[i - 1], b = t_[i];
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    const double v = eval(mid);
    if (std::fabs(v - m) <= 1e-10) return mid;
    (v < m ? a : b) = mid;
  }
  throw ConvergenceError("level_time: bisection did not converge");
}

LogisticProfile solve_profile(const Nonlinearity& f, double t_lo, double t_hi,
                              double tol) {
  if (!f.homogeneous())
    throw std::invalid_argument("solve_profile: nonlinearity must be homogeneous");
  if (!(t_lo < 0.0) || !(t_hi > 0.0))
    throw std::invalid_argument("solve_profile: need t_lo < 0 < t_hi");

  auto g = [&f](double y) { return f.eval(0.0, y); };

  std::vector<double> tf, yf, df;
  integrate(g, 0.5, t_hi, tol, tf, yf, df);

  // Backward in time via the equivalent forward problem for phi(-t).
  auto gb = [&g](double y) { return -g(y); };
  std::vector<double> tb, yb, db;
  integrate(gb, 0.5, -t_lo, tol, tb, yb, db);

  std::vector<double> t, y, dy;
  t.reserve(tf.size() + tb.size());
  for (std::size_t i = tb.size(); i-- > 1;) {
    t.push_back(-tb[i]);
    y.push_back(yb[i]);
    dy.push_back(-db[i]);
  }
  for (std::size_t i = 0; i < tf.size(); ++i) {
    t.push_back(tf[i]);
    y.push_back(yf[i]);
    dy.push_back(df[i]);
  }
  return LogisticProfile(std::move(t), std::move(y), std::move(dy),
                         f.du_at_zero(0.0), -f.du_at_one(0.0));
}

double predict_level_position(const LogisticProfile& profile,
                              const InitialData& u0, double m, double T) {
  const double level = profile.eval(profile.level_time(m) - T);
  return inverse_tail(u0, level);
}

}  // namespace kpp
