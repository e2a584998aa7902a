#include "kpp/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

// Monotone cubic Hermite join on [1,2] between the plateau (value p,
// slope 0) and the tail (value v2, slope s2 <= 0). The tail slope is
// limited to keep the cubic monotone (Fritsch-Carlson).
std::function<double(double)> make_join(double p, double v2, double s2) {
  const double delta = v2 - p;  // < 0
  double m1 = std::max(s2, 3.0 * delta);
  return [p, v2, m1](double x) {
    const double t = x - 1.0;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * p + h01 * v2 + h11 * m1;
  };
}

std::function<double(double)> plateau_join_tail(
    double plateau, std::function<double(double)> tail,
    std::function<double(double)> tail_slope) {
  const double v2 = tail(2.0);
  if (v2 >= plateau)
    throw std::invalid_argument("profile: plateau must exceed the tail value at x=2");
  auto join = make_join(plateau, v2, tail_slope(2.0));
  return [plateau, join, tail = std::move(tail)](double x) {
    if (x <= 1.0) return plateau;
    if (x < 2.0) return join(x);
    return tail(x);
  };
}

}  // namespace

InitialData make_algebraic(double alpha, double plateau) {
  if (alpha <= 0.0) throw std::invalid_argument("make_algebraic: alpha must be positive");
  if (plateau <= 0.0 || plateau > 1.0)
    throw std::invalid_argument("make_algebraic: plateau must be in (0,1]");
  InitialData u0;
  u0.family = InitialData::Family::Algebraic;
  u0.alpha = alpha;
  u0.plateau = plateau;
  u0.tail_start = 2.0;
  u0.left_level = plateau;
  u0.eval = plateau_join_tail(
      plateau, [alpha](double x) { return std::pow(x, -alpha); },
      [alpha](double x) { return -alpha * std::pow(x, -alpha - 1.0); });
  return u0;
}

InitialData make_stretched(double beta, double plateau) {
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("make_stretched: beta must be in (0,1)");
  if (plateau <= 0.0 || plateau > 1.0)
    throw std::invalid_argument("make_stretched: plateau must be in (0,1]");
  InitialData u0;
  u0.family = InitialData::Family::Stretched;
  u0.beta = beta;
  u0.plateau = plateau;
  u0.tail_start = 2.0;
  u0.left_level = plateau;
  u0.eval = plateau_join_tail(
      plateau, [beta](double x) { return std::exp(-std::pow(x, beta)); },
      [beta](double x) {
        return -beta * std::pow(x, beta - 1.0) * std::exp(-std::pow(x, beta));
      });
  return u0;
}

InitialData make_log_algebraic(double alpha, double gamma, double plateau) {
  if (alpha <= 0.0)
    throw std::invalid_argument("make_log_algebraic: alpha must be positive");
  if (gamma < 0.0 || gamma >= alpha * std::log(2.0))
    throw std::invalid_argument(
        "make_log_algebraic: need 0 <= gamma < alpha*log(2) for a monotone tail");
  if (plateau <= 0.0 || plateau > 1.0)
    throw std::invalid_argument("make_log_algebraic: plateau must be in (0,1]");
  InitialData u0;
  u0.family = InitialData::Family::LogAlgebraic;
  u0.alpha = alpha;
  u0.gamma = gamma;
  u0.plateau = plateau;
  u0.tail_start = 2.0;
  u0.left_level = plateau;
  auto tail = [alpha, gamma](double x) {
    return std::pow(x, -alpha) * std::pow(std::log(x), gamma);
  };
  u0.eval = plateau_join_tail(plateau, tail, [alpha, gamma, tail](double x) {
    return tail(x) * (-alpha / x + gamma / (x * std::log(x)));
  });
  return u0;
}

InitialData make_table_profile(const std::vector<double>& samples, double x_span) {
  if (samples.size() < 3)
    throw std::invalid_argument("make_table_profile: need at least 3 samples");
  if (x_span <= 0.0)
    throw std::invalid_argument("make_table_profile: x_span must be positive");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    if (samples[i + 1] >= samples[i])
      throw std::invalid_argument("make_table_profile: samples must be strictly decreasing");
  if (samples.back() <= 0.0 || samples.front() > 1.0)
    throw std::invalid_argument("make_table_profile: samples must be in (0,1]");

  const double dx = x_span / static_cast<double>(samples.size() - 1);
  // Power-law continuation matched to the last two samples.
  const double x_last = x_span;
  const double x_prev = x_span - dx;
  const double p = std::log(samples[samples.size() - 2] / samples.back()) /
                   std::log(x_last / x_prev);
  const double tail_coef = samples.back() * std::pow(x_last, p);

  InitialData u0;
  u0.family = InitialData::Family::Table;
  u0.plateau = samples.front();
  u0.tail_start = 0.0;
  u0.left_level = samples.front();
  u0.eval = [samples, dx, x_span, p, tail_coef](double x) {
    if (x <= 0.0) return samples.front();
    if (x >= x_span) return tail_coef * std::pow(x, -p);
    double fx = x / dx;
    std::size_t i = std::min(static_cast<std::size_t>(fx), samples.size() - 2);
    double t = fx - static_cast<double>(i);
    return samples[i] * (1.0 - t) + samples[i + 1] * t;
  };
  return u0;
}

double inverse_tail(const InitialData& u0, double lambda) {
  const double top = u0.eval(u0.tail_start);
  if (!(lambda > 0.0) || lambda > top)
    throw RangeError("inverse_tail: level outside the invertible tail range");
  if (lambda == top) return u0.tail_start;

  double a = std::max(u0.tail_start, 1e-300);
  double b = std::max(2.0 * a, a + 1.0);
  int doublings = 0;
  while (u0.eval(b) > lambda) {
    a = b;
    b *= 2.0;
    if (++doublings > 2000)
      throw ConvergenceError("inverse_tail: bracketing failed after 2000 doublings");
  }

  const double tol = 1e-12 * lambda;
  double mid = 0.5 * (a + b);
  for (int iter = 0; iter < 500; ++iter) {
    mid = 0.5 * (a + b);
    double v = u0.eval(mid);
    if (std::fabs(v - lambda) <= tol) return mid;
    if (v > lambda)
      a = mid;
    else
      b = mid;
  }
  throw ConvergenceError("inverse_tail: bisection did not reach tolerance");
}

ValidationReport validate_admissibility(const InitialData& u0,
                                        const AdmissibilityProbe& probe) {
  if (probe.x_max <= std::max(u0.tail_start, 1.0))
    throw std::invalid_argument("validate_admissibility: x_max must exceed tail_start");

  const double x0 = std::max(u0.tail_start, 2.0);
  const int n = 64;
  std::vector<double> xs(n);
  const double ratio = std::pow(probe.x_max / x0, 1.0 / (n - 1));
  for (int i = 0; i < n; ++i) xs[i] = x0 * std::pow(ratio, i);

  ValidationReport rep;

  {  // (i) decay toward zero
    CheckResult c{"decays_to_zero"};
    double prev = u0.eval(xs[0]);
    for (int i = 1; i < n; ++i) {
      double v = u0.eval(xs[i]);
      if (v >= prev) {
        c.pass = false;
        c.worst_x = xs[i];
        c.violation = v - prev;
        break;
      }
      prev = v;
    }
    if (c.pass && u0.eval(probe.x_max) > 0.1 * u0.eval(x0)) {
      c.pass = false;
      c.worst_x = probe.x_max;
      c.violation = u0.eval(probe.x_max);
    }
    rep.checks.push_back(c);
  }

  // (ii) slower than e^{-eps x} for each probe eps: u0(x)e^{eps x} must be
  // increasing over the later samples. Work in logs; e^{eps x} overflows.
  for (double eps : probe.epsilons) {
    CheckResult c{"slower_than_exp_eps_" + std::to_string(eps)};
    double prev = std::log(u0.eval(xs[n / 2])) + eps * xs[n / 2];
    for (int i = n / 2 + 1; i < n; ++i) {
      double g = std::log(u0.eval(xs[i])) + eps * xs[i];
      if (g <= prev) {
        c.pass = false;
        c.worst_x = xs[i];
        c.violation = prev - g;
        break;
      }
      prev = g;
    }
    rep.checks.push_back(c);
  }

  {  // (iii) monotone tail on linear samples
    CheckResult c{"monotone_tail"};
    const double dx = (probe.x_max - x0) / 256.0;
    double prev = u0.eval(x0);
    for (int i = 1; i <= 256; ++i) {
      double v = u0.eval(x0 + i * dx);
      if (v >= prev) {
        c.pass = false;
        c.worst_x = x0 + i * dx;
        c.violation = v - prev;
        break;
      }
      prev = v;
    }
    rep.checks.push_back(c);
  }

  {  // (iv) u0'(x) log(u0)/u0 -> 0, finite-sample trend heuristic
    CheckResult c{"regularity_ratio"};
    auto ratio_at = [&u0](double x) {
      const double h = 1e-4 * x;
      const double du = (u0.eval(x + h) - u0.eval(x - h)) / (2.0 * h);
      const double u = u0.eval(x);
      return std::fabs(du * std::log(u) / u);
    };
    // The quotient needs u0 well above the underflow floor; cap the probe
    // window accordingly (fast tails underflow long before x_max).
    int last = n - 1;
    while (last > 2 && u0.eval(xs[last] * (1.0 + 1e-4)) < 1e-280) --last;
    const double r_first = ratio_at(xs[last / 2]);
    const double r_mid = ratio_at(xs[3 * last / 4]);
    const double r_last = ratio_at(xs[last]);
    c.worst_x = xs[last];
    c.violation = r_last;
    if (r_last <= 0.5 * r_first && r_last <= r_mid) {
      c.pass = true;
    } else if (r_last >= 1.2 * r_first) {
      c.pass = false;
    } else {
      c.pass = false;
      c.conclusive = false;  // borderline on this window
    }
    rep.checks.push_back(c);
  }

  return rep;
}

double oscillation_ratio(const InitialData& u0,
                         const std::function<double(double)>& lambda_of_t,
                         double c3, double t, int sign) {
  const double lambda = lambda_of_t(t);
  const double x = inverse_tail(u0, lambda);
  const double xs = x + (sign >= 0 ? 1.0 : -1.0) * c3 * t;
  if (xs < u0.tail_start)
    throw RangeError("oscillation_ratio: shifted argument left of the tail");
  return u0.eval(xs) / lambda;
}

}  // namespace kpp
