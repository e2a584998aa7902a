#include "kpp/reaction.hpp"

#include <cmath>
#include <stdexcept>

namespace kpp {

Nonlinearity make_fisher(double period) {
  if (period <= 0.0) throw std::invalid_argument("make_fisher: period must be positive");
  Nonlinearity f;
  f.period = period;
  f.kind = Nonlinearity::Kind::Homogeneous;
  f.eval = [](double, double u) { return u * (1.0 - u); };
  f.du_at_zero = [](double) { return 1.0; };
  f.du_at_one = [](double) { return -1.0; };
  return f;
}

Nonlinearity make_periodic_fisher(double amplitude, double period) {
  if (amplitude < 0.0 || amplitude >= 1.0)
    throw std::invalid_argument("make_periodic_fisher: amplitude must be in [0,1)");
  if (period <= 0.0)
    throw std::invalid_argument("make_periodic_fisher: period must be positive");
  Nonlinearity f;
  f.period = period;
  f.kind = amplitude == 0.0 ? Nonlinearity::Kind::Homogeneous
                            : Nonlinearity::Kind::Periodic;
  const double k = 2.0 * M_PI / period;
  auto g = [amplitude, k](double x) { return 1.0 + amplitude * std::cos(k * x); };
  f.eval = [g](double x, double u) { return g(x) * u * (1.0 - u); };
  f.du_at_zero = g;
  f.du_at_one = [g](double x) { return -g(x); };
  return f;
}

Nonlinearity make_table_nonlinearity(const std::vector<std::vector<double>>& values,
                                     double period) {
  if (period <= 0.0)
    throw std::invalid_argument("make_table_nonlinearity: period must be positive");
  if (values.size() < 2 || values.front().size() < 2)
    throw std::invalid_argument("make_table_nonlinearity: need at least a 2x2 table");
  const std::size_t nu = values.front().size();
  for (const auto& row : values)
    if (row.size() != nu)
      throw std::invalid_argument("make_table_nonlinearity: ragged table");

  const std::size_t nx = values.size();
  auto bilinear = [values, nx, nu, period](double x, double u) {
    double xs = std::fmod(x / period, 1.0);
    if (xs < 0.0) xs += 1.0;
    double us = std::min(std::max(u, 0.0), 1.0);
    // x wraps; u is clamped to the table edge.
    double fx = xs * static_cast<double>(nx);
    double fu = us * static_cast<double>(nu - 1);
    std::size_t i = std::min(static_cast<std::size_t>(fx), nx - 1);
    std::size_t j = std::min(static_cast<std::size_t>(fu), nu - 2);
    double tx = fx - static_cast<double>(i);
    double tu = fu - static_cast<double>(j);
    std::size_t ip = (i + 1) % nx;
    double a = values[i][j] * (1.0 - tu) + values[i][j + 1] * tu;
    double b = values[ip][j] * (1.0 - tu) + values[ip][j + 1] * tu;
    return a * (1.0 - tx) + b * tx;
  };

  const double du = 1.0 / static_cast<double>(nu - 1);
  Nonlinearity f;
  f.period = period;
  f.kind = Nonlinearity::Kind::Periodic;
  f.eval = bilinear;
  f.du_at_zero = [bilinear, du](double x) { return bilinear(x, du) / du; };
  f.du_at_one = [bilinear, du](double x) { return -bilinear(x, 1.0 - du) / du; };
  return f;
}

ValidationReport validate_kpp(const Nonlinearity& f, int x_samples, int u_samples) {
  if (x_samples < 16 || u_samples < 16)
    throw std::invalid_argument("validate_kpp: sample counts must be >= 16");

  const double eq_tol = 1e-12;
  const double mono_tol = 1e-10;
  const double L = f.period;

  CheckResult vanish{"vanishes_at_0_and_1"};
  CheckResult chord{"chord_bound"};
  CheckResult ratio{"f_over_u_nonincreasing"};
  CheckResult dz{"du_at_zero_positive"};
  CheckResult done{"du_at_one_negative"};
  CheckResult peri{"periodic_in_x"};

  auto worse = [](CheckResult& c, double v, double x, double u) {
    if (v > c.violation) {
      c.violation = v;
      c.worst_x = x;
      c.worst_u = u;
      c.pass = false;
    }
  };

  for (int i = 0; i < x_samples; ++i) {
    const double x = L * (static_cast<double>(i) + 0.5) / x_samples;

    double v0 = std::fabs(f.eval(x, 0.0));
    double v1 = std::fabs(f.eval(x, 1.0));
    if (v0 > eq_tol) worse(vanish, v0, x, 0.0);
    if (v1 > eq_tol) worse(vanish, v1, x, 1.0);

    double d0 = f.du_at_zero(x);
    if (d0 <= 0.0) worse(dz, -d0 + 1e-300, x, 0.0);
    double d1 = f.du_at_one(x);
    if (d1 >= 0.0) worse(done, d1 + 1e-300, x, 1.0);

    double prev_ratio = 0.0;
    for (int j = 1; j <= u_samples; ++j) {
      const double u = static_cast<double>(j) / u_samples;
      const double fu = f.eval(x, u);

      double excess = fu - d0 * u;
      if (excess > eq_tol) worse(chord, excess, x, u);

      double r = fu / u;
      if (j > 1 && r - prev_ratio > mono_tol) worse(ratio, r - prev_ratio, x, u);
      prev_ratio = r;

      double pdiff = std::fabs(f.eval(x + L, u) - fu);
      if (pdiff > eq_tol) worse(peri, pdiff, x, u);
    }
  }

  ValidationReport rep;
  rep.checks = {vanish, chord, ratio, dz, done, peri};
  return rep;
}

}  // namespace kpp
