#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kpp {

/// An L-periodic KPP nonlinearity f(x,u) together with its linearizations
/// at the unstable state u=0 and the saturated state u=1.
struct Nonlinearity {
  enum class Kind { Homogeneous, Periodic };

  double period = 1.0;
  Kind kind = Kind::Homogeneous;
  std::function<double(double x, double u)> eval;
  std::function<double(double x)> du_at_zero;
  std::function<double(double x)> du_at_one;

  bool homogeneous() const { return kind == Kind::Homogeneous; }
};

/// The classical Fisher nonlinearity f(u) = u(1-u).
Nonlinearity make_fisher(double period = 1.0);

/// f(x,u) = (1 + a cos(2 pi x / L)) u (1-u), the canonical inhomogeneous
/// test family. Requires 0 <= a < 1 so that f_u(x,0) stays positive.
Nonlinearity make_periodic_fisher(double amplitude, double period);

/// Tabulated nonlinearity: values f(x_i, u_j) on a uniform (x,u) grid over
/// [0,L) x [0,1], evaluated by bilinear interpolation; x wraps periodically.
/// Linearizations are one-sided finite differences of the table.
Nonlinearity make_table_nonlinearity(const std::vector<std::vector<double>>& values,
                                     double period);

struct CheckResult {
  std::string name;
  bool pass = true;
  // False when finite data cannot decide the condition either way; such
  // entries do not count against ValidationReport::pass().
  bool conclusive = true;
  double worst_x = 0.0;
  double worst_u = 0.0;
  double violation = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (c.conclusive && !c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Certifies the KPP structure conditions on an x_samples-by-u_samples grid:
/// f(x,0)=f(x,1)=0, f(x,u) <= f_u(x,0)u, f(x,u)/u non-increasing in u,
/// f_u(x,0)>0, f_u(x,1)<0, and L-periodicity. Sample counts default to 64.
ValidationReport validate_kpp(const Nonlinearity& f, int x_samples = 64,
                              int u_samples = 64);

}  // namespace kpp
