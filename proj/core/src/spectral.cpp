#include "kpp/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "kpp/errors.hpp"
#include "kpp/tridiag.hpp"

namespace kpp {

namespace {

// y = (D^2 + diag(q)) x with the periodic second-difference operator.
void apply_operator(const std::vector<double>& x, const std::vector<double>& q,
                    double inv_dx2, std::vector<double>& y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double xm = x[i == 0 ? n - 1 : i - 1];
    const double xp = x[i + 1 == n ? 0 : i + 1];
    y[i] = inv_dx2 * (xm - 2.0 * x[i] + xp) + q[i] * x[i];
  }
}

}  // namespace

EigenPair principal_eigenpair(const std::function<double(double)>& q, double L, int N) {
  if (N < 8) throw std::invalid_argument("principal_eigenpair: N must be >= 8");
  if (L <= 0.0) throw std::invalid_argument("principal_eigenpair: L must be positive");

  const double dx = L / N;
  const double inv_dx2 = 1.0 / (dx * dx);

  std::vector<double> qv(N);
  double q_max = -1e300;
  for (int i = 0; i < N; ++i) {
    qv[i] = q(i * dx);
    q_max = std::max(q_max, qv[i]);
  }

  // M = shift*I - A is symmetric positive definite; inverse iteration on M
  // converges to the largest eigenvalue of A.
  const double shift = q_max + 1.0;
  std::vector<double> diag(N);
  for (int i = 0; i < N; ++i) diag[i] = shift + 2.0 * inv_dx2 - qv[i];
  PeriodicTridiag solver(diag, -inv_dx2);

  std::vector<double> v(N, 1.0 / std::sqrt(L));
  std::vector<double> w(N), av(N);
  double lambda = 0.0;
  const int max_iter = 20000;
  bool converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    solver.solve(v, w);
    double norm2 = 0.0;
    for (double x : w) norm2 += x * x;
    const double norm = std::sqrt(norm2 * dx);
    double diff = 0.0;
    for (int i = 0; i < N; ++i) {
      w[i] /= norm;
      diff = std::max(diff, std::fabs(w[i] - v[i]));
    }
    v.swap(w);

    apply_operator(v, qv, inv_dx2, av);
    lambda = 0.0;
    for (int i = 0; i < N; ++i) lambda += v[i] * av[i];
    lambda *= dx;
    double residual = 0.0;
    for (int i = 0; i < N; ++i)
      residual = std::max(residual, std::fabs(av[i] - lambda * v[i]));
    if (residual <= 1e-7 * std::max(std::fabs(lambda), 1e-30)) {
      converged = true;
      break;
    }
    if (diff < 1e-14)
      throw ConvergenceError("principal_eigenpair: iteration stagnated before residual convergence");
  }
  if (!converged)
    throw ConvergenceError("principal_eigenpair: power iteration did not converge");

  // Sign fix: make the max-magnitude node positive, then require positivity
  // everywhere (Krein-Rutman; a negative node signals discretization failure).
  double vmax = 0.0;
  for (double x : v)
    if (std::fabs(x) > std::fabs(vmax)) vmax = x;
  if (vmax < 0.0)
    for (double& x : v) x = -x;
  for (double x : v)
    if (x <= 0.0)
      throw ConvergenceError("principal_eigenpair: eigenfunction not positive");

  EigenPair pair;
  pair.eigenvalue = lambda;
  pair.psi.values = std::move(v);
  pair.psi.period = L;
  return pair;
}

EigenPair eigenpair_at_zero(const Nonlinearity& f, int N) {
  EigenPair p = principal_eigenpair(f.du_at_zero, f.period, N);
  p.tag = EigenPair::Potential::AtZero;
  return p;
}

EigenPair eigenpair_at_one(const Nonlinearity& f, int N) {
  EigenPair p = principal_eigenpair([&f](double x) { return -f.du_at_one(x); },
                                    f.period, N);
  p.tag = EigenPair::Potential::AtOne;
  return p;
}

double rayleigh_quotient(const TorusField& psi,
                         const std::function<double(double)>& q) {
  const std::size_t n = psi.size();
  const double dx = psi.dx();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = psi.values[i];
    const double pn = psi.values[i + 1 == n ? 0 : i + 1];
    const double grad = (pn - p) / dx;
    num += q(psi.node(i)) * p * p - grad * grad;
    den += p * p;
  }
  if (den == 0.0)
    throw std::invalid_argument("rayleigh_quotient: field is identically zero");
  return num / den;
}

}  // namespace kpp
