#pragma once

#include <functional>
#include <vector>

#include "kpp/reaction.hpp"

namespace kpp {

/// Front-like initial data: a left plateau, a monotone C1 join, and an
/// analytically known slowly decaying tail for x >= tail_start.
struct InitialData {
  enum class Family { Algebraic, Stretched, LogAlgebraic, Table };

  Family family = Family::Algebraic;
  double alpha = 0.0;    // algebraic / log-algebraic exponent
  double beta = 0.0;     // stretched-exponential exponent
  double gamma = 0.0;    // log-algebraic log power
  double plateau = 1.0;
  double tail_start = 2.0;  // eval is strictly decreasing for x >= tail_start
  double left_level = 1.0;  // liminf as x -> -infinity

  std::function<double(double)> eval;
};

/// Tail u0(x) = x^{-alpha} for x >= 2; plateau for x <= 1; monotone C1
/// cubic join in between. Requires alpha > 0 and plateau in (2^{-alpha}, 1].
InitialData make_algebraic(double alpha, double plateau = 1.0);

/// Tail u0(x) = exp(-x^beta) for x >= 2. Admissible (slower than any
/// exponential, regular) only for beta < 1/2; the constructor accepts any
/// beta in (0,1) so the inadmissible side can be probed.
InitialData make_stretched(double beta, double plateau = 1.0);

/// Tail u0(x) = x^{-alpha} log(x)^gamma for x >= 2. Requires gamma >= 0 and
/// gamma < alpha*log(2) so the tail is decreasing from x = 2 on.
InitialData make_log_algebraic(double alpha, double gamma, double plateau = 1.0);

/// Tabulated profile: strictly decreasing samples at uniform nodes on
/// [0, x_span]; constant to the left, power-law continuation of the last
/// two samples to the right.
InitialData make_table_profile(const std::vector<double>& samples, double x_span);

/// Inverts the monotone tail: the x >= tail_start with u0(x) = lambda, to
/// relative tolerance 1e-12. lambda must lie in (0, u0(tail_start)].
/// Bracketing doubles the abscissa; failure after 2000 doublings throws.
double inverse_tail(const InitialData& u0, double lambda);

struct AdmissibilityProbe {
  std::vector<double> epsilons = {1.0, 0.1, 0.01};
  double x_max = 1e8;
};

/// Certifies conditions on u0 on finite samples: decay to zero, slower-
/// than-exponential decay for each probe epsilon, monotone tail, and the
/// vanishing of u0'(x) log(u0)/u0 (trend heuristic; may be inconclusive).
ValidationReport validate_admissibility(const InitialData& u0,
                                        const AdmissibilityProbe& probe = {});

/// u0(u0^{-1}(lambda_t) +/- c3 t) / lambda_t; tends to 1 as t grows for
/// admissible data and exponentially small lambda_t.
double oscillation_ratio(const InitialData& u0,
                         const std::function<double(double)>& lambda_of_t,
                         double c3, double t, int sign);

}  // namespace kpp
