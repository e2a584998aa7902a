#pragma once

#include <functional>

#include "kpp/grid.hpp"
#include "kpp/reaction.hpp"

namespace kpp {

/// Principal eigenpair of d^2/dx^2 + q(x) on the torus [0,L]: the largest
/// eigenvalue and its positive, L2-normalized eigenfunction.
struct EigenPair {
  enum class Potential { AtZero, AtOne, Custom };

  double eigenvalue = 0.0;
  TorusField psi;
  Potential tag = Potential::Custom;
};

/// Second-order periodic central differences, shifted inverse power
/// iteration (shift = max q + 1) on the tridiagonal-plus-corner system.
/// The eigenfunction is fixed positive and L2-normalized.
EigenPair principal_eigenpair(const std::function<double(double)>& q, double L,
                              int N = 512);

/// (psi0, f0): eigenpair of d^2/dx^2 + f_u(x,0).
EigenPair eigenpair_at_zero(const Nonlinearity& f, int N = 512);

/// (psi1, f1): eigenpair of d^2/dx^2 - f_u(x,1); positive since
/// f_u(x,1) < 0.
EigenPair eigenpair_at_one(const Nonlinearity& f, int N = 512);

/// (Integral of (q psi^2 - |D psi|^2)) / (Integral of psi^2) with periodic
/// forward differences; bounded above by the principal eigenvalue of the
/// same discrete operator.
double rayleigh_quotient(const TorusField& psi,
                         const std::function<double(double)>& q);

}  // namespace kpp
