#include "kpp/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace kpp {

TridiagFactor::TridiagFactor(std::vector<double> sub, std::vector<double> diag,
                             std::vector<double> sup)
    : sub_(std::move(sub)), diag_(std::move(diag)), sup_(std::move(sup)) {
  const std::size_t n = diag_.size();
  if (sub_.size() != n || sup_.size() != n)
    throw std::invalid_argument("TridiagFactor: coefficient size mismatch");
  mult_.resize(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (diag_[i - 1] == 0.0) throw std::invalid_argument("TridiagFactor: zero pivot");
    mult_[i] = sub_[i] / diag_[i - 1];
    diag_[i] -= mult_[i] * sup_[i - 1];
  }
  if (diag_[n - 1] == 0.0) throw std::invalid_argument("TridiagFactor: zero pivot");
}

void TridiagFactor::solve(const std::vector<double>& rhs, std::vector<double>& x) const {
  const std::size_t n = diag_.size();
  x.resize(n);
  x[0] = rhs[0];
  for (std::size_t i = 1; i < n; ++i) x[i] = rhs[i] - mult_[i] * x[i - 1];
  x[n - 1] /= diag_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - sup_[i] * x[i + 1]) / diag_[i];
}

namespace {

TridiagFactor make_core(std::vector<double> diag, double off, double gamma) {
  const std::size_t n = diag.size();
  diag[0] -= gamma;
  diag[n - 1] -= off * off / gamma;
  return TridiagFactor(std::vector<double>(n, off), std::move(diag),
                       std::vector<double>(n, off));
}

}  // namespace

PeriodicTridiag::PeriodicTridiag(std::vector<double> diag, double off)
    : n_(diag.size()),
      gamma_(diag[0] != 0.0 ? -diag[0] : 1.0),
      off_(off),
      core_(make_core(diag, off, gamma_)) {
  if (n_ < 3) throw std::invalid_argument("PeriodicTridiag: need at least 3 nodes");
  std::vector<double> u(n_, 0.0);
  u[0] = gamma_;
  u[n_ - 1] = off_;
  z_.resize(n_);
  core_.solve(u, z_);
}

void PeriodicTridiag::solve(const std::vector<double>& rhs, std::vector<double>& x) const {
  core_.solve(rhs, x);
  // v = (1, 0, ..., 0, off/gamma): correct for the folded corner entries.
  const double vy = x[0] + (off_ / gamma_) * x[n_ - 1];
  const double vz = z_[0] + (off_ / gamma_) * z_[n_ - 1];
  const double factor = vy / (1.0 + vz);
  for (std::size_t i = 0; i < n_; ++i) x[i] -= factor * z_[i];
}

}  // namespace kpp
