#pragma once

#include <cstddef>
#include <vector>

namespace kpp {

/// LU factorization of a tridiagonal system with per-row coefficients,
/// reusable across many right-hand sides.
class TridiagFactor {
public:
  /// sub[i] multiplies x[i-1] in row i (sub[0] unused); sup[i] multiplies
  /// x[i+1] (sup[n-1] unused).
  TridiagFactor(std::vector<double> sub, std::vector<double> diag,
                std::vector<double> sup);

  void solve(const std::vector<double>& rhs, std::vector<double>& x) const;
  std::size_t size() const { return diag_.size(); }

private:
  std::vector<double> sub_, diag_, sup_;  // diag_ holds pivots after factorization
  std::vector<double> mult_;
};

/// Symmetric tridiagonal system with equal periodic corner entries,
/// solved by the Sherman-Morrison corner correction on top of a
/// factorized core system.
class PeriodicTridiag {
public:
  PeriodicTridiag(std::vector<double> diag, double off);

  void solve(const std::vector<double>& rhs, std::vector<double>& x) const;
  std::size_t size() const { return n_; }

private:
  std::size_t n_;
  double gamma_;
  double off_;
  std::vector<double> z_;  // core^{-1} * corner vector
  TridiagFactor core_;
};

}  // namespace kpp
