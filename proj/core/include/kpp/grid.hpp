#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace kpp {

/// Values sampled at N uniform nodes x_i = i*L/N on the torus [0,L).
struct TorusField {
  std::vector<double> values;
  double period = 1.0;

  TorusField() = default;
  TorusField(std::size_t n, double value, double L)
      : values(n, value), period(L) {}

  std::size_t size() const { return values.size(); }
  double dx() const { return period / static_cast<double>(values.size()); }
  double node(std::size_t i) const { return static_cast<double>(i) * dx(); }

  double mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }

  // Trapezoid with periodic closure; on a uniform periodic grid this is
  // just mean * L.
  double integral() const { return mean() * period; }

  double min() const {
    double m = values.front();
    for (double v : values) m = v < m ? v : m;
    return m;
  }
  double max() const {
    double m = values.front();
    for (double v : values) m = v > m ? v : m;
    return m;
  }
};

/// Values at uniform nodes on a truncated line [x_left, x_right].
struct LineField {
  std::vector<double> values;
  double x_left = 0.0;
  double dx = 1.0;

  std::size_t size() const { return values.size(); }
  double node(std::size_t i) const { return x_left + static_cast<double>(i) * dx; }
  double x_right() const { return node(values.size() - 1); }
};

inline double integral(const TorusField& a, const TorusField& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.values[i] * b.values[i];
  return s * a.dx();
}

}  // namespace kpp
