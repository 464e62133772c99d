#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ovp {

// One cubic Hermite segment on [x0,x1] with endpoint values and slopes.
inline double hermite(double x, double x0, double x1, double y0, double y1,
                      double m0, double m1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
}

inline double hermite_deriv(double x, double x0, double x1, double y0,
                            double y1, double m0, double m1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  return (6 * t2 - 6 * t) * (y0 - y1) / h + (3 * t2 - 4 * t + 1) * m0 +
         (3 * t2 - 2 * t) * m1;
}

// Fritsch-Carlson safeguard for one segment. Restricts slopes only where the
// data and both slopes agree on a direction; a segment containing a genuine
// extremum keeps its exact slopes.
inline void monotone_clamp(double x0, double x1, double y0, double y1,
                           double& m0, double& m1) {
  const double d = (y1 - y0) / (x1 - x0);
  if (d == 0) return;
  if (m0 * d < 0 || m1 * d < 0) return;
  const double lim = 3 * std::fabs(d);
  if (std::fabs(m0) > lim) m0 = std::copysign(lim, d);
  if (std::fabs(m1) > lim) m1 = std::copysign(lim, d);
}

// PCHIP slopes for tabulated data (shape-preserving, C1).
inline std::vector<double> pchip_slopes(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 2) return m;
  if (n == 2) {
    m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return m;
  }
  std::vector<double> h(n - 1), d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0) {
      m[i] = 0;
    } else {
      const double w1 = 2 * h[i] + h[i - 1];
      const double w2 = h[i] + 2 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  auto edge_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0) return 0.0;
    if (d0 * d1 < 0 && std::fabs(s) > 3 * std::fabs(d0)) return 3 * d0;
    return s;
  };
  m[0] = edge_slope(h[0], h[1], d[0], d[1]);
  m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

}  // namespace ovp
