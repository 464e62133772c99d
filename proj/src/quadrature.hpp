#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "manifold.hpp"
#include "scalar_field.hpp"

namespace ovp {

struct QuadratureResult {
  double value;
  double error;      // estimate; <= tol * (1 + |value|) on success
  int subdivisions;
};

// Integrand with optional endpoint power behavior g ~ (t-a)^alpha (alpha > -1),
// removed by the substitution t = a + (b-a) s^p, p = ceil(2/(1+alpha)).
struct Integrand {
  std::function<double(double)> g;
  std::optional<double> singular_left;
  std::optional<double> singular_right;
};

// Adaptive Gauss-Kronrod 7/15, worst-interval-first. Throws
// Error(NoConvergence) carrying the best estimate once max_subdiv is hit.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           double tol = 1e-10, int max_subdiv = 20000);
QuadratureResult integrate(const std::function<double(double)>& g, double a,
                           double b, double tol = 1e-10);

// int_a^b h(t)^(N-1) f(t) dt with the weight taken from m. When a = 0 the
// combined endpoint exponent (N-1) + alpha_f is estimated and handled; a
// combined exponent <= -1 is rejected as non-integrable.
QuadratureResult integrate_weighted_h(const Manifold& m, const ScalarField& f,
                                      double a, double b, double tol = 1e-10);

// Estimated power alpha of |f| as r -> 0+ (0 for bounded nonzero f); used to
// pick the de-singularizing substitution.
double estimate_left_exponent(const ScalarField& f, double scale);

// Nodes a + (b-a) * (i/n)^grade, i = 0..n; grade > 1 crowds them toward a.
std::vector<double> graded_nodes(double a, double b, int n, double grade,
                                 bool dense_at_a = true);

// y(r) = int_base^r g dt tabulated on a graded grid, cubic Hermite between
// nodes with exact slopes g(r_i), monotone-safeguarded. Queries landing in a
// first segment whose left slope is singular fall back to direct quadrature.
class CumulativeTable {
 public:
  CumulativeTable(std::function<double(double)> g, double a, double b,
                  int n = 512, double grade = 1.5,
                  std::optional<double> alpha_left = std::nullopt);

  double value(double r) const;
  double slope(double r) const { return g_(r); }
  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::function<double(double)> g_;
  std::vector<double> x_, y_, m_;
  std::optional<double> alpha_;
  bool first_segment_singular_ = false;
};

}  // namespace ovp
