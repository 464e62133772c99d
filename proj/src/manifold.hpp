#pragma once

#include <limits>
#include <string>
#include <vector>

#include "scalar_field.hpp"

namespace ovp {

// sentinel for an unbounded radial coordinate
inline constexpr double kUnboundedS = std::numeric_limits<double>::infinity();

// Rotationally symmetric model: radial coordinate on [0,S), warping function
// h with h(0)=0 and h'(0)=1, dimension N >= 2. The metric weight entering all
// radial integrals is h^(N-1).
class Manifold {
 public:
  enum class Kind { Euclidean, Hyperbolic, Spherical, Custom };

  static Manifold euclidean(int dim);   // h(r) = r,      S unbounded
  static Manifold hyperbolic(int dim);  // h(r) = sinh r, S unbounded
  static Manifold spherical(int dim);   // h(r) = sin r,  S = pi
  static Manifold custom(const std::string& h_expr, double S, int dim);

  double h(double r) const;        // domain checked: 0 <= r < S
  double h_prime(double r) const;

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double S() const { return S_; }
  const ScalarField& warping() const { return h_; }

 private:
  Manifold(Kind kind, int dim, double S, ScalarField h);

  Kind kind_;
  int dim_;
  double S_;
  ScalarField h_;
};

struct WarpingCheck {
  std::string invariant;
  bool pass;
  double r;  // first offending radius when failed, else NaN
  std::string detail;
};

struct WarpingReport {
  bool ok;
  std::vector<WarpingCheck> checks;
  std::string summary() const;
};

// Checks h > 0 at the interior sample radii, h(0) = 0 within 1e-12, and
// h(eps)/eps -> 1 at eps in {1e-3, 1e-4, 1e-5} within relative 1e-4.
// Vanishing of higher even derivatives at 0 is not checked.
WarpingReport validate_warping(const Manifold& m, const std::vector<double>& grid);

}  // namespace ovp
