#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "manifold.hpp"
#include "radial.hpp"
#include "scalar_field.hpp"

namespace ovp {

// Star-shaped domain in geodesic polar coordinates: boundary radius rho as a
// 2*pi-periodic function of the angle, optional inner radius for annular
// domains. Ellipse domains are Euclidean only.
struct StarDomain {
  enum class Kind { Ball, Annular, Ellipse };

  Kind kind = Kind::Ball;
  ScalarField rho;  // angle -> boundary radius
  double R0 = 0;    // inner radius, annular domains only
  double a = 0, b = 0;  // semi-axes, ellipse domains only

  static StarDomain ball(double R);
  static StarDomain ball_shaped(ScalarField rho);
  static StarDomain annulus(double R0, double R);
  static StarDomain annular_shaped(double R0, ScalarField rho);
  static StarDomain ellipse(double a, double b);
};

// Tensor-product solution in mapped coordinates (s, theta) with
// r = R0 + s*(rho(theta) - R0), s in [0,1]. Row i = 0 holds the pole value
// (ball-like) or the inner boundary value 0 (annular); row i = ns holds the
// Dirichlet data.
struct Grid2DSolution {
  int ns = 0, ntheta = 0;
  bool pole = false;  // domain includes r = 0
  double R0 = 0;
  std::vector<double> theta;  // ntheta angular nodes
  std::vector<double> rho;    // boundary radius at each angular node
  std::vector<double> u;      // (ns+1) * ntheta values, row-major in i
  std::vector<double> flux;   // metric-normal boundary derivative per angle
  std::vector<double> residual_history;
  int iterations = 0;
  bool used_sor = false;

  double s_of(int i) const { return double(i) / ns; }
  double r_of(int i, int j) const { return R0 + s_of(i) * (rho[j] - R0); }
  double at(int i, int j) const {
    return u[size_t(i) * ntheta + size_t(j)];
  }
};

// Second-order solve of the surface Poisson equation (dimension 2) with
// Dirichlet data g on the outer boundary; annular domains are clamped to 0 on
// the inner circle. Conjugate-gradient iteration with diagonal scaling,
// successive over-relaxation fallback, relative residual tol.
Grid2DSolution solve_dirichlet(const Manifold& m, const StarDomain& dom,
                               const ScalarField& f, const ScalarField& g,
                               int n_s, int n_theta, double tol = 1e-10,
                               int max_iter = 0);

const std::vector<double>& boundary_flux(const Grid2DSolution& sol);

// periodic cubic interpolation of the boundary flux at an arbitrary angle
double flux_at(const Grid2DSolution& sol, double theta);

// max over all grid nodes of |u - profile(r)|; requires a circular boundary
// matching the profile's domain
double radial_equivalence(const Grid2DSolution& sol, const RadialProfile& p);

// Boundary-slope table extracted from the zero-Dirichlet solve on an ellipse:
// for each r in [b,a], kappa = -u_nu averaged over the boundary points at
// distance r from the center (2 to 4 of them), mismatch = max spread among
// those values. consistency = worst mismatch over the table.
struct CounterexampleTable {
  double a = 0, b = 0;
  std::vector<double> r, kappa, mismatch;
  double consistency = 0;
  Grid2DSolution solution;
};

CounterexampleTable build_counterexample(double a, double b,
                                         const ScalarField& f, int n_s,
                                         int n_theta);

void write_solution_csv(const Grid2DSolution& sol, std::ostream& out);  // theta,s,r,u
void write_flux_csv(const Grid2DSolution& sol, std::ostream& out);  // theta,r,u_nu
void write_counterexample_csv(const CounterexampleTable& t, std::ostream& out);

}  // namespace ovp
