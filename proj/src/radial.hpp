#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "manifold.hpp"
#include "quadrature.hpp"

namespace ovp {

// Data of one overdetermined radial problem: -Laplace u = f with boundary
// value phi and normal-derivative datum kappa, posed on [r_lo, r_hi]; R0 set
// means the annular variant (inner boundary at R0, u = 0 there).
struct OverdeterminedSpec {
  Manifold manifold;
  ScalarField f, phi, kappa;
  double r_lo = 0;
  double r_hi = 0;
  std::optional<double> R0;
  // declared geometric hypothesis behind the right-side condition; recorded
  // in reports, never verified
  bool interior_sphere = true;
};

struct WValue {
  double value;
  bool boundary_layer;  // r - R0 < 1e-6 * R0; the value is ill-conditioned there
};

// Radial solution sampled on a graded grid; u(R) = c, and for annular
// profiles u(R0) = 0.
struct RadialProfile {
  std::vector<double> r, u, du;
  double R = 0, c = 0;
  std::optional<double> R0;
};

// Solution formulas for one spec, with shared cumulative tables of
// int h^(N-1) f and int h^(1-N) behind the nested integrals. Immutable after
// construction except for transparent extension of the covered radius.
class RadialProblem {
 public:
  explicit RadialProblem(OverdeterminedSpec spec, int table_n = 512);

  const OverdeterminedSpec& spec() const { return spec_; }
  const Manifold& manifold() const { return spec_.manifold; }

  // v(r) = -h(r)^(1-N) int_0^r h^(N-1) f dt, by direct adaptive quadrature
  double v(double r) const;

  // ball solution with u(R) = c, evaluated by the nested-integral route and
  // cross-checked against c - int_r^R v(s) ds to 1e-8
  double u_ball(double R, double c, double r) const;

  // w(r,c) = [c - int_R0^r int_s^r (h(t)/h(s))^(N-1) f dt ds] /
  //          [h(r)^(N-1) int_R0^r h^(1-N) ds]
  WValue w(double r, double c) const;

  // annular solution with u(R0) = 0, u(R) = c
  double u_annulus(double R, double c, double r) const;
  double u_annulus_prime(double R, double c, double r) const;

  RadialProfile ball_profile(double R, double c, int n = 512) const;
  RadialProfile annulus_profile(double R, double c, int n = 512) const;

  // slope of w in its second argument, 1/(h^(N-1) int_R0^r h^(1-N)); positive
  double w_slope(double r) const;

  // cumulative integral int_base^r h^(N-1) f (base = R0 when set, else 0)
  double F(double r) const;
  double F_direct(double r) const;  // same integral, fresh adaptive quadrature
  double G(double r) const;         // int_R0^r h^(1-N)
  double Hw(double r) const;        // int_R0^r h^(1-N) F(s) ds

  double f_left_exponent() const { return alpha_f_; }

 private:
  void ensure_cover(double r) const;
  double weight(double r) const;  // h(r)^(N-1)
  // Ftab_ read; a cubic cell cannot carry s^(N+alpha) near the origin, so
  // reads below r_direct_ are answered by direct quadrature instead
  double Ftab_value(double s) const;

  OverdeterminedSpec spec_;
  int table_n_;
  double alpha_f_ = 0;
  double base_ = 0;
  mutable double cover_hi_ = 0;
  mutable double r_direct_ = 0;
  mutable std::unique_ptr<CumulativeTable> Ftab_, Gtab_, Htab_;
};

// Max over adjacent profile nodes of
// |h^(N-1) du (r_{i+1}) - h^(N-1) du (r_i) + int_{r_i}^{r_{i+1}} h^(N-1) f dt|
// with the integral evaluated by direct quadrature, so table-backed profile
// slopes are checked against an independent route.
double ode_residual(const RadialProfile& p, const RadialProblem& prob);

// columns r,u,u_prime with 17 significant digits
void write_profile_csv(const RadialProfile& p, std::ostream& out);
void write_profile_csv(const RadialProfile& p, const std::string& path);

}  // namespace ovp
