#include "radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace ovp {

namespace {

double ipow(double x, int k) {
  double out = 1;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

}  // namespace

RadialProblem::RadialProblem(OverdeterminedSpec spec, int table_n)
    : spec_(std::move(spec)), table_n_(table_n) {
  const Manifold& m = spec_.manifold;
  if (!(spec_.r_lo >= 0) || !(spec_.r_lo < spec_.r_hi) || !(spec_.r_hi < m.S()))
    throw Error(ErrorCode::Invalid, "need 0 <= r_lo < r_hi < S");
  if (spec_.R0 && (!(*spec_.R0 > 0) || !(*spec_.R0 <= spec_.r_lo)))
    throw Error(ErrorCode::Invalid, "need 0 < R0 <= r_lo");
  if (table_n_ < 32) throw Error(ErrorCode::Invalid, "table resolution too small");
  base_ = spec_.R0.value_or(0.0);
  alpha_f_ = base_ == 0 ? estimate_left_exponent(spec_.f, std::max(spec_.r_hi, 1e-6)) : 0.0;
  ensure_cover(spec_.r_hi);
}

double RadialProblem::weight(double r) const {
  return ipow(spec_.manifold.h(r), spec_.manifold.dim() - 1);
}

void RadialProblem::ensure_cover(double r) const {
  if (Ftab_ && r <= cover_hi_) return;
  const Manifold& m = spec_.manifold;
  const int N = m.dim();
  if (!(r > base_) || r >= m.S())
    throw Error(ErrorCode::Domain, "radius " + std::to_string(r) + " outside (base, S)");
  cover_hi_ = std::max(r, cover_hi_);
  auto wf = [this](double t) { return weight(t) * spec_.f(t); };
  std::optional<double> hint;
  if (base_ == 0) {
    const double combined = (N - 1) + alpha_f_;
    if (combined <= -1 + 1e-9)
      throw Error(ErrorCode::Domain,
                  "h^(N-1) f behaves like t^" + std::to_string(combined) +
                      " near 0 and is not integrable");
    if (combined < -1e-3) hint = combined;
  }
  Ftab_ = std::make_unique<CumulativeTable>(wf, base_, cover_hi_, table_n_, 1.5, hint);
  r_direct_ = 0;
  if (base_ == 0) {
    // the leading power s^(N+alpha) defeats cubic cells near the origin;
    // reads below this node go to direct quadrature (node-aligned, so the
    // two evaluation routes meet without a jump)
    const auto& xs = Ftab_->nodes();
    r_direct_ = xs[std::min<size_t>(64, xs.size() - 1)];
  }
  if (spec_.R0) {
    auto gw = [this](double t) { return 1.0 / weight(t); };
    Gtab_ = std::make_unique<CumulativeTable>(gw, base_, cover_hi_, table_n_, 1.5);
    auto hw = [this](double t) { return Ftab_->value(t) / weight(t); };
    Htab_ = std::make_unique<CumulativeTable>(hw, base_, cover_hi_, table_n_, 1.5);
  }
}

double RadialProblem::Ftab_value(double s) const {
  if (base_ == 0 && s > 0 && s < r_direct_)
    return integrate_weighted_h(spec_.manifold, spec_.f, 0, s, 1e-13).value;
  return Ftab_->value(s);
}

double RadialProblem::F(double r) const {
  ensure_cover(r);
  return Ftab_value(r);
}

double RadialProblem::F_direct(double r) const {
  if (r == base_) return 0.0;
  return integrate_weighted_h(spec_.manifold, spec_.f, base_, r, 1e-13).value;
}

double RadialProblem::G(double r) const {
  if (!spec_.R0) throw Error(ErrorCode::Invalid, "G requires an annular problem");
  ensure_cover(r);
  return Gtab_->value(r);
}

double RadialProblem::Hw(double r) const {
  if (!spec_.R0) throw Error(ErrorCode::Invalid, "H requires an annular problem");
  ensure_cover(r);
  return Htab_->value(r);
}

double RadialProblem::v(double r) const {
  const Manifold& m = spec_.manifold;
  if (!(r > 0) || r >= m.S())
    throw Error(ErrorCode::Domain, "v needs 0 < r < S");
  const double num = integrate_weighted_h(m, spec_.f, 0, r, 1e-13).value;
  return -num / weight(r);
}

double RadialProblem::u_ball(double R, double c, double r) const {
  const Manifold& m = spec_.manifold;
  if (!(r >= 0) || !(r <= R) || !(R < m.S()))
    throw Error(ErrorCode::Domain, "u_ball needs 0 <= r <= R < S");
  if (r == R) return c;
  std::optional<double> outer_hint;
  if (r == 0) {
    const double exponent = 1 + alpha_f_;  // -v(s) ~ s^(1+alpha) near 0
    if (exponent <= -1 + 1e-9)
      throw Error(ErrorCode::Domain, "ball solution diverges at r = 0 for this source");
    if (exponent < -1e-3) outer_hint = exponent;
  }

  double route1;
  if (base_ == 0) {
    ensure_cover(R);
    auto q = [this](double s) { return Ftab_value(s) / weight(s); };
    route1 = c + integrate(Integrand{q, outer_hint, std::nullopt}, r, R, 1e-12).value;
  } else {
    auto q = [this](double s) { return F_direct(s) / weight(s); };
    route1 = c + integrate(Integrand{q, outer_hint, std::nullopt}, r, R, 1e-11).value;
  }

  auto q2 = [this, &m](double s) {
    return integrate_weighted_h(m, spec_.f, 0, s, 1e-12).value / weight(s);
  };
  const double route2 = c + integrate(Integrand{q2, outer_hint, std::nullopt}, r, R, 1e-11).value;

  if (std::fabs(route1 - route2) > 1e-8 * (1 + std::fabs(route1)))
    throw Error(ErrorCode::NoConvergence,
                "ball solution routes disagree: " + std::to_string(route1) + " vs " +
                    std::to_string(route2));
  return route1;
}

double RadialProblem::w_slope(double r) const {
  return 1.0 / (weight(r) * G(r));
}

WValue RadialProblem::w(double r, double c) const {
  if (!spec_.R0) throw Error(ErrorCode::Invalid, "w requires an annular problem");
  const double R0 = *spec_.R0;
  if (!(r > R0) || r >= spec_.manifold.S())
    throw Error(ErrorCode::Domain, "w needs R0 < r < S");
  ensure_cover(r);
  const double g = Gtab_->value(r);
  const double num = c + Htab_->value(r) - Ftab_->value(r) * g;
  return {num / (weight(r) * g), r - R0 < 1e-6 * R0};
}

double RadialProblem::u_annulus(double R, double c, double r) const {
  if (!spec_.R0) throw Error(ErrorCode::Invalid, "annular solution requires R0");
  const double R0 = *spec_.R0;
  if (!(r >= R0) || !(r <= R) || !(R < spec_.manifold.S()))
    throw Error(ErrorCode::Domain, "u_annulus needs R0 <= r <= R < S");
  ensure_cover(R);
  const double A = (c + Htab_->value(R)) / Gtab_->value(R);
  return A * Gtab_->value(r) - Htab_->value(r);
}

double RadialProblem::u_annulus_prime(double R, double c, double r) const {
  if (!spec_.R0) throw Error(ErrorCode::Invalid, "annular solution requires R0");
  const double R0 = *spec_.R0;
  if (!(r >= R0) || !(r <= R) || !(R < spec_.manifold.S()))
    throw Error(ErrorCode::Domain, "u_annulus needs R0 <= r <= R < S");
  ensure_cover(R);
  const double A = (c + Htab_->value(R)) / Gtab_->value(R);
  return (A - Ftab_->value(r)) / weight(r);
}

RadialProfile RadialProblem::ball_profile(double R, double c, int n) const {
  const Manifold& m = spec_.manifold;
  if (spec_.R0) throw Error(ErrorCode::Invalid, "ball profile requires a non-annular problem");
  if (!(R > 0) || R >= m.S()) throw Error(ErrorCode::Domain, "need 0 < R < S");
  if (n < 16) throw Error(ErrorCode::Invalid, "profile resolution too small");
  ensure_cover(R);

  // a source that is singular at 0 keeps the profile away from the origin
  const double r_min = alpha_f_ < -1e-3 ? 1e-3 * R : 0.0;

  RadialProfile p;
  p.R = R;
  p.c = c;
  p.r = graded_nodes(r_min, R, n, 1.5);
  p.u.resize(p.r.size());
  p.du.resize(p.r.size());
  auto q = [this](double s) { return Ftab_value(s) / weight(s); };  // = -v

  // slopes come from the flux form h^(N-1) u' = -int_0^r h^(N-1) f with the
  // cumulative integral accumulated segment by segment by direct quadrature
  std::vector<double> Fi(p.r.size());
  Fi[0] = p.r[0] == 0 ? 0.0 : F_direct(p.r[0]);
  for (size_t i = 1; i < p.r.size(); ++i)
    Fi[i] = Fi[i - 1] +
            integrate_weighted_h(m, spec_.f, p.r[i - 1], p.r[i], 1e-12).value;

  p.u.back() = c;
  p.du.back() = -Fi.back() / weight(R);
  for (size_t i = p.r.size() - 1; i-- > 0;) {
    std::optional<double> hint;
    if (p.r[i] == 0 && alpha_f_ < -1e-3) hint = 1 + alpha_f_;
    Integrand seg{q, hint, std::nullopt};
    p.u[i] = p.u[i + 1] + integrate(seg, p.r[i], p.r[i + 1], 1e-12).value;
    p.du[i] = p.r[i] == 0 ? 0.0 : -Fi[i] / weight(p.r[i]);
  }
  return p;
}

RadialProfile RadialProblem::annulus_profile(double R, double c, int n) const {
  if (!spec_.R0) throw Error(ErrorCode::Invalid, "annulus profile requires R0");
  const double R0 = *spec_.R0;
  if (!(R > R0) || R >= spec_.manifold.S())
    throw Error(ErrorCode::Domain, "need R0 < R < S");
  if (n < 16) throw Error(ErrorCode::Invalid, "profile resolution too small");
  ensure_cover(R);

  const double A = (c + Htab_->value(R)) / Gtab_->value(R);
  RadialProfile p;
  p.R = R;
  p.c = c;
  p.R0 = R0;
  p.r = graded_nodes(R0, R, n, 1.5);
  p.u.resize(p.r.size());
  p.du.resize(p.r.size());
  std::vector<double> Fi(p.r.size());
  Fi[0] = 0;  // the cumulative integral is based at R0
  for (size_t i = 1; i < p.r.size(); ++i)
    Fi[i] = Fi[i - 1] + integrate_weighted_h(spec_.manifold, spec_.f,
                                             p.r[i - 1], p.r[i], 1e-12)
                            .value;
  for (size_t i = 0; i < p.r.size(); ++i) {
    p.u[i] = A * Gtab_->value(p.r[i]) - Htab_->value(p.r[i]);
    p.du[i] = (A - Fi[i]) / weight(p.r[i]);
  }
  p.u.front() = 0;  // boundary conditions hold exactly by construction
  p.u.back() = c;
  return p;
}

double ode_residual(const RadialProfile& p, const RadialProblem& prob) {
  const Manifold& m = prob.manifold();
  const int N = m.dim();
  double worst = 0;
  for (size_t i = 0; i + 1 < p.r.size(); ++i) {
    const double w0 = ipow(m.h(p.r[i]), N - 1) * p.du[i];
    const double w1 = ipow(m.h(p.r[i + 1]), N - 1) * p.du[i + 1];
    const double seg =
        integrate_weighted_h(m, prob.spec().f, p.r[i], p.r[i + 1], 1e-12).value;
    worst = std::max(worst, std::fabs(w1 - w0 + seg));
  }
  return worst;
}

void write_profile_csv(const RadialProfile& p, std::ostream& out) {
  out << "r,u,u_prime\n";
  char buf[128];
  for (size_t i = 0; i < p.r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.r[i], p.u[i], p.du[i]);
    out << buf;
  }
}

void write_profile_csv(const RadialProfile& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path);
  write_profile_csv(p, out);
}

}  // namespace ovp
