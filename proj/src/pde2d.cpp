#include "pde2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "error.hpp"

namespace ovp {

namespace {

constexpr double kTwoPi = 6.28318530717958648;

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Csr {
  int n = 0;
  std::vector<int> ptr, col;
  std::vector<double> val;

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (int i = 0; i < n; ++i) {
      double acc = 0;
      for (int k = ptr[i]; k < ptr[i + 1]; ++k) acc += val[k] * x[col[k]];
      y[i] = acc;
    }
  }
};

Csr compress(const std::vector<std::map<int, double>>& rows) {
  Csr A;
  A.n = static_cast<int>(rows.size());
  A.ptr.resize(A.n + 1, 0);
  size_t nnz = 0;
  for (const auto& r : rows) nnz += r.size();
  A.col.reserve(nnz);
  A.val.reserve(nnz);
  for (int i = 0; i < A.n; ++i) {
    for (const auto& [c, v] : rows[i]) {
      A.col.push_back(c);
      A.val.push_back(v);
    }
    A.ptr[i + 1] = static_cast<int>(A.col.size());
  }
  return A;
}

double rel_residual(const Csr& A, const std::vector<double>& b,
                    const std::vector<double>& x, double bnorm,
                    std::vector<double>& scratch) {
  A.apply(x, scratch);
  double rr = 0;
  for (int i = 0; i < A.n; ++i) {
    double d = b[i] - scratch[i];
    rr += d * d;
  }
  return std::sqrt(rr) / bnorm;
}

// diagonally preconditioned conjugate gradients; records the relative
// residual trajectory, returns false when the tolerance was not reached
bool solve_cg(const Csr& A, const std::vector<double>& b,
              std::vector<double>& x, double tol, int max_iter,
              std::vector<double>& history, int& iterations) {
  const int n = A.n;
  std::vector<double> diag(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int k = A.ptr[i]; k < A.ptr[i + 1]; ++k)
      if (A.col[k] == i) diag[i] = A.val[k];

  double bnorm = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
  if (bnorm == 0) {
    std::fill(x.begin(), x.end(), 0.0);
    history.push_back(0.0);
    return true;
  }

  std::vector<double> r(b), z(n), p(n), Ap(n);
  A.apply(x, Ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
  for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);

  for (int it = 0; it < max_iter; ++it) {
    A.apply(p, Ap);
    double pAp = std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
    if (!(pAp > 0)) return false;  // lost positivity, let the fallback run
    double alpha = rz / pAp;
    for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
    double rnorm = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    double rel = rnorm / bnorm;
    if (it % 25 == 0) history.push_back(rel);
    iterations = it + 1;
    if (rel <= tol) {
      history.push_back(rel);
      return true;
    }
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return false;
}

bool solve_sor(const Csr& A, const std::vector<double>& b,
               std::vector<double>& x, double tol, int max_sweeps,
               std::vector<double>& history, int& iterations) {
  const int n = A.n;
  const double omega = 1.9;
  double bnorm = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
  if (bnorm == 0) bnorm = 1;
  std::vector<double> scratch(n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double sigma = 0, dii = 1;
      for (int k = A.ptr[i]; k < A.ptr[i + 1]; ++k) {
        if (A.col[k] == i)
          dii = A.val[k];
        else
          sigma += A.val[k] * x[A.col[k]];
      }
      x[i] += omega * ((b[i] - sigma) / dii - x[i]);
    }
    ++iterations;
    if (sweep % 20 == 19 || sweep == max_sweeps - 1) {
      double rel = rel_residual(A, b, x, bnorm, scratch);
      history.push_back(rel);
      if (rel <= tol) return true;
    }
  }
  return false;
}

[[noreturn]] void throw_no_convergence(const std::vector<double>& history) {
  std::ostringstream msg;
  msg << "2d solve did not reach tolerance; residual trail:";
  size_t start = history.size() > 8 ? history.size() - 8 : 0;
  for (size_t i = start; i < history.size(); ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, " %.3e", history[i]);
    msg << buf;
  }
  throw Error(ErrorCode::NoConvergence, msg.str());
}

}  // namespace

StarDomain StarDomain::ball(double R) {
  if (!(R > 0)) throw Error(ErrorCode::Invalid, "ball radius must be positive");
  StarDomain d;
  d.kind = Kind::Ball;
  d.rho = ScalarField::constant(R);
  return d;
}

StarDomain StarDomain::ball_shaped(ScalarField rho) {
  StarDomain d;
  d.kind = Kind::Ball;
  d.rho = std::move(rho);
  return d;
}

StarDomain StarDomain::annulus(double R0, double R) {
  if (!(R0 > 0) || !(R > R0))
    throw Error(ErrorCode::Invalid, "annulus requires 0 < R0 < R");
  StarDomain d;
  d.kind = Kind::Annular;
  d.rho = ScalarField::constant(R);
  d.R0 = R0;
  return d;
}

StarDomain StarDomain::annular_shaped(double R0, ScalarField rho) {
  if (!(R0 > 0))
    throw Error(ErrorCode::Invalid, "annular domain requires inner radius");
  StarDomain d;
  d.kind = Kind::Annular;
  d.rho = std::move(rho);
  d.R0 = R0;
  return d;
}

StarDomain StarDomain::ellipse(double a, double b) {
  if (!(b > 0) || a < b)
    throw Error(ErrorCode::Invalid, "ellipse requires a >= b > 0");
  StarDomain d;
  d.kind = Kind::Ellipse;
  d.a = a;
  d.b = b;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%.17g/sqrt(%.17g*cos(r)^2 + %.17g*sin(r)^2)",
                a * b, b * b, a * a);
  d.rho = ScalarField::parse(buf);
  return d;
}

Grid2DSolution solve_dirichlet(const Manifold& m, const StarDomain& dom,
                               const ScalarField& f, const ScalarField& g,
                               int n_s, int n_theta, double tol,
                               int max_iter) {
  if (m.dim() != 2)
    throw Error(ErrorCode::Invalid, "2d solver requires dimension 2");
  if (dom.kind == StarDomain::Kind::Ellipse &&
      m.kind() != Manifold::Kind::Euclidean)
    throw Error(ErrorCode::Invalid, "ellipse domains require the euclidean preset");
  if (n_s < 32 || n_theta < 64)
    throw Error(ErrorCode::Invalid, "resolution must be at least 32 x 64");
  const bool pole = dom.kind != StarDomain::Kind::Annular;
  const double R0 = pole ? 0.0 : dom.R0;
  if (!pole && !(R0 > 0))
    throw Error(ErrorCode::Invalid, "annular domain requires inner radius");
  if (std::abs(dom.rho(0.0) - dom.rho(kTwoPi)) > 1e-12)
    throw Error(ErrorCode::Invalid, "boundary radius is not 2*pi periodic");

  const int ns = n_s, nt = n_theta;
  const double ds = 1.0 / ns;
  const double dt = kTwoPi / nt;

  Grid2DSolution sol;
  sol.ns = ns;
  sol.ntheta = nt;
  sol.pole = pole;
  sol.R0 = R0;
  sol.theta.resize(nt);
  sol.rho.resize(nt);
  std::vector<double> ell(nt), dell(nt), gb(nt);
  for (int j = 0; j < nt; ++j) {
    double th = dt * j;
    sol.theta[j] = th;
    sol.rho[j] = dom.rho(th);
    if (!(sol.rho[j] > R0))
      throw Error(ErrorCode::Invalid,
                  "boundary radius must exceed the inner radius");
    if (sol.rho[j] >= m.S())
      throw Error(ErrorCode::Domain, "domain leaves the manifold's range");
    ell[j] = sol.rho[j] - R0;
    dell[j] = dom.rho.derivative(th);
    gb[j] = g(th);
  }

  // metric coefficient tables on the (s, theta) nodes; the equation is the
  // flux form d_s(A u_s + B u_t) + d_t(B u_s + C u_t) = -ell*h*f, which keeps
  // the assembled matrix symmetric
  auto at2 = [nt](std::vector<double>& v, int i, int j) -> double& {
    return v[size_t(i) * nt + size_t(j)];
  };
  std::vector<double> Ac((ns + 1) * nt), Bc((ns + 1) * nt), Cc((ns + 1) * nt),
      rnode((ns + 1) * nt), hnode((ns + 1) * nt);
  for (int i = 0; i <= ns; ++i) {
    double s = double(i) / ns;
    for (int j = 0; j < nt; ++j) {
      double r = R0 + s * ell[j];
      at2(rnode, i, j) = r;
      double h = m.h(r);
      at2(hnode, i, j) = h;
      if (i == 0 && pole) {
        // limits as r -> 0 with h(r) ~ r
        at2(Ac, i, j) = 0.0;
        at2(Bc, i, j) = -dell[j] / ell[j];
        at2(Cc, i, j) = 0.0;  // unused
      } else {
        at2(Ac, i, j) = (s * s * dell[j] * dell[j] + h * h) / (ell[j] * h);
        at2(Bc, i, j) = -s * dell[j] / h;
        at2(Cc, i, j) = ell[j] / h;
      }
    }
  }

  const int nun = pole ? 1 + (ns - 1) * nt : (ns - 1) * nt;
  auto idx = [&](int i, int j) {
    j = (j % nt + nt) % nt;
    return (pole ? 1 : 0) + (i - 1) * nt + j;
  };
  std::vector<std::map<int, double>> rows(nun);
  std::vector<double> rhs(nun, 0.0);
  const double cross = 1.0 / (4 * ds * dt);

  for (int i = 1; i < ns; ++i) {
    for (int j = 0; j < nt; ++j) {
      const int row = idx(i, j);
      const int jl = (j + nt - 1) % nt, jr = (j + 1) % nt;
      auto add = [&](int i2, int j2, double coef) {
        if (coef == 0) return;
        if (i2 == ns) {
          rhs[row] -= coef * gb[(j2 % nt + nt) % nt];
        } else if (i2 == 0) {
          if (pole)
            rows[row][0] += coef;
          // annular inner boundary holds u = 0: nothing to move
        } else {
          rows[row][idx(i2, j2)] += coef;
        }
      };
      double Asp = 0.5 * (at2(Ac, i, j) + at2(Ac, i + 1, j)) / (ds * ds);
      double Asm = 0.5 * (at2(Ac, i, j) + at2(Ac, i - 1, j)) / (ds * ds);
      double Ctp = 0.5 * (at2(Cc, i, j) + at2(Cc, i, jr)) / (dt * dt);
      double Ctm = 0.5 * (at2(Cc, i, j) + at2(Cc, i, jl)) / (dt * dt);
      // diagonal assembled from the same products as the neighbors so that
      // constants are annihilated exactly
      rows[row][row] += Asp;
      rows[row][row] += Asm;
      rows[row][row] += Ctp;
      rows[row][row] += Ctm;
      add(i + 1, j, -Asp);
      add(i - 1, j, -Asm);
      add(i, jr, -Ctp);
      add(i, jl, -Ctm);
      add(i + 1, jr, -(at2(Bc, i + 1, j) + at2(Bc, i, jr)) * cross);
      add(i - 1, jl, -(at2(Bc, i - 1, j) + at2(Bc, i, jl)) * cross);
      add(i + 1, jl, (at2(Bc, i + 1, j) + at2(Bc, i, jl)) * cross);
      add(i - 1, jr, (at2(Bc, i - 1, j) + at2(Bc, i, jr)) * cross);
      rhs[row] += ell[j] * at2(hnode, i, j) * f(at2(rnode, i, j));
    }
  }

  if (pole) {
    // flux balance over the pole cell; the couplings are the transposes of
    // the ring-1 entries, so the matrix is symmetric to the bit
    double diag = 0, load = 0;
    for (int j = 0; j < nt; ++j) {
      auto it = rows[idx(1, j)].find(0);
      double cj = it == rows[idx(1, j)].end() ? 0.0 : it->second;
      rows[0][idx(1, j)] = cj;
      diag -= cj;
      // Simpson for int_0^{ds/2} ell*h*f ds; the integrand vanishes at s=0
      double smid = 0.25 * ds, send = 0.5 * ds;
      double fm = ell[j] * m.h(smid * ell[j]) * f(smid * ell[j]);
      double fe = ell[j] * m.h(send * ell[j]) * f(send * ell[j]);
      load += (send / 6.0) * (4 * fm + fe);
    }
    rows[0][0] = diag;
    rhs[0] = load / ds;
  }

  Csr A = compress(rows);
  std::vector<double> x(nun, 0.0);
  int iters = 0;
  int cap = max_iter > 0 ? max_iter : 120 * (ns + nt);
  bool ok = solve_cg(A, rhs, x, tol, cap, sol.residual_history, iters);
  if (!ok) {
    sol.used_sor = true;
    ok = solve_sor(A, rhs, x, tol, cap, sol.residual_history, iters);
  }
  sol.iterations = iters;
  if (!ok) throw_no_convergence(sol.residual_history);

  sol.u.assign(size_t(ns + 1) * nt, 0.0);
  for (int j = 0; j < nt; ++j) {
    sol.u[size_t(0) * nt + j] = pole ? x[0] : 0.0;
    sol.u[size_t(ns) * nt + j] = gb[j];
  }
  for (int i = 1; i < ns; ++i)
    for (int j = 0; j < nt; ++j) sol.u[size_t(i) * nt + j] = x[idx(i, j)];

  // metric-normal boundary derivative: one-sided second-order slope in s,
  // tangential part from the Dirichlet data itself
  sol.flux.resize(nt);
  for (int j = 0; j < nt; ++j) {
    double us = (3 * sol.at(ns, j) - 4 * sol.at(ns - 1, j) + sol.at(ns - 2, j)) /
                (2 * ds);
    double ur = us / ell[j];
    double ut = g.derivative(sol.theta[j]) - dell[j] * ur;
    double h = at2(hnode, ns, j);
    sol.flux[j] =
        (ur - dell[j] * ut / (h * h)) / std::sqrt(1 + dell[j] * dell[j] / (h * h));
  }
  return sol;
}

const std::vector<double>& boundary_flux(const Grid2DSolution& sol) {
  return sol.flux;
}

double flux_at(const Grid2DSolution& sol, double theta) {
  const int nt = sol.ntheta;
  if (nt == 0) throw Error(ErrorCode::Invalid, "empty solution");
  double dt = kTwoPi / nt;
  double t = theta / dt;
  double fl = std::floor(t);
  int j1 = static_cast<int>(fl);
  double x = t - fl;
  auto wrap = [nt](int j) { return (j % nt + nt) % nt; };
  double p0 = sol.flux[wrap(j1 - 1)], p1 = sol.flux[wrap(j1)],
         p2 = sol.flux[wrap(j1 + 1)], p3 = sol.flux[wrap(j1 + 2)];
  // Catmull-Rom
  return p1 + 0.5 * x *
                  (p2 - p0 +
                   x * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                        x * (3 * (p1 - p2) + p3 - p0)));
}

double radial_equivalence(const Grid2DSolution& sol, const RadialProfile& p) {
  double rho0 = sol.rho[0];
  for (double r : sol.rho)
    if (std::abs(r - rho0) > 1e-9)
      throw Error(ErrorCode::Invalid,
                  "radial comparison requires a circular boundary");
  bool annular_profile = p.R0.has_value();
  if (annular_profile == sol.pole)
    throw Error(ErrorCode::Invalid, "domain kind mismatch");
  if (std::abs(rho0 - p.R) > 1e-6 ||
      (annular_profile && std::abs(*p.R0 - sol.R0) > 1e-6))
    throw Error(ErrorCode::Invalid, "domain radii mismatch");
  ScalarField tab = ScalarField::table(p.r, p.u);
  double lo = p.r.front(), hi = p.r.back();
  double worst = 0;
  for (int i = 0; i <= sol.ns; ++i)
    for (int j = 0; j < sol.ntheta; ++j) {
      double r = std::clamp(sol.r_of(i, j), lo, hi);
      worst = std::max(worst, std::abs(sol.at(i, j) - tab(r)));
    }
  return worst;
}

CounterexampleTable build_counterexample(double a, double b,
                                         const ScalarField& f, int n_s,
                                         int n_theta) {
  if (!(b > 0) || a < b)
    throw Error(ErrorCode::Invalid, "ellipse requires a >= b > 0");
  CounterexampleTable t;
  t.a = a;
  t.b = b;
  StarDomain dom = StarDomain::ellipse(a, b);
  Manifold m = Manifold::euclidean(2);
  t.solution =
      solve_dirichlet(m, dom, f, ScalarField::constant(0.0), n_s, n_theta);

  const int nr = a > b ? 41 : 1;
  for (int k = 0; k < nr; ++k) {
    double r = nr == 1 ? a : b + (a - b) * k / (nr - 1);
    std::vector<double> angles;
    if (a == b) {
      angles = {0.0};
    } else {
      double s2 = b * b * (a * a - r * r) / (r * r * (a * a - b * b));
      s2 = std::clamp(s2, 0.0, 1.0);
      double th = std::asin(std::sqrt(s2));
      for (double cand : {th, 3.14159265358979324 - th,
                          3.14159265358979324 + th, kTwoPi - th}) {
        double c = std::fmod(cand + kTwoPi, kTwoPi);
        bool dup = false;
        for (double seen : angles)
          if (std::abs(seen - c) < 1e-10 || std::abs(seen - c) > kTwoPi - 1e-10)
            dup = true;
        if (!dup) angles.push_back(c);
      }
    }
    double mn = 0, mx = 0, sum = 0;
    for (size_t q = 0; q < angles.size(); ++q) {
      double v = flux_at(t.solution, angles[q]);
      sum += v;
      mn = q == 0 ? v : std::min(mn, v);
      mx = q == 0 ? v : std::max(mx, v);
    }
    t.r.push_back(r);
    t.kappa.push_back(-sum / angles.size());
    t.mismatch.push_back(mx - mn);
    t.consistency = std::max(t.consistency, mx - mn);
  }
  return t;
}

void write_solution_csv(const Grid2DSolution& sol, std::ostream& out) {
  out << "theta,s,r,u\n";
  for (int j = 0; j < sol.ntheta; ++j)
    for (int i = 0; i <= sol.ns; ++i)
      out << num17(sol.theta[j]) << "," << num17(sol.s_of(i)) << ","
          << num17(sol.r_of(i, j)) << "," << num17(sol.at(i, j)) << "\n";
}

void write_flux_csv(const Grid2DSolution& sol, std::ostream& out) {
  out << "theta,r,u_nu\n";
  for (int j = 0; j < sol.ntheta; ++j)
    out << num17(sol.theta[j]) << "," << num17(sol.rho[j]) << ","
        << num17(sol.flux[j]) << "\n";
}

void write_counterexample_csv(const CounterexampleTable& t, std::ostream& out) {
  out << "r,kappa,mismatch\n";
  for (size_t k = 0; k < t.r.size(); ++k)
    out << num17(t.r[k]) << "," << num17(t.kappa[k]) << ","
        << num17(t.mismatch[k]) << "\n";
}

}  // namespace ovp
