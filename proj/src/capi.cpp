#include "ovpoisson.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "manifold.hpp"
#include "pde2d.hpp"
#include "radial.hpp"
#include "rigidity.hpp"
#include "scalar_field.hpp"

struct ovp_manifold {
  ovp::Manifold m;
};
struct ovp_field {
  ovp::ScalarField f;
};
struct ovp_problem {
  ovp::RadialProblem p;
};
struct ovp_profile {
  ovp::RadialProfile p;
};
struct ovp_report {
  ovp::RigidityReport r;
};
struct ovp_domain2d {
  ovp::StarDomain d;
};
struct ovp_solution2d {
  ovp::Grid2DSolution s;
};
struct ovp_ctable {
  ovp::CounterexampleTable t;
};

namespace {

thread_local std::string tl_error;
thread_local long tl_offset = -1;

int map_code(ovp::ErrorCode c) {
  switch (c) {
    case ovp::ErrorCode::Parse:
      return OVP_ERR_PARSE;
    case ovp::ErrorCode::Domain:
      return OVP_ERR_DOMAIN;
    case ovp::ErrorCode::Invalid:
      return OVP_ERR_INVALID;
    case ovp::ErrorCode::NoConvergence:
      return OVP_ERR_NO_CONVERGENCE;
    case ovp::ErrorCode::Io:
      return OVP_ERR_IO;
  }
  return OVP_ERR_INVALID;
}

template <class Fn>
int wrap(Fn&& fn) noexcept {
  tl_error.clear();
  tl_offset = -1;
  try {
    fn();
    return OVP_OK;
  } catch (const ovp::Error& e) {
    tl_error = e.what();
    tl_offset = e.offset();
    return map_code(e.code());
  } catch (const std::exception& e) {
    tl_error = e.what();
    return OVP_ERR_INVALID;
  } catch (...) {
    tl_error = "unknown failure";
    return OVP_ERR_INVALID;
  }
}

int null_arg() noexcept {
  tl_error = "required pointer argument is NULL";
  tl_offset = -1;
  return OVP_ERR_NULL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ovp_version(void) { return "1.0.0"; }

const char* ovp_last_error(void) { return tl_error.c_str(); }

long ovp_last_error_offset(void) { return tl_offset; }

void ovp_string_free(char* s) { std::free(s); }

/* ---- manifolds ------------------------------------------------------- */

int ovp_manifold_euclidean(int dim, ovp_manifold** out) {
  if (!out) return null_arg();
  return wrap([&] { *out = new ovp_manifold{ovp::Manifold::euclidean(dim)}; });
}

int ovp_manifold_hyperbolic(int dim, ovp_manifold** out) {
  if (!out) return null_arg();
  return wrap([&] { *out = new ovp_manifold{ovp::Manifold::hyperbolic(dim)}; });
}

int ovp_manifold_spherical(int dim, ovp_manifold** out) {
  if (!out) return null_arg();
  return wrap([&] { *out = new ovp_manifold{ovp::Manifold::spherical(dim)}; });
}

int ovp_manifold_custom(const char* h_expr, double limit, int dim,
                        ovp_manifold** out) {
  if (!h_expr || !out) return null_arg();
  return wrap(
      [&] { *out = new ovp_manifold{ovp::Manifold::custom(h_expr, limit, dim)}; });
}

void ovp_manifold_free(ovp_manifold* m) { delete m; }

int ovp_manifold_dim(const ovp_manifold* m, int* out) {
  if (!m || !out) return null_arg();
  return wrap([&] { *out = m->m.dim(); });
}

int ovp_manifold_limit(const ovp_manifold* m, double* out) {
  if (!m || !out) return null_arg();
  return wrap([&] { *out = m->m.S(); });
}

int ovp_manifold_h(const ovp_manifold* m, double r, double* out) {
  if (!m || !out) return null_arg();
  return wrap([&] { *out = m->m.h(r); });
}

int ovp_manifold_h_prime(const ovp_manifold* m, double r, double* out) {
  if (!m || !out) return null_arg();
  return wrap([&] { *out = m->m.h_prime(r); });
}

/* ---- scalar fields --------------------------------------------------- */

int ovp_field_parse(const char* expr, ovp_field** out) {
  if (!expr || !out) return null_arg();
  return wrap([&] { *out = new ovp_field{ovp::ScalarField::parse(expr)}; });
}

int ovp_field_constant(double value, ovp_field** out) {
  if (!out) return null_arg();
  return wrap([&] { *out = new ovp_field{ovp::ScalarField::constant(value)}; });
}

int ovp_field_table(const double* r, const double* y, size_t n,
                    ovp_field** out) {
  if (!r || !y || !out) return null_arg();
  return wrap([&] {
    std::vector<double> rv(r, r + n), yv(y, y + n);
    *out = new ovp_field{ovp::ScalarField::table(std::move(rv), std::move(yv))};
  });
}

int ovp_field_eval(const ovp_field* f, double r, double* out) {
  if (!f || !out) return null_arg();
  return wrap([&] { *out = f->f(r); });
}

void ovp_field_free(ovp_field* f) { delete f; }

/* ---- radial problems ------------------------------------------------- */

int ovp_problem_create(const ovp_manifold* m, const ovp_field* f,
                       const ovp_field* phi, const ovp_field* kappa,
                       double r_lo, double r_hi, const double* R0,
                       int interior_sphere, ovp_problem** out) {
  if (!m || !f || !phi || !kappa || !out) return null_arg();
  return wrap([&] {
    std::optional<double> inner;
    if (R0) inner = *R0;
    ovp::OverdeterminedSpec spec{m->m,  f->f,  phi->f,
                                 kappa->f, r_lo, r_hi,
                                 inner, interior_sphere != 0};
    *out = new ovp_problem{ovp::RadialProblem(std::move(spec))};
  });
}

void ovp_problem_free(ovp_problem* p) { delete p; }

int ovp_problem_v(const ovp_problem* p, double r, double* out) {
  if (!p || !out) return null_arg();
  return wrap([&] { *out = p->p.v(r); });
}

int ovp_problem_w(const ovp_problem* p, double r, double c, double* out) {
  if (!p || !out) return null_arg();
  return wrap([&] { *out = p->p.w(r, c).value; });
}

int ovp_ball_profile(const ovp_problem* p, double R, double c, int n,
                     ovp_profile** out) {
  if (!p || !out) return null_arg();
  return wrap([&] {
    *out = new ovp_profile{p->p.ball_profile(R, c, n > 0 ? n : 512)};
  });
}

int ovp_annulus_profile(const ovp_problem* p, double R, double c, int n,
                        ovp_profile** out) {
  if (!p || !out) return null_arg();
  return wrap([&] {
    *out = new ovp_profile{p->p.annulus_profile(R, c, n > 0 ? n : 512)};
  });
}

void ovp_profile_free(ovp_profile* p) { delete p; }

int ovp_profile_size(const ovp_profile* p, size_t* out) {
  if (!p || !out) return null_arg();
  return wrap([&] { *out = p->p.r.size(); });
}

int ovp_profile_data(const ovp_profile* p, const double** r, const double** u,
                     const double** du) {
  if (!p || !r || !u || !du) return null_arg();
  return wrap([&] {
    *r = p->p.r.data();
    *u = p->p.u.data();
    *du = p->p.du.data();
  });
}

int ovp_profile_ode_residual(const ovp_profile* p, const ovp_problem* prob,
                             double* out) {
  if (!p || !prob || !out) return null_arg();
  return wrap([&] { *out = ovp::ode_residual(p->p, prob->p); });
}

int ovp_profile_csv(const ovp_profile* p, char** out) {
  if (!p || !out) return null_arg();
  return wrap([&] {
    std::ostringstream os;
    ovp::write_profile_csv(p->p, os);
    *out = dup_string(os.str());
  });
}

/* ---- classification -------------------------------------------------- */

int ovp_serrin_check(const ovp_problem* p, int grid_n, ovp_report** out) {
  if (!p || !out) return null_arg();
  return wrap([&] {
    *out = new ovp_report{ovp::serrin_check(p->p, grid_n > 0 ? grid_n : 2001)};
  });
}

int ovp_bernoulli_check(const ovp_problem* p, int grid_n, ovp_report** out) {
  if (!p || !out) return null_arg();
  return wrap([&] {
    *out =
        new ovp_report{ovp::bernoulli_check(p->p, grid_n > 0 ? grid_n : 2001)};
  });
}

void ovp_report_free(ovp_report* r) { delete r; }

int ovp_report_verdict(const ovp_report* r, int* out) {
  if (!r || !out) return null_arg();
  return wrap([&] { *out = static_cast<int>(r->r.verdict); });
}

int ovp_report_text(const ovp_report* r, char** out) {
  if (!r || !out) return null_arg();
  return wrap([&] { *out = dup_string(ovp::report_text(r->r)); });
}

int ovp_report_json(const ovp_report* r, char** out) {
  if (!r || !out) return null_arg();
  return wrap([&] { *out = dup_string(ovp::report_json(r->r)); });
}

int ovp_report_defect_csv(const ovp_report* r, char** out) {
  if (!r || !out) return null_arg();
  return wrap([&] {
    std::ostringstream os;
    ovp::write_defect_csv(r->r, os);
    *out = dup_string(os.str());
  });
}

/* ---- direct 2d solver ------------------------------------------------ */

int ovp_domain_ball(double R, ovp_domain2d** out) {
  if (!out) return null_arg();
  return wrap([&] { *out = new ovp_domain2d{ovp::StarDomain::ball(R)}; });
}

int ovp_domain_ball_shaped(const ovp_field* rho, ovp_domain2d** out) {
  if (!rho || !out) return null_arg();
  return wrap(
      [&] { *out = new ovp_domain2d{ovp::StarDomain::ball_shaped(rho->f)}; });
}

int ovp_domain_annulus(double R0, double R, ovp_domain2d** out) {
  if (!out) return null_arg();
  return wrap([&] { *out = new ovp_domain2d{ovp::StarDomain::annulus(R0, R)}; });
}

int ovp_domain_annular_shaped(double R0, const ovp_field* rho,
                              ovp_domain2d** out) {
  if (!rho || !out) return null_arg();
  return wrap([&] {
    *out = new ovp_domain2d{ovp::StarDomain::annular_shaped(R0, rho->f)};
  });
}

int ovp_domain_ellipse(double a, double b, ovp_domain2d** out) {
  if (!out) return null_arg();
  return wrap([&] { *out = new ovp_domain2d{ovp::StarDomain::ellipse(a, b)}; });
}

void ovp_domain_free(ovp_domain2d* d) { delete d; }

int ovp_solve_dirichlet(const ovp_manifold* m, const ovp_domain2d* dom,
                        const ovp_field* f, const ovp_field* g, int n_s,
                        int n_theta, double tol, int max_iter,
                        ovp_solution2d** out) {
  if (!m || !dom || !f || !g || !out) return null_arg();
  return wrap([&] {
    *out = new ovp_solution2d{
        ovp::solve_dirichlet(m->m, dom->d, f->f, g->f, n_s, n_theta,
                             tol > 0 ? tol : 1e-10, max_iter > 0 ? max_iter : 0)};
  });
}

void ovp_solution_free(ovp_solution2d* s) { delete s; }

int ovp_solution_dims(const ovp_solution2d* s, int* n_s, int* n_theta) {
  if (!s || !n_s || !n_theta) return null_arg();
  return wrap([&] {
    *n_s = s->s.ns;
    *n_theta = s->s.ntheta;
  });
}

int ovp_solution_value(const ovp_solution2d* s, int i, int j, double* out) {
  if (!s || !out) return null_arg();
  return wrap([&] {
    if (i < 0 || i > s->s.ns || j < 0 || j >= s->s.ntheta)
      throw ovp::Error(ovp::ErrorCode::Invalid, "node index out of range");
    *out = s->s.at(i, j);
  });
}

int ovp_solution_flux_data(const ovp_solution2d* s, const double** flux,
                           size_t* n) {
  if (!s || !flux || !n) return null_arg();
  return wrap([&] {
    *flux = s->s.flux.data();
    *n = s->s.flux.size();
  });
}

int ovp_flux_at(const ovp_solution2d* s, double theta, double* out) {
  if (!s || !out) return null_arg();
  return wrap([&] { *out = ovp::flux_at(s->s, theta); });
}

int ovp_solution_stats(const ovp_solution2d* s, int* iterations, int* used_sor,
                       double* final_residual) {
  if (!s || !iterations || !used_sor || !final_residual) return null_arg();
  return wrap([&] {
    *iterations = s->s.iterations;
    *used_sor = s->s.used_sor ? 1 : 0;
    *final_residual =
        s->s.residual_history.empty() ? 0.0 : s->s.residual_history.back();
  });
}

int ovp_solution_csv(const ovp_solution2d* s, char** out) {
  if (!s || !out) return null_arg();
  return wrap([&] {
    std::ostringstream os;
    ovp::write_solution_csv(s->s, os);
    *out = dup_string(os.str());
  });
}

int ovp_solution_flux_csv(const ovp_solution2d* s, char** out) {
  if (!s || !out) return null_arg();
  return wrap([&] {
    std::ostringstream os;
    ovp::write_flux_csv(s->s, os);
    *out = dup_string(os.str());
  });
}

int ovp_radial_equivalence(const ovp_solution2d* s, const ovp_profile* p,
                           double* out) {
  if (!s || !p || !out) return null_arg();
  return wrap([&] { *out = ovp::radial_equivalence(s->s, p->p); });
}

/* ---- boundary slope tables ------------------------------------------- */

int ovp_counterexample_build(double a, double b, const ovp_field* f, int n_s,
                             int n_theta, ovp_ctable** out) {
  if (!f || !out) return null_arg();
  return wrap([&] {
    *out = new ovp_ctable{ovp::build_counterexample(a, b, f->f, n_s, n_theta)};
  });
}

void ovp_ctable_free(ovp_ctable* t) { delete t; }

int ovp_ctable_size(const ovp_ctable* t, size_t* out) {
  if (!t || !out) return null_arg();
  return wrap([&] { *out = t->t.r.size(); });
}

int ovp_ctable_data(const ovp_ctable* t, const double** r,
                    const double** kappa, const double** mismatch) {
  if (!t || !r || !kappa || !mismatch) return null_arg();
  return wrap([&] {
    *r = t->t.r.data();
    *kappa = t->t.kappa.data();
    *mismatch = t->t.mismatch.data();
  });
}

int ovp_ctable_consistency(const ovp_ctable* t, double* out) {
  if (!t || !out) return null_arg();
  return wrap([&] { *out = t->t.consistency; });
}

int ovp_ctable_csv(const ovp_ctable* t, char** out) {
  if (!t || !out) return null_arg();
  return wrap([&] {
    std::ostringstream os;
    ovp::write_counterexample_csv(t->t, os);
    *out = dup_string(os.str());
  });
}

int ovp_ctable_solution_csv(const ovp_ctable* t, char** out) {
  if (!t || !out) return null_arg();
  return wrap([&] {
    std::ostringstream os;
    ovp::write_solution_csv(t->t.solution, os);
    *out = dup_string(os.str());
  });
}

int ovp_ctable_flux_csv(const ovp_ctable* t, char** out) {
  if (!t || !out) return null_arg();
  return wrap([&] {
    std::ostringstream os;
    ovp::write_flux_csv(t->t.solution, os);
    *out = dup_string(os.str());
  });
}

int ovp_ctable_solution_stats(const ovp_ctable* t, int* iterations,
                              int* used_sor, double* final_residual) {
  if (!t || !iterations || !used_sor || !final_residual) return null_arg();
  return wrap([&] {
    *iterations = t->t.solution.iterations;
    *used_sor = t->t.solution.used_sor ? 1 : 0;
    *final_residual = t->t.solution.residual_history.empty()
                          ? 0.0
                          : t->t.solution.residual_history.back();
  });
}

} /* extern "C" */
