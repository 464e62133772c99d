#include "rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace ovp {

namespace {

using nlohmann::ordered_json;

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// tolerances scale with the local magnitude of the compared quantities; the
// slope function blows up like 1/G near the inner boundary and absolute
// thresholds would misread quadrature noise there
double local_scale(double a, double b) {
  return 1 + std::abs(a) + std::abs(b);
}

double bisect_zero(const std::function<double(double)>& fn, double a, double b,
                   double fa) {
  for (int iter = 0; iter < 80 && b - a > 1e-10; ++iter) {
    double mid = 0.5 * (a + b);
    double fm = fn(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (fa > 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

RigidityReport classify(const RadialProblem& prob, bool annular, int grid_n) {
  const OverdeterminedSpec& sp = prob.spec();
  if (annular && !sp.R0)
    throw Error(ErrorCode::Invalid, "annular check requires R0");
  if (!annular && sp.R0)
    throw Error(ErrorCode::Invalid, "ball check requires a spec without R0");
  if (grid_n < 16) throw Error(ErrorCode::Invalid, "grid resolution too small");

  RigidityReport rep;
  rep.problem_kind = annular ? "bernoulli" : "serrin";

  double lo = sp.r_lo, hi = sp.r_hi;
  if (!annular && lo <= 0) {
    lo = 1e-3 * hi;
    rep.notes.push_back(
        "grid starts at 1e-3 * r_hi; the open left endpoint is not sampled");
  } else if (annular && lo <= *sp.R0) {
    lo = *sp.R0 + 1e-3 * (hi - *sp.R0);
    rep.notes.push_back(
        "grid starts strictly inside the annulus; w is singular at R0");
  }
  rep.grid_lo = lo;
  rep.grid_hi = hi;

  auto lhs_at = [&](double r) {
    return annular ? prob.w(r, sp.phi(r)).value : prob.v(r);
  };
  auto defect_at = [&](double r) { return lhs_at(r) - sp.kappa(r); };

  const int n = grid_n;
  RigidityGrid& g = rep.grid;
  g.r.resize(n);
  g.lhs.resize(n);
  g.kappa.resize(n);
  g.defect.resize(n);
  g.hypothesis_gap.resize(n);
  for (int i = 0; i < n; ++i) {
    double r = lo + (hi - lo) * i / (n - 1);
    if (i == n - 1) r = hi;
    g.r[i] = r;
    g.lhs[i] = lhs_at(r);
    g.kappa[i] = sp.kappa(r);
    g.defect[i] = g.lhs[i] - g.kappa[i];
    g.hypothesis_gap[i] = sp.phi.derivative(r) - g.lhs[i];
  }

  // hypothesis: phi' - lhs >= 0, strict when clear of the noise floor
  rep.hypothesis_holds = true;
  rep.hypothesis_strict = true;
  for (int i = 0; i < n; ++i) {
    double scale = local_scale(sp.phi.derivative(g.r[i]), g.lhs[i]);
    if (g.hypothesis_gap[i] < -1e-10 * scale) {
      if (rep.hypothesis_holds)
        rep.witnesses.push_back({"hypothesis", g.r[i], g.hypothesis_gap[i]});
      rep.hypothesis_holds = false;
    }
    if (g.hypothesis_gap[i] <= 1e-9 * scale) rep.hypothesis_strict = false;
  }
  if (!rep.hypothesis_holds) rep.hypothesis_strict = false;

  // zeros of the defect: touch nodes plus bracketed sign changes
  std::vector<bool> touch(n, false);
  for (int i = 0; i < n; ++i)
    touch[i] = std::abs(g.defect[i]) <= 1e-9 * local_scale(g.lhs[i], g.kappa[i]);
  std::vector<DefectZero> zeros;
  for (int i = 0; i < n; ++i)
    if (touch[i]) zeros.push_back({g.r[i], true});
  for (int i = 0; i + 1 < n; ++i) {
    if (touch[i] || touch[i + 1]) continue;
    if ((g.defect[i] > 0) != (g.defect[i + 1] > 0)) {
      double root = bisect_zero(defect_at, g.r[i], g.r[i + 1], g.defect[i]);
      zeros.push_back({root, false});
    }
  }
  std::sort(zeros.begin(), zeros.end(),
            [](const DefectZero& a, const DefectZero& b) { return a.r < b.r; });
  const double merge_tol = 1e-10 * (hi - lo);
  for (const DefectZero& z : zeros) {
    if (rep.zeros.empty() || z.r - rep.zeros.back().r > merge_tol)
      rep.zeros.push_back(z);
  }

  // sign conditions relative to the zero set; vacuously true without zeros
  rep.cond1 = true;
  rep.cond2 = true;
  if (!rep.zeros.empty()) {
    double z_min = rep.zeros.front().r, z_max = rep.zeros.back().r;
    for (int i = 0; i < n; ++i) {
      double slack = 1e-9 * local_scale(g.lhs[i], g.kappa[i]);
      if (g.r[i] < z_max - merge_tol && g.defect[i] > slack) {
        if (rep.cond1) rep.witnesses.push_back({"cond1", g.r[i], g.defect[i]});
        rep.cond1 = false;
      }
      if (g.r[i] > z_min + merge_tol && g.defect[i] < -slack) {
        if (rep.cond2) rep.witnesses.push_back({"cond2", g.r[i], g.defect[i]});
        rep.cond2 = false;
      }
    }
  }

  // monotonicity of the defect
  bool noninc = true, nondec = true;
  double break_r = g.r[0], break_v = 0;
  for (int i = 0; i + 1 < n; ++i) {
    double slack = 1e-10 * std::max(local_scale(g.lhs[i], g.kappa[i]),
                                    local_scale(g.lhs[i + 1], g.kappa[i + 1]));
    double step = g.defect[i + 1] - g.defect[i];
    if (step > slack && noninc) {
      noninc = false;
      if (!nondec) break_r = g.r[i + 1], break_v = step;
    }
    if (step < -slack && nondec) {
      nondec = false;
      if (!noninc) break_r = g.r[i + 1], break_v = step;
    }
  }
  rep.monotone_d = noninc   ? Monotone::Nonincreasing
                   : nondec ? Monotone::Nondecreasing
                            : Monotone::None;
  if (rep.monotone_d == Monotone::None)
    rep.witnesses.push_back({"monotone_d", break_r, break_v});

  // kappa bounded away from zero on the whole interval
  double kmax = 0;
  for (int i = 0; i < n; ++i) kmax = std::max(kmax, std::abs(g.kappa[i]));
  double kthresh = 1e-12 * (1 + kmax);
  rep.kappa_nonvanishing = true;
  for (int i = 0; i < n && rep.kappa_nonvanishing; ++i) {
    bool flips = i + 1 < n && g.kappa[i] * g.kappa[i + 1] < 0;
    if (std::abs(g.kappa[i]) <= kthresh || flips) {
      rep.witnesses.push_back({"kappa_nonzero", g.r[i], g.kappa[i]});
      rep.kappa_nonvanishing = false;
    }
  }

  // source nondegeneracy: the weighted primitive (ball) or f itself (annulus)
  // must not vanish on >= 3 consecutive nodes
  {
    int run = 0;
    rep.f_nondegenerate = true;
    for (int i = 0; i < n; ++i) {
      double a = annular ? sp.f(g.r[i]) : prob.F(g.r[i]);
      run = std::abs(a) < 1e-12 ? run + 1 : 0;
      if (run >= 3) {
        if (rep.f_nondegenerate)
          rep.witnesses.push_back({"f_nondegenerate", g.r[i - 2], a});
        rep.f_nondegenerate = false;
      }
    }
  }

  // plateau: defect vanishes along a proper subinterval only
  {
    int run = 0, best = 0, touched = 0;
    for (int i = 0; i < n; ++i) {
      run = touch[i] ? run + 1 : 0;
      best = std::max(best, run);
      touched += touch[i];
    }
    rep.defect_plateau = best >= 3 && touched < n;
  }

  if (!rep.hypothesis_holds) {
    rep.verdict = Verdict::HypothesisFails;
    return rep;
  }
  if (rep.zeros.empty()) {
    rep.verdict = Verdict::Unsolvable;
    return rep;
  }
  bool radial = rep.cond1 || (rep.cond2 && sp.interior_sphere);
  if (!radial) {
    rep.verdict = Verdict::Inconclusive;
    if (rep.cond2 && !sp.interior_sphere)
      rep.notes.push_back(
          "cond2 holds but the interior-sphere property was not declared; "
          "radial conclusion withheld");
    return rep;
  }
  if (!rep.cond1 && rep.cond2 && sp.interior_sphere) {
    rep.interior_sphere_assumed = true;
    rep.notes.push_back(
        "radial conclusion rests on the declared interior-sphere property; "
        "the flag is not verified here");
  }
  if (rep.hypothesis_strict) {
    rep.verdict = Verdict::RadialAndBall;
  } else if (rep.monotone_d != Monotone::None &&
             (rep.kappa_nonvanishing || rep.f_nondegenerate)) {
    if (rep.defect_plateau) {
      rep.verdict = Verdict::Inconclusive;
      rep.notes.push_back(
          "defect vanishes on a proper subinterval; the ball conclusion via "
          "monotonicity is not applied there");
    } else {
      rep.verdict = Verdict::RadialAndBall;
    }
  } else {
    rep.verdict = Verdict::RadialOnly;
  }
  return rep;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::RadialAndBall:
      return "RadialAndBall";
    case Verdict::RadialOnly:
      return "RadialOnly";
    case Verdict::Inconclusive:
      return "Inconclusive";
    case Verdict::Unsolvable:
      return "Unsolvable";
    case Verdict::HypothesisFails:
      return "HypothesisFails";
  }
  return "?";
}

const char* monotone_name(Monotone m) {
  switch (m) {
    case Monotone::Nonincreasing:
      return "nonincreasing";
    case Monotone::Nondecreasing:
      return "nondecreasing";
    case Monotone::None:
      return "none";
  }
  return "?";
}

RigidityReport serrin_check(const RadialProblem& prob, int grid_n) {
  return classify(prob, false, grid_n);
}

RigidityReport bernoulli_check(const RadialProblem& prob, int grid_n) {
  return classify(prob, true, grid_n);
}

QConditionReport q_condition_check(const RadialProblem& prob, int grid_n) {
  const OverdeterminedSpec& sp = prob.spec();
  if (!sp.R0) throw Error(ErrorCode::Invalid, "q condition requires R0");
  if (grid_n < 16) throw Error(ErrorCode::Invalid, "grid resolution too small");
  const Manifold& m = prob.manifold();
  const int N = m.dim();

  double lo = sp.r_lo, hi = sp.r_hi;
  if (lo <= *sp.R0) lo = *sp.R0 + 1e-3 * (hi - *sp.R0);

  QConditionReport rep;
  std::vector<double> r(grid_n), q(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    r[i] = lo + (hi - lo) * i / (grid_n - 1);
    if (i == grid_n - 1) r[i] = hi;
    q[i] = std::pow(m.h(r[i]), N - 1) * sp.kappa(r[i]) + prob.F(r[i]);
  }
  double qmax = 0;
  for (double qi : q) qmax = std::max(qmax, std::abs(qi));
  double slack = 1e-10 * (1 + qmax);
  rep.pass = true;
  for (int i = 0; i + 1 < grid_n; ++i) {
    if (q[i + 1] > q[i] + slack) {
      rep.pass = false;
      rep.r_before = r[i];
      rep.r_after = r[i + 1];
      rep.q_before = q[i];
      rep.q_after = q[i + 1];
      break;
    }
  }

  rep.derivative_checked = sp.kappa.symbolic();
  if (rep.derivative_checked) {
    rep.derivative_pass = true;
    for (int i = 0; i < grid_n; ++i) {
      double h = m.h(r[i]), hp = m.h_prime(r[i]);
      double k = sp.kappa(r[i]), kp = sp.kappa.derivative(r[i]);
      double lhs = -((N - 1) * std::pow(h, N - 2) * hp * k +
                     std::pow(h, N - 1) * kp);
      double rhs = std::pow(h, N - 1) * sp.f(r[i]);
      if (lhs < rhs - 1e-10 * (1 + std::abs(rhs))) {
        rep.derivative_pass = false;
        rep.derivative_bad_r = r[i];
        break;
      }
    }
  }
  return rep;
}

ComparisonReport comparison_corollary_check(const RadialProblem& prob, double c,
                                            double u_min, int grid_n) {
  const OverdeterminedSpec& sp = prob.spec();
  if (!sp.R0) throw Error(ErrorCode::Invalid, "comparison check requires R0");
  if (grid_n < 16) throw Error(ErrorCode::Invalid, "grid resolution too small");
  const Manifold& m = prob.manifold();
  const int N = m.dim();

  double lo = sp.r_lo, hi = sp.r_hi;
  if (lo <= *sp.R0) lo = *sp.R0 + 1e-3 * (hi - *sp.R0);

  ComparisonReport rep;
  rep.derivative_inequality = true;
  rep.f_nonpositive = true;
  std::vector<double> rg(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    double r = lo + (hi - lo) * i / (grid_n - 1);
    if (i == grid_n - 1) r = hi;
    rg[i] = r;
    double fi = sp.f(r);
    if (rep.f_nonpositive && fi > 1e-12) {
      rep.witnesses.push_back({"f_nonpositive", r, fi});
      rep.f_nonpositive = false;
    }
  }
  if (sp.kappa.symbolic()) {
    for (double r : rg) {
      double h = m.h(r), hp = m.h_prime(r);
      double lhs = -((N - 1) * std::pow(h, N - 2) * hp * sp.kappa(r) +
                     std::pow(h, N - 1) * sp.kappa.derivative(r));
      double rhs = std::pow(h, N - 1) * sp.f(r);
      if (lhs < rhs - 1e-10 * (1 + std::abs(rhs))) {
        rep.witnesses.push_back({"derivative_inequality", r, lhs - rhs});
        rep.derivative_inequality = false;
        break;
      }
    }
  } else {
    // sampled kappa carries only an interpolated derivative; check the
    // equivalent cumulative form instead, h^(N-1) kappa + F non-increasing
    std::vector<double> q(grid_n);
    double qmax = 0;
    for (int i = 0; i < grid_n; ++i) {
      q[i] = std::pow(m.h(rg[i]), N - 1) * sp.kappa(rg[i]) + prob.F(rg[i]);
      qmax = std::max(qmax, std::abs(q[i]));
    }
    double slack = 1e-10 * (1 + qmax);
    for (int i = 0; i + 1 < grid_n; ++i) {
      if (q[i + 1] > q[i] + slack) {
        rep.witnesses.push_back(
            {"derivative_inequality", rg[i + 1], q[i + 1] - q[i]});
        rep.derivative_inequality = false;
        break;
      }
    }
  }
  rep.c_nonpositive = c <= 0;
  rep.u_min_ok = u_min >= c - 1e-12;
  rep.applies = rep.derivative_inequality && rep.f_nonpositive &&
                rep.c_nonpositive && rep.u_min_ok;
  rep.ball = rep.applies && c < 0;
  return rep;
}

static const char* bool_text(bool b) { return b ? "true" : "false"; }

std::string report_text(const RigidityReport& rep) {
  std::ostringstream out;
  out << "problem_kind = " << rep.problem_kind << "\n";
  out << "verdict = " << verdict_name(rep.verdict) << "\n";
  out << "verdict_code = " << static_cast<int>(rep.verdict) << "\n";
  out << "hypothesis_holds = " << bool_text(rep.hypothesis_holds) << "\n";
  out << "hypothesis_strict = " << bool_text(rep.hypothesis_strict) << "\n";
  out << "defect_zero_count = " << rep.zeros.size() << "\n";
  out << "defect_zeros = [";
  const size_t cap = 10;
  for (size_t i = 0; i < rep.zeros.size() && i < cap; ++i) {
    if (i) out << ", ";
    out << num17(rep.zeros[i].r);
    if (rep.zeros[i].touch) out << "*";
  }
  if (rep.zeros.size() > cap) out << ", ...";
  out << "]\n";
  out << "cond1 = " << bool_text(rep.cond1) << "\n";
  out << "cond2 = " << bool_text(rep.cond2) << "\n";
  out << "monotone_d = " << monotone_name(rep.monotone_d) << "\n";
  out << "kappa_nonvanishing = " << bool_text(rep.kappa_nonvanishing) << "\n";
  out << "f_nondegenerate = " << bool_text(rep.f_nondegenerate) << "\n";
  out << "defect_plateau = " << bool_text(rep.defect_plateau) << "\n";
  out << "interior_sphere_assumed = " << bool_text(rep.interior_sphere_assumed)
      << "\n";
  out << "grid_lo = " << num17(rep.grid_lo) << "\n";
  out << "grid_hi = " << num17(rep.grid_hi) << "\n";
  out << "grid_n = " << rep.grid.r.size() << "\n";
  for (const Witness& w : rep.witnesses) {
    out << "witness = " << w.condition << " at r = " << num17(w.r)
        << " (value = " << num17(w.value) << ")\n";
  }
  for (const std::string& note : rep.notes) out << "note = " << note << "\n";
  return out.str();
}

std::string report_json(const RigidityReport& rep) {
  ordered_json j;
  j["problem_kind"] = rep.problem_kind;
  j["verdict"] = verdict_name(rep.verdict);
  j["verdict_code"] = static_cast<int>(rep.verdict);
  j["hypothesis_holds"] = rep.hypothesis_holds;
  j["hypothesis_strict"] = rep.hypothesis_strict;
  ordered_json zeros = ordered_json::array();
  for (const DefectZero& z : rep.zeros)
    zeros.push_back(ordered_json{{"r", z.r}, {"touch", z.touch}});
  j["defect_zeros"] = std::move(zeros);
  j["cond1"] = rep.cond1;
  j["cond2"] = rep.cond2;
  j["monotone_d"] = monotone_name(rep.monotone_d);
  j["kappa_nonvanishing"] = rep.kappa_nonvanishing;
  j["f_nondegenerate"] = rep.f_nondegenerate;
  j["defect_plateau"] = rep.defect_plateau;
  j["interior_sphere_assumed"] = rep.interior_sphere_assumed;
  ordered_json ws = ordered_json::array();
  for (const Witness& w : rep.witnesses)
    ws.push_back(ordered_json{
        {"condition", w.condition}, {"r", w.r}, {"value", w.value}});
  j["witnesses"] = std::move(ws);
  j["notes"] = rep.notes;
  j["grid"] = ordered_json{{"lo", rep.grid_lo},
                           {"hi", rep.grid_hi},
                           {"n", rep.grid.r.size()}};
  return j.dump(2) + "\n";
}

void write_defect_csv(const RigidityReport& rep, std::ostream& out) {
  const char* lhs_name = rep.problem_kind == "serrin" ? "v" : "w";
  out << "r," << lhs_name << ",kappa,defect,gap\n";
  const RigidityGrid& g = rep.grid;
  for (size_t i = 0; i < g.r.size(); ++i) {
    out << num17(g.r[i]) << "," << num17(g.lhs[i]) << "," << num17(g.kappa[i])
        << "," << num17(g.defect[i]) << "," << num17(g.hypothesis_gap[i])
        << "\n";
  }
}

}  // namespace ovp
