#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "radial.hpp"

namespace ovp {

// Values double as process exit codes; keep them stable.
enum class Verdict {
  RadialAndBall = 0,
  RadialOnly = 1,
  Inconclusive = 2,
  Unsolvable = 3,
  HypothesisFails = 4,
};
const char* verdict_name(Verdict v);

enum class Monotone { Nonincreasing, Nondecreasing, None };
const char* monotone_name(Monotone m);

struct DefectZero {
  double r;
  bool touch;  // grid node with |d| below tolerance, no bracketed sign change
};

struct Witness {
  std::string condition;
  double r;
  double value;
};

// Node samples backing a classification; column layout of the defect CSV.
struct RigidityGrid {
  std::vector<double> r, lhs, kappa, defect, hypothesis_gap;
};

struct RigidityReport {
  std::string problem_kind;  // "serrin" | "bernoulli"
  Verdict verdict = Verdict::Inconclusive;
  bool hypothesis_holds = false;   // phi' - lhs >= 0 on the grid
  bool hypothesis_strict = false;  // strictly positive everywhere (case a)
  std::vector<DefectZero> zeros;   // zeros of d = lhs - kappa
  bool cond1 = false;              // d <= 0 left of every zero
  bool cond2 = false;              // d >= 0 right of every zero
  Monotone monotone_d = Monotone::None;
  bool kappa_nonvanishing = false;  // case (b)
  bool f_nondegenerate = false;     // case (c)
  bool defect_plateau = false;   // d ~ 0 on a proper subinterval only
  bool interior_sphere_assumed = false;  // verdict leaned on the declared flag
  std::vector<Witness> witnesses;        // offending r per failed condition
  std::vector<std::string> notes;
  double grid_lo = 0, grid_hi = 0;
  RigidityGrid grid;
};

// Classifier for the ball problem: lhs = v. Requires a non-annular spec.
RigidityReport serrin_check(const RadialProblem& prob, int grid_n = 2001);

// Classifier for the annular problem: lhs = w(r, phi(r)). Requires R0.
RigidityReport bernoulli_check(const RadialProblem& prob, int grid_n = 2001);

struct QConditionReport {
  bool pass = false;  // Q(r) = h^(N-1) kappa + int_R0^r h^(N-1) f non-increasing
  double r_before = 0, r_after = 0;  // first violating node pair when failed
  double q_before = 0, q_after = 0;
  bool derivative_checked = false;  // -(h^(N-1) kappa)' >= h^(N-1) f, symbolic
  bool derivative_pass = false;
  double derivative_bad_r = 0;
};

QConditionReport q_condition_check(const RadialProblem& prob, int grid_n = 2001);

struct ComparisonReport {
  bool derivative_inequality = false;
  bool f_nonpositive = false;
  bool c_nonpositive = false;
  bool u_min_ok = false;  // u_min >= c
  bool applies = false;   // radial conclusion
  bool ball = false;      // additionally c < 0
  std::vector<Witness> witnesses;
};

ComparisonReport comparison_corollary_check(const RadialProblem& prob, double c,
                                            double u_min, int grid_n = 2001);

// key = value lines for report.txt
std::string report_text(const RigidityReport& rep);
// one JSON object with the same fields, deterministic key order
std::string report_json(const RigidityReport& rep);

// columns: r, v or w, kappa, defect, gap (17 significant digits)
void write_defect_csv(const RigidityReport& rep, std::ostream& out);

}  // namespace ovp
