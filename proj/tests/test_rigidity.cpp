#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "manifold.hpp"
#include "radial.hpp"
#include "rigidity.hpp"
#include "scalar_field.hpp"

using namespace ovp;

namespace {

OverdeterminedSpec make_spec(Manifold m, const std::string& f,
                             const std::string& phi, const std::string& kappa,
                             double lo, double hi,
                             std::optional<double> R0 = std::nullopt) {
  return OverdeterminedSpec{std::move(m),
                            ScalarField::parse(f),
                            ScalarField::parse(phi),
                            ScalarField::parse(kappa),
                            lo,
                            hi,
                            R0,
                            true};
}

// structural invariants every report must satisfy, whatever the inputs
void check_invariants(const RigidityReport& rep) {
  if (rep.verdict == Verdict::Unsolvable) {
    CHECK(rep.hypothesis_holds);
    CHECK(rep.zeros.empty());
  }
  if (rep.verdict == Verdict::RadialAndBall) {
    CHECK((rep.cond1 || rep.cond2));
    CHECK((rep.hypothesis_strict ||
           (rep.monotone_d != Monotone::None &&
            (rep.kappa_nonvanishing || rep.f_nondegenerate))));
  }
  if (rep.verdict == Verdict::RadialOnly) {
    CHECK((rep.cond1 || rep.cond2));
    CHECK_FALSE(rep.hypothesis_strict);
    CHECK_FALSE((rep.monotone_d != Monotone::None &&
                 (rep.kappa_nonvanishing || rep.f_nondegenerate)));
  }
  if (rep.verdict == Verdict::HypothesisFails) CHECK_FALSE(rep.hypothesis_holds);
  if (!rep.hypothesis_holds) CHECK(rep.verdict == Verdict::HypothesisFails);
  for (size_t i = 1; i < rep.zeros.size(); ++i)
    CHECK(rep.zeros[i - 1].r < rep.zeros[i].r);
}

bool has_witness(const RigidityReport& rep, const std::string& cond) {
  for (const Witness& w : rep.witnesses)
    if (w.condition == cond) return true;
  return false;
}

const Witness& witness_of(const RigidityReport& rep, const std::string& cond) {
  for (const Witness& w : rep.witnesses)
    if (w.condition == cond) return w;
  static Witness none{"missing", 0, 0};
  REQUIRE(false);
  return none;
}

}  // namespace

TEST_CASE("ball check, euclidean disk with matched boundary data") {
  auto sp = make_spec(Manifold::euclidean(2), "2", "0", "-r", 0.0, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  check_invariants(rep);
  CHECK(rep.problem_kind == "serrin");
  CHECK(rep.verdict == Verdict::RadialAndBall);
  CHECK(rep.hypothesis_holds);
  CHECK(rep.hypothesis_strict);
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.zeros.size() >= 2000);  // defect vanishes at every node
  for (const DefectZero& z : rep.zeros) CHECK(z.touch);
  CHECK(rep.monotone_d == Monotone::Nonincreasing);
  CHECK(rep.kappa_nonvanishing);
  CHECK(rep.f_nondegenerate);
  CHECK_FALSE(rep.defect_plateau);
  CHECK_FALSE(rep.interior_sphere_assumed);
  CHECK(rep.grid_lo == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("ball check, spherical band with a single crossing") {
  auto sp = make_spec(Manifold::spherical(2), "2*cos(r)", "0", "-0.9", 1.7, 2.5);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  check_invariants(rep);
  CHECK(rep.verdict == Verdict::RadialAndBall);
  CHECK(rep.hypothesis_strict);
  REQUIRE(rep.zeros.size() == 1);
  CHECK_FALSE(rep.zeros[0].touch);
  // root of sin r = 0.9 on (pi/2, pi)
  CHECK(rep.zeros[0].r == doctest::Approx(2.02182313859115905).epsilon(1e-9));
  // defect rises from negative to positive through the zero: both sign
  // conditions hold
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.monotone_d == Monotone::Nondecreasing);
  CHECK(rep.f_nondegenerate);
  CHECK_FALSE(rep.interior_sphere_assumed);

  // cond1 alone carries the conclusion, so dropping the interior-sphere
  // declaration changes nothing here
  sp.interior_sphere = false;
  RadialProblem prob2(sp);
  RigidityReport rep2 = serrin_check(prob2);
  check_invariants(rep2);
  CHECK(rep2.verdict == Verdict::RadialAndBall);
  CHECK_FALSE(rep2.interior_sphere_assumed);
}

TEST_CASE("ball check, right-sign condition leans on the declared sphere") {
  // defect (r-2)^4 touches zero at r = 2 and is positive on both sides, so
  // only the right-sign condition holds and it needs the geometric flag
  auto sp = make_spec(Manifold::euclidean(2), "2", "0", "-r - (r-2)^4", 0.0,
                      2.5);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  check_invariants(rep);
  CHECK(rep.verdict == Verdict::RadialAndBall);
  CHECK(rep.hypothesis_strict);
  CHECK_FALSE(rep.zeros.empty());
  CHECK(rep.zeros.front().r > 1.99);
  CHECK(rep.zeros.back().r < 2.01);
  CHECK_FALSE(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.interior_sphere_assumed);
  CHECK(has_witness(rep, "cond1"));

  sp.interior_sphere = false;
  RadialProblem prob2(sp);
  RigidityReport rep2 = serrin_check(prob2);
  check_invariants(rep2);
  CHECK(rep2.verdict == Verdict::Inconclusive);
  CHECK_FALSE(rep2.interior_sphere_assumed);
}

TEST_CASE("ball check, unsolvable data has no defect zero") {
  auto sp = make_spec(Manifold::euclidean(3), "1", "0", "1", 0.0, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  check_invariants(rep);
  CHECK(rep.verdict == Verdict::Unsolvable);
  CHECK(rep.hypothesis_holds);
  CHECK(rep.zeros.empty());
  CHECK(rep.cond1);  // vacuous
  CHECK(rep.cond2);
}

TEST_CASE("ball check, hypothesis violation reported with witness") {
  auto sp = make_spec(Manifold::euclidean(2), "2", "-r^2", "-r", 0.0, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  check_invariants(rep);
  CHECK(rep.verdict == Verdict::HypothesisFails);
  CHECK_FALSE(rep.hypothesis_holds);
  CHECK_FALSE(rep.hypothesis_strict);
  CHECK(has_witness(rep, "hypothesis"));
  CHECK(witness_of(rep, "hypothesis").value < 0);
}

TEST_CASE("annulus check, matched log data is radial and a ball") {
  auto sp = make_spec(Manifold::euclidean(2), "0", "-1", "-1/(r*log(r))", 1.0,
                      2.5, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = bernoulli_check(prob);
  check_invariants(rep);
  CHECK(rep.problem_kind == "bernoulli");
  CHECK(rep.verdict == Verdict::RadialAndBall);
  CHECK(rep.hypothesis_strict);
  CHECK(rep.zeros.size() >= 2000);
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.kappa_nonvanishing);
  CHECK_FALSE(rep.f_nondegenerate);  // f vanishes identically
  CHECK_FALSE(rep.defect_plateau);
}

TEST_CASE("annulus check, constructed slope data with source") {
  auto sp = make_spec(
      Manifold::euclidean(2), "1", "0",
      "((r^2-1)/4 - log(r)/2 - (r^2-1)*log(r)/2) / (r*log(r))", 1.0, 2.0, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = bernoulli_check(prob);
  check_invariants(rep);
  CHECK(rep.verdict == Verdict::RadialAndBall);
  CHECK(rep.zeros.size() >= 2000);
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.f_nondegenerate);
  CHECK(rep.monotone_d != Monotone::None);
}

TEST_CASE("annulus check, zero data gives radial but not ball") {
  auto sp = make_spec(Manifold::euclidean(2), "0", "0", "0", 1.0, 2.0, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = bernoulli_check(prob);
  check_invariants(rep);
  CHECK(rep.verdict == Verdict::RadialOnly);
  CHECK(rep.hypothesis_holds);
  CHECK_FALSE(rep.hypothesis_strict);
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.monotone_d == Monotone::Nonincreasing);
  CHECK_FALSE(rep.kappa_nonvanishing);
  CHECK_FALSE(rep.f_nondegenerate);
  CHECK(has_witness(rep, "kappa_nonzero"));
  CHECK(has_witness(rep, "f_nondegenerate"));
}

TEST_CASE("annulus check, defect changing sign the wrong way") {
  auto sp = make_spec(Manifold::euclidean(2), "0", "-1",
                      "-1/(r*log(r)) + (r-2)", 1.0, 2.5, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = bernoulli_check(prob);
  check_invariants(rep);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK(rep.hypothesis_holds);
  CHECK(rep.hypothesis_strict);
  REQUIRE(rep.zeros.size() == 1);
  CHECK(rep.zeros[0].r == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_FALSE(rep.cond1);
  CHECK_FALSE(rep.cond2);
  const Witness& w1 = witness_of(rep, "cond1");
  CHECK(w1.r < 2.0);
  CHECK(w1.value > 0);
  const Witness& w2 = witness_of(rep, "cond2");
  CHECK(w2.r > 2.0);
  CHECK(w2.value < 0);
}

TEST_CASE("plateau in the defect blocks the monotonicity route") {
  // v = -r; kappa matches it up to 0.6 then bends away cubically, so the
  // defect vanishes on a proper subinterval and stays <= 0 beyond it
  std::vector<double> tr, tk;
  int tn = 2201;
  for (int j = 0; j < tn; ++j) {
    double r = 1e-4 + (1.1 - 1e-4) * j / (tn - 1);
    double dev = r > 0.6 ? std::pow(r - 0.6, 3) : 0.0;
    tr.push_back(r);
    tk.push_back(-r + dev);
  }
  // slope matches v exactly at an interior grid node, so strictness is lost
  OverdeterminedSpec sp{Manifold::euclidean(2),
                        ScalarField::parse("2"),
                        ScalarField::parse("-r^2/2 + (r-0.5005)^3/3"),
                        ScalarField::table(tr, tk),
                        0.0,
                        1.0,
                        std::nullopt,
                        true};
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  check_invariants(rep);
  CHECK(rep.hypothesis_holds);
  CHECK_FALSE(rep.hypothesis_strict);
  CHECK(rep.defect_plateau);
  CHECK(rep.cond1);
  CHECK(rep.monotone_d == Monotone::Nonincreasing);
  CHECK(rep.kappa_nonvanishing);
  CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("refining the grid preserves the verdicts") {
  auto run_both = [](const OverdeterminedSpec& sp, bool annular) {
    RadialProblem prob(sp);
    RigidityReport a = annular ? bernoulli_check(prob, 2001)
                               : serrin_check(prob, 2001);
    RigidityReport b = annular ? bernoulli_check(prob, 4001)
                               : serrin_check(prob, 4001);
    check_invariants(a);
    check_invariants(b);
    CHECK(a.verdict == b.verdict);
    // never a direct flip between the extreme verdicts
    bool extreme_flip = (a.verdict == Verdict::Unsolvable &&
                         b.verdict == Verdict::RadialAndBall) ||
                        (a.verdict == Verdict::RadialAndBall &&
                         b.verdict == Verdict::Unsolvable);
    CHECK_FALSE(extreme_flip);
  };
  run_both(make_spec(Manifold::euclidean(2), "2", "0", "-r", 0, 1), false);
  run_both(
      make_spec(Manifold::spherical(2), "2*cos(r)", "0", "-0.9", 1.7, 2.5),
      false);
  run_both(make_spec(Manifold::euclidean(3), "1", "0", "1", 0, 1), false);
  run_both(make_spec(Manifold::euclidean(2), "0", "-1", "-1/(r*log(r))", 1.0,
                     2.5, 1.0),
           true);
  run_both(make_spec(Manifold::euclidean(2), "0", "0", "0", 1.0, 2.0, 1.0),
           true);
  run_both(make_spec(Manifold::euclidean(2), "0", "-1",
                     "-1/(r*log(r)) + (r-2)", 1.0, 2.5, 1.0),
           true);
}

TEST_CASE("reported zeros are consistent with solvable boundary data") {
  // at each zero r0 the ball profile with R = r0 reproduces kappa(r0) as its
  // outward slope
  auto sp = make_spec(Manifold::spherical(2), "2*cos(r)", "0", "-0.9", 1.7, 2.5);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  REQUIRE(rep.zeros.size() == 1);
  double r0 = rep.zeros[0].r;
  RadialProfile p = prob.ball_profile(r0, sp.phi(r0));
  CHECK(std::abs(p.du.back() - sp.kappa(r0)) < 1e-8);

  auto sp1 = make_spec(Manifold::euclidean(2), "2", "0", "-r", 0.0, 1.0);
  RadialProblem prob1(sp1);
  RigidityReport rep1 = serrin_check(prob1);
  REQUIRE(rep1.zeros.size() >= 5);
  for (size_t i = 0; i < rep1.zeros.size(); i += 400) {
    double z = rep1.zeros[i].r;
    RadialProfile q = prob1.ball_profile(z, 0.0);
    CHECK(std::abs(q.du.back() - sp1.kappa(z)) < 1e-8);
  }
}

TEST_CASE("matching kappa to the computed slope satisfies both signs") {
  auto sp0 = make_spec(Manifold::euclidean(2), "exp(-r)", "0", "0", 0.0, 1.0);
  RadialProblem prob0(sp0);
  std::vector<double> tr, tv;
  int tn = 4001;
  for (int j = 0; j < tn; ++j) {
    double r = 5e-5 + (1.1 - 5e-5) * j / (tn - 1);
    tr.push_back(r);
    tv.push_back(prob0.v(r));
  }
  OverdeterminedSpec sp = sp0;
  sp.kappa = ScalarField::table(tr, tv);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob);
  check_invariants(rep);
  CHECK_FALSE(rep.zeros.empty());
  CHECK(rep.cond1);
  CHECK(rep.cond2);
}

TEST_CASE("cumulative boundary condition examples") {
  // constant Q: kappa = c0 h^(1-N) with no source
  auto sp1 = make_spec(Manifold::hyperbolic(3), "0", "0", "-0.7/sinh(r)^2",
                       0.5, 1.5, 0.5);
  QConditionReport q1 = q_condition_check(RadialProblem(sp1));
  CHECK(q1.pass);
  CHECK(q1.derivative_checked);
  CHECK(q1.derivative_pass);

  // -1/log(r) increases toward zero: fails with a witness pair
  auto sp2 = make_spec(Manifold::euclidean(2), "0", "-1", "-1/(r*log(r))",
                       1.0, 2.5, 1.0);
  QConditionReport q2 = q_condition_check(RadialProblem(sp2));
  CHECK_FALSE(q2.pass);
  CHECK(q2.r_before < q2.r_after);
  CHECK(q2.q_before < q2.q_after);
  CHECK(q2.derivative_checked);
  CHECK_FALSE(q2.derivative_pass);
  CHECK(q2.derivative_bad_r >= 1.0);

  // source balanced exactly by the slope term: Q constant
  auto sp3 =
      make_spec(Manifold::euclidean(2), "1", "0", "-r/2", 1.0, 3.0, 1.0);
  QConditionReport q3 = q_condition_check(RadialProblem(sp3));
  CHECK(q3.pass);
  CHECK(q3.derivative_checked);
  CHECK(q3.derivative_pass);
}

TEST_CASE("comparison corollary applicability") {
  auto sp = make_spec(Manifold::euclidean(2), "0", "-1", "-2/r", 1.0, 2.0, 1.0);
  RadialProblem prob(sp);

  ComparisonReport good = comparison_corollary_check(prob, -1.0, -1.0);
  CHECK(good.derivative_inequality);
  CHECK(good.f_nonpositive);
  CHECK(good.c_nonpositive);
  CHECK(good.u_min_ok);
  CHECK(good.applies);
  CHECK(good.ball);

  ComparisonReport zero_c = comparison_corollary_check(prob, 0.0, 0.0);
  CHECK(zero_c.applies);
  CHECK_FALSE(zero_c.ball);

  ComparisonReport low = comparison_corollary_check(prob, -1.0, -1.5);
  CHECK_FALSE(low.u_min_ok);
  CHECK_FALSE(low.applies);

  auto sp_pos =
      make_spec(Manifold::euclidean(2), "1", "-1", "-2/r", 1.0, 2.0, 1.0);
  ComparisonReport bad_f =
      comparison_corollary_check(RadialProblem(sp_pos), -1.0, -1.0);
  CHECK_FALSE(bad_f.f_nonpositive);
  CHECK_FALSE(bad_f.applies);
  bool seen = false;
  for (const Witness& w : bad_f.witnesses)
    if (w.condition == "f_nonpositive") seen = true;
  CHECK(seen);

  // sampled kappa goes through the cumulative form and still passes
  std::vector<double> tr, tk;
  for (int j = 0; j <= 2000; ++j) {
    double r = 1.0 + 1.1 * j / 2000.0;
    tr.push_back(r);
    tk.push_back(-2.0 / r);
  }
  OverdeterminedSpec sp_tab = sp;
  sp_tab.kappa = ScalarField::table(tr, tk);
  ComparisonReport tab =
      comparison_corollary_check(RadialProblem(sp_tab), -1.0, -1.0);
  CHECK(tab.derivative_inequality);
  CHECK(tab.applies);
}

TEST_CASE("cumulative condition implies the left sign condition") {
  // family: constant slope data phi = c0 <= 0, nonnegative source, kappa
  // built so that h^(N-1) kappa is affine decreasing and the defect vanishes
  // mid-interval
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const char* ftmpl[] = {"0", "%.17g", "%.17g*r", "%.17g*exp(-r)",
                         "%.17g*(1+sin(r)^2)", "%.17g*r^2"};
  for (int iter = 0; iter < 50; ++iter) {
    Manifold m = Manifold::euclidean(2);
    switch (iter % 7) {
      case 0: m = Manifold::euclidean(2); break;
      case 1: m = Manifold::euclidean(3); break;
      case 2: m = Manifold::euclidean(4); break;
      case 3: m = Manifold::euclidean(5); break;
      case 4: m = Manifold::hyperbolic(2); break;
      case 5: m = Manifold::hyperbolic(3); break;
      case 6: m = Manifold::spherical(2); break;
    }
    const int N = m.dim();
    double R0 = 0.4 + 0.5 * U(rng);
    double hi = R0 + 0.6 + 0.6 * U(rng);
    double lo = R0 + 1e-3 * (hi - R0);
    double c0 = iter % 10 == 0 ? 0.0 : -U(rng);

    char fbuf[64];
    std::snprintf(fbuf, sizeof fbuf, ftmpl[iter % 6], 0.2 + 1.8 * U(rng));

    OverdeterminedSpec sp0{m,
                           ScalarField::parse(fbuf),
                           ScalarField::constant(c0),
                           ScalarField::constant(0.0),
                           lo,
                           hi,
                           R0,
                           true};
    RadialProblem prob0(sp0);

    double rstar = 0.5 * (lo + hi);
    double wt = std::pow(m.h(rstar), N - 1);
    double wstar = prob0.w(rstar, c0).value;
    double maxwf = 0;
    for (int i = 0; i <= 200; ++i) {
      double r = lo + (hi - lo) * i / 200.0;
      maxwf = std::max(maxwf, std::pow(m.h(r), N - 1) * sp0.f(r));
    }
    double C1 = 1.05 * maxwf + 0.1;
    double C0 = wstar * wt + C1 * (rstar - R0);
    const char* base = m.kind() == Manifold::Kind::Euclidean    ? "r"
                       : m.kind() == Manifold::Kind::Hyperbolic ? "sinh(r)"
                                                                : "sin(r)";
    char kbuf[160];
    std::snprintf(kbuf, sizeof kbuf, "(%.17g - %.17g*(r - %.17g)) / %s^%d",
                  C0, C1, R0, base, N - 1);

    OverdeterminedSpec sp = sp0;
    sp.kappa = ScalarField::parse(kbuf);
    RadialProblem prob(sp);

    QConditionReport q = q_condition_check(prob, 801);
    REQUIRE(q.pass);
    REQUIRE(q.derivative_pass);
    RigidityReport rep = bernoulli_check(prob, 801);
    check_invariants(rep);
    REQUIRE(rep.hypothesis_holds);
    REQUIRE_FALSE(rep.zeros.empty());
    CHECK(rep.cond1);
  }
}

TEST_CASE("report rendering is stable and complete") {
  auto sp = make_spec(Manifold::euclidean(3), "1", "0", "1", 0.0, 1.0);
  RadialProblem prob(sp);
  RigidityReport rep = serrin_check(prob, 101);

  std::string text = report_text(rep);
  CHECK(text.find("problem_kind = serrin\n") != std::string::npos);
  CHECK(text.find("verdict = Unsolvable\n") != std::string::npos);
  CHECK(text.find("verdict_code = 3\n") != std::string::npos);
  CHECK(text.find("defect_zero_count = 0\n") != std::string::npos);
  CHECK(text.find("monotone_d = ") != std::string::npos);
  CHECK(report_text(rep) == text);

  auto j = nlohmann::json::parse(report_json(rep));
  CHECK(j["problem_kind"] == "serrin");
  CHECK(j["verdict"] == "Unsolvable");
  CHECK(j["verdict_code"] == 3);
  CHECK(j["hypothesis_holds"] == true);
  CHECK(j["defect_zeros"].empty());
  CHECK(j["cond1"] == true);
  CHECK(j["cond2"] == true);
  CHECK(j.contains("monotone_d"));
  CHECK(j.contains("kappa_nonvanishing"));
  CHECK(j.contains("f_nondegenerate"));
  CHECK(j.contains("defect_plateau"));
  CHECK(j.contains("interior_sphere_assumed"));
  CHECK(j.contains("witnesses"));
  CHECK(j.contains("notes"));
  CHECK(j["grid"]["n"] == 101);

  std::ostringstream c1, c2;
  write_defect_csv(rep, c1);
  write_defect_csv(rep, c2);
  CHECK(c1.str() == c2.str());
  CHECK(c1.str().rfind("r,v,kappa,defect,gap\n", 0) == 0);
  size_t lines = 0;
  for (char ch : c1.str()) lines += ch == '\n';
  CHECK(lines == 102);

  auto spb = make_spec(Manifold::euclidean(2), "0", "0", "0", 1.0, 2.0, 1.0);
  RadialProblem probb(spb);
  RigidityReport repb = bernoulli_check(probb, 101);
  std::ostringstream cb;
  write_defect_csv(repb, cb);
  CHECK(cb.str().rfind("r,w,kappa,defect,gap\n", 0) == 0);
  std::string textb = report_text(repb);
  CHECK(textb.find("problem_kind = bernoulli\n") != std::string::npos);
  CHECK(textb.find("verdict = RadialOnly\n") != std::string::npos);
  CHECK(textb.find("verdict_code = 1\n") != std::string::npos);
}

TEST_CASE("classifier entry points validate their inputs") {
  auto ball = make_spec(Manifold::euclidean(2), "2", "0", "-r", 0.0, 1.0);
  auto ann = make_spec(Manifold::euclidean(2), "0", "0", "0", 1.0, 2.0, 1.0);
  RadialProblem pball(ball), pann(ann);
  CHECK_THROWS_AS(serrin_check(pann), Error);
  CHECK_THROWS_AS(bernoulli_check(pball), Error);
  CHECK_THROWS_AS(serrin_check(pball, 8), Error);
  CHECK_THROWS_AS(q_condition_check(pball), Error);
  CHECK_THROWS_AS(comparison_corollary_check(pball, -1.0, -1.0), Error);
}
