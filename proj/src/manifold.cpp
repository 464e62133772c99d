#include "manifold.hpp"

#include <cmath>

namespace ovp {

Manifold::Manifold(Kind kind, int dim, double S, ScalarField h)
    : kind_(kind), dim_(dim), S_(S), h_(std::move(h)) {
  if (dim < 2) throw Error(ErrorCode::Invalid, "dimension must be an integer >= 2");
  if (!(S > 0)) throw Error(ErrorCode::Invalid, "S must be positive");
}

Manifold Manifold::euclidean(int dim) {
  return Manifold(Kind::Euclidean, dim, kUnboundedS, ScalarField::parse("r"));
}

Manifold Manifold::hyperbolic(int dim) {
  return Manifold(Kind::Hyperbolic, dim, kUnboundedS, ScalarField::parse("sinh(r)"));
}

Manifold Manifold::spherical(int dim) {
  return Manifold(Kind::Spherical, dim, M_PI, ScalarField::parse("sin(r)"));
}

Manifold Manifold::custom(const std::string& h_expr, double S, int dim) {
  return Manifold(Kind::Custom, dim, S, ScalarField::parse(h_expr));
}

double Manifold::h(double r) const {
  if (r < 0 || r >= S_)
    throw Error(ErrorCode::Domain,
                "r = " + std::to_string(r) + " outside [0, S)");
  return h_(r);
}

double Manifold::h_prime(double r) const {
  if (r < 0 || r >= S_)
    throw Error(ErrorCode::Domain,
                "r = " + std::to_string(r) + " outside [0, S)");
  return h_.derivative(r);
}

std::string WarpingReport::summary() const {
  std::string s;
  for (const auto& c : checks) {
    s += c.invariant;
    s += c.pass ? ": ok" : ": FAIL";
    if (!c.detail.empty()) {
      s += " (";
      s += c.detail;
      s += ")";
    }
    s += "\n";
  }
  return s;
}

WarpingReport validate_warping(const Manifold& m, const std::vector<double>& grid) {
  WarpingReport rep;
  const double nan = std::nan("");

  WarpingCheck pos{"h positive on (0,S)", true, nan, ""};
  for (double r : grid) {
    if (!(r > 0) || r >= m.S()) continue;
    double v;
    try {
      v = m.h(r);
    } catch (const Error& e) {
      pos = {pos.invariant, false, r, std::string("evaluation failed: ") + e.what()};
      break;
    }
    if (!(v > 0)) {
      pos = {pos.invariant, false, r, "h(" + std::to_string(r) + ") = " + std::to_string(v)};
      break;
    }
  }
  rep.checks.push_back(pos);

  WarpingCheck origin{"h(0) = 0", true, nan, ""};
  try {
    double v = m.h(0);
    if (std::fabs(v) > 1e-12)
      origin = {origin.invariant, false, 0.0, "h(0) = " + std::to_string(v)};
  } catch (const Error& e) {
    origin = {origin.invariant, false, 0.0, std::string("evaluation failed: ") + e.what()};
  }
  rep.checks.push_back(origin);

  WarpingCheck slope{"h'(0) = 1", true, nan, ""};
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    if (eps >= m.S()) continue;
    double ratio;
    try {
      ratio = m.h(eps) / eps;
    } catch (const Error& e) {
      slope = {slope.invariant, false, eps, std::string("evaluation failed: ") + e.what()};
      break;
    }
    if (std::fabs(ratio - 1.0) > 1e-4) {
      slope = {slope.invariant, false, eps,
               "h(eps)/eps = " + std::to_string(ratio) + " at eps = " + std::to_string(eps)};
      break;
    }
  }
  rep.checks.push_back(slope);

  rep.ok = true;
  for (const auto& c : rep.checks) rep.ok = rep.ok && c.pass;
  return rep;
}

}  // namespace ovp
