#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "manifold.hpp"

using ovp::Error;
using ovp::ErrorCode;
using ovp::Manifold;
using ovp::kUnboundedS;

TEST_CASE("preset warpings match closed forms") {
  Manifold eu = Manifold::euclidean(3);
  Manifold hy = Manifold::hyperbolic(2);
  Manifold sp = Manifold::spherical(4);

  CHECK(eu.S() == kUnboundedS);
  CHECK(hy.S() == kUnboundedS);
  CHECK(sp.S() == doctest::Approx(M_PI));
  CHECK(eu.dim() == 3);
  CHECK(sp.kind() == Manifold::Kind::Spherical);

  for (double r : {0.0, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0}) {
    CHECK(eu.h(r) == doctest::Approx(r).epsilon(1e-12));
    CHECK(hy.h(r) == doctest::Approx(std::sinh(r)).epsilon(1e-12));
    if (r < M_PI) CHECK(sp.h(r) == doctest::Approx(std::sin(r)).epsilon(1e-12));
  }
  CHECK(hy.h(1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-10));
}

TEST_CASE("warping derivative matches centered differences") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Manifold> ms;
  ms.push_back(Manifold::euclidean(2));
  ms.push_back(Manifold::hyperbolic(3));
  ms.push_back(Manifold::spherical(2));
  ms.push_back(Manifold::custom("r + r^3/6", 10.0, 3));
  for (const auto& m : ms) {
    double hi = std::min(m.S(), 10.0) * 0.9;
    for (int i = 0; i < 25; ++i) {
      double r = 0.05 + (hi - 0.05) * unit(rng);
      double step = 1e-6 * std::max(1.0, r);
      double num = (m.h(r + step) - m.h(r - step)) / (2 * step);
      CHECK(std::abs(m.h_prime(r) - num) <= 1e-6 * (1 + std::abs(num)));
    }
  }
}

TEST_CASE("radial domain is checked") {
  Manifold sp = Manifold::spherical(2);
  CHECK_THROWS_AS(sp.h(3.5), Error);        // past S = pi
  CHECK_THROWS_AS(sp.h(-0.1), Error);
  Manifold eu = Manifold::euclidean(2);
  CHECK_NOTHROW(eu.h(1e6));
  CHECK_THROWS_AS(Manifold::euclidean(1), Error);  // dim < 2
}

TEST_CASE("warping validation accepts the presets") {
  std::vector<double> grid;
  for (int i = 1; i <= 40; ++i) grid.push_back(0.07 * i);
  for (const auto& m : {Manifold::euclidean(2), Manifold::hyperbolic(4),
                        Manifold::spherical(3)}) {
    auto rep = validate_warping(m, grid);
    CHECK(rep.ok);
  }
}

TEST_CASE("warping validation rejects h with wrong origin behavior") {
  std::vector<double> grid = {0.25, 0.5, 0.75, 1.0, 1.25};

  // h(0) != 0
  auto rep1 = validate_warping(Manifold::custom("r + 1", 5.0, 2), grid);
  CHECK_FALSE(rep1.ok);

  // h'(0) = 0, not 1
  auto rep2 = validate_warping(Manifold::custom("r^2", 5.0, 2), grid);
  CHECK_FALSE(rep2.ok);

  // h'(0) = 2
  auto rep3 = validate_warping(Manifold::custom("sin(2*r)", M_PI / 2, 2), grid);
  CHECK_FALSE(rep3.ok);

  // vanishes in the interior
  std::vector<double> wide;
  for (int i = 1; i <= 60; ++i) wide.push_back(0.1 * i);
  auto rep4 = validate_warping(Manifold::custom("sin(r)", 2 * M_PI, 2), wide);
  CHECK_FALSE(rep4.ok);
  CHECK_FALSE(rep4.summary().empty());
}
