#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cdscale/entire.hpp"

using namespace cdscale;
using namespace cdscale::entire;

TEST_CASE("values at known points") {
  CHECK(std::abs(cosh_sqrt(4.0) - std::cosh(2.0)) < 1e-14);
  CHECK(std::abs(sinhc_sqrt(4.0) - std::sinh(2.0) / 2.0) < 1e-14);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(cosh_sqrt(-pi2) + 1.0) < 1e-14);
  CHECK(std::abs(sinhc_sqrt(-pi2)) < 1e-15);
  CHECK(cosh_sqrt(0.0) == cplx(1.0));
  CHECK(sinhc_sqrt(0.0) == cplx(1.0));
  CHECK(std::abs(sinhc_sqrt_derivative(0.0) - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("series and closed form agree across the switch") {
  for (cplx u : {cplx(0.0999), cplx(0.1001), cplx(-0.0999), cplx(0.0, 0.0999), cplx(0.07, -0.07)}) {
    // Closed forms evaluated directly through a square root branch.
    const cplx r = std::sqrt(u);
    CHECK(std::abs(cosh_sqrt(u) - std::cosh(r)) < 1e-15);
    CHECK(std::abs(sinhc_sqrt(u) - std::sinh(r) / r) < 1e-14);
  }
}

TEST_CASE("derivative matches central differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-6.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const cplx u(d(rng), d(rng));
    const double h = 1e-5;
    const cplx fd = (sinhc_sqrt(u + h) - sinhc_sqrt(u - h)) / (2.0 * h);
    CHECK(std::abs(sinhc_sqrt_derivative(u) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
  }
}
