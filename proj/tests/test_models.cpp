#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cdscale/cdkernel.hpp"
#include "cdscale/models.hpp"
#include "cdscale/transfer.hpp"

using namespace cdscale;
using namespace cdscale::models;

TEST_CASE("lambda values") {
  CHECK(lambda_pm(0.0, 7) == std::pair{1.0, 1.0});
  const auto [lm, lp] = lambda_pm(1.0, 10);
  CHECK(lp == doctest::Approx(1.005 + 0.1 * std::sqrt(1.0025)).epsilon(1e-15));
  CHECK(lp == doctest::Approx(1.1051249).epsilon(1e-7));
  CHECK(lm == doctest::Approx(0.9048751).epsilon(1e-7));
  for (double V : {0.1, 1.0, 5.0}) {
    for (std::size_t n : {1, 3, 100, 10000}) {
      const auto [a, b] = lambda_pm(V, n);
      CHECK(std::abs(a * b - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("U columns are eigenvectors of the two-step factor") {
  for (double V : {0.5, 2.0}) {
    for (std::size_t n : {2, 40}) {
      const auto [lm, lp] = lambda_pm(V, n);
      const Mat2 f = two_step_factor(V, n), u = u_matrix(V, n);
      const Vec2 r1 = f * u.col1() - lm * u.col1();
      const Vec2 r2 = f * u.col2() - lp * u.col2();
      CHECK(std::abs(r1.v1) + std::abs(r1.v2) < 1e-12);
      CHECK(std::abs(r2.v1) + std::abs(r2.v2) < 1e-12);
      CHECK(std::abs(f.det() - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("Qhat closed form") {
  CHECK(max_abs(qhat_closed(0.0, 30, 17) - Mat2::identity()) < 1e-15);
  CHECK(max_abs(qhat_closed(1.7, 9, 2) - two_step_factor(1.7, 9)) < 1e-14);
  CHECK(max_abs(qhat_closed(1.7, 9, 1) - Mat2{1.0, 0.0, 1.7 / 9.0, 1.0}) < 1e-15);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uv(0.0, 3.0);
  std::uniform_int_distribution<std::size_t> un(1, 200);
  for (int trial = 0; trial < 40; ++trial) {
    const double V = uv(rng);
    const std::size_t n = un(rng);
    const std::size_t l = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    const Mat2 p = qhat_product(V, n, l);
    CHECK(max_abs(qhat_closed(V, n, l) - p) < 1e-9 * std::max(1.0, max_abs(p)));
  }
}

TEST_CASE("limit coefficient") {
  const Mat2 base{0.0, -0.5, 0.5, 0.0};
  CHECK(limit_coefficient(0.0, 0.4) == base);
  CHECK(limit_coefficient(2.0, 0.0) == base);
  const Mat2 e = limit_coefficient(1.0, 1.0);
  CHECK(std::abs(e.m12 + std::numbers::e / 2.0) < 1e-15);
  CHECK(std::abs(e.m21 - 0.5 / std::numbers::e) < 1e-15);
}

TEST_CASE("discrete coefficient: exact on even steps, O(V/n) on odd steps") {
  const double V = 1.0;
  for (std::size_t l = 2; l <= 50; l += 2) {
    CHECK(max_abs(discrete_coefficient(V, 50, l) - discrete_coefficient_leading(V, 50, l)) < 1e-12);
  }
  auto odd_gap = [V](std::size_t n) {
    double g = 0.0;
    for (std::size_t l = 1; l < n; l += 2) {
      g = std::max(g, max_abs(discrete_coefficient(V, n, l) - discrete_coefficient_leading(V, n, l)));
    }
    return g;
  };
  const double g1 = odd_gap(100), g2 = odd_gap(200);
  CHECK(g1 > 0.0);
  CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("closed-form kernel candidates") {
  for (auto [a, b] : {std::pair<cplx, cplx>{1.0, -2.0}, {cplx(0.5, 1.0), 3.0}, {4.9, -4.9}}) {
    const auto k = limit_kernel_candidate(0.0, a, b);
    CHECK(std::abs(k.raw - std::sin((a - b) / 2.0)) < 1e-14);
    CHECK(std::abs(k.divided - std::sin((a - b) / 2.0) / (a - b)) < 1e-14);
  }
  CHECK(std::abs(limit_kernel_candidate(0.0, 0.0, 0.0).divided - 0.5) < 1e-15);
  CHECK(std::abs(limit_kernel_candidate(1.0, 1.0, -1.0).divided - 0.5) < 1e-15);
  // Diagonal extension is continuous.
  for (double V : {0.5, 1.0, 2.0}) {
    for (double a : {-3.0, 0.0, 1.0, 2.5}) {
      const cplx d = limit_kernel_candidate(V, a, a).divided;
      CHECK(std::abs(d - limit_kernel_candidate(V, a, a + 1e-6).divided) < 1e-5);
    }
  }
}

TEST_CASE("divided candidate equals the cosh/sinh canonical kernel") {
  for (double V : {0.5, 1.0}) {
    const auto sys = limit_system(V);
    for (auto [a, b] : {std::pair<cplx, cplx>{1.0, -2.0}, {4.0, 3.0}, {cplx(0.3, 0.7), -1.0}, {2.0, 2.0}}) {
      CHECK(std::abs(limit_kernel_candidate(V, a, b).divided - canonical_kernel(sys, a, b)) < 1e-6);
    }
  }
}

TEST_CASE("alternating kernel value at (1, -1)") {
  const std::size_t n = 4000;
  const cplx k = kernel_sum(CoefficientModel::alternating_v(1.0), n, n, 1.0 / n, -1.0 / n) / double(n);
  CHECK(std::abs(k - 0.5) < 1e-3);
}
