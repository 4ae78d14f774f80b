#include <doctest.h>

#include <cmath>
#include <random>

#include "cdscale/errors.hpp"
#include "cdscale/transfer.hpp"
#include "cdscale/verify.hpp"

using namespace cdscale;

TEST_CASE("one step and product") {
  const auto m = CoefficientModel::table({2.0, 0.5}, {1.0, -1.0});
  CHECK(one_step(m, 0, 1, 3.0) == Mat2{1.0, -0.5, 2.0, 0.0});
  CHECK_THROWS_AS(one_step(m, 0, 0, 3.0), IndexOutOfRange);
  CHECK(transfer_product(m, 0, 0, 3.0).T == Mat2::identity());
  const Mat2 t2 = one_step(m, 0, 2, 3.0) * one_step(m, 0, 1, 3.0);
  CHECK(max_abs(transfer_product(m, 0, 2, 3.0).T - t2) < 1e-15);
}

TEST_CASE("transfer matrices are unimodular and match the column form") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::size_t n = 300;
    const auto m = verify::random_decaying(seed, n);
    for (cplx x : {cplx(0.0), cplx(0.9), cplx(-1.4, 0.2)}) {
      Mat2 T = Mat2::identity();
      for (std::size_t l = 1; l <= n; ++l) {
        T = one_step(m, n, l, x) * T;
        CHECK(std::abs(T.det() - 1.0) < 1e-9 * std::max(1.0, max_abs(T) * max_abs(T)));
      }
      const Mat2 col = transfer_column_form(m, n, n, x);
      CHECK(max_abs(T - col) < 1e-9 * std::max(1.0, max_abs(col)));
    }
  }
}

TEST_CASE("H matrices of the free model at 0 alternate") {
  const auto h = h_sequence(CoefficientModel::free(), 0, 0.0, 8);
  REQUIRE(h.size() == 8);
  for (std::size_t l = 0; l < 8; ++l) {
    CHECK(h[l] == (l % 2 == 0 ? Mat2::diag(1.0, 0.0) : Mat2::diag(0.0, 1.0)));
  }
  const Mat2 hm = h_matrix(2.0, 3.0);
  CHECK(hm == Mat2{4.0, -6.0, -6.0, 9.0});
  CHECK(std::abs(hm.det()) == 0.0);
}

TEST_CASE("step index") {
  CHECK(step_index(0.0, 10) == 0);
  CHECK(step_index(0.3, 10) == 3);
  CHECK(step_index(0.7, 10) == 7);
  CHECK(step_index(0.29, 10) == 2);
  CHECK(step_index(1.0, 4000) == 4000);
  CHECK(step_index(0.1, 3) == 0);
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(-5.0, 5.0, 11);
  CHECK(g.front() == -5.0);
  CHECK(g.back() == 5.0);
  CHECK(g[5] == doctest::Approx(0.0));
  CHECK(uniform_grid(2.0, 2.0, 1) == std::vector<double>{2.0});
}

TEST_CASE("direct and recursive trajectories agree") {
  const std::vector<double> ts{1.0, 0.0, 0.25, 0.5, 0.75};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::size_t n = 400;
    const auto m = verify::random_decaying(seed, n);
    const double x0 = 0.3;
    const auto h = h_sequence(m, n, x0, n);
    for (cplx a : {cplx(-4.0), cplx(1.5), cplx(0.5, -2.0)}) {
      const auto d = q_trajectory_direct(m, n, x0, a, ts);
      const auto r = q_trajectory_recursive(h, n, a, ts);
      CHECK_FALSE(d.conditioning_warning);
      REQUIRE(d.samples.size() == ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(d.samples[i].t == ts[i]);
        CHECK(max_abs(d.samples[i].Q - r.samples[i].Q) < 1e-8 * std::max(1.0, max_abs(r.samples[i].Q)));
      }
      CHECK(d.samples[1].Q == Mat2::identity());
      CHECK(max_abs(q_final(h, n, a) - r.samples[0].Q) == 0.0);
    }
  }
}

TEST_CASE("conjugated one step") {
  const auto m = verify::random_table(4, 20);
  for (std::size_t l = 1; l <= 20; ++l) {
    const Mat2 lhs = inverse_unimodular(one_step(m, 0, l, 0.2)) * one_step(m, 0, l, 1.7);
    CHECK(max_abs(lhs - Mat2{1.0, 0.0, -1.5, 1.0}) < 1e-13);
  }
}

TEST_CASE("conditioning flag outside the spectrum") {
  const std::vector<double> ts{1.0};
  const auto d = q_trajectory_direct(CoefficientModel::free(), 200, 5.0, 1.0, ts);
  CHECK(d.conditioning_warning);
  CHECK_THROWS_AS(q_trajectory_direct(CoefficientModel::free(), 10, 0.0, 1.0, std::vector<double>{1.5}),
                  IndexOutOfRange);
}
