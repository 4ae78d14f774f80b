#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "cdscale/cdkernel.hpp"
#include "cdscale/errors.hpp"
#include "cdscale/transfer.hpp"
#include "cdscale/verify.hpp"

using namespace cdscale;

TEST_CASE("trivial kernels") {
  CHECK(kernel_sum(CoefficientModel::free(), 0, 1, 0.3, -2.0) == cplx(1.0));
  const auto g = scaled_grid(CoefficientModel::free(), 1, 0.0, {0.0}, {0.0});
  CHECK(g.values[0][0] == cplx(1.0));
  CHECK(g.is_real());
  CHECK_THROWS_AS(kernel_cd(CoefficientModel::free(), 0, 5, 0.1, 0.1), CoincidentArguments);
}

TEST_CASE("sum, Christoffel-Darboux and determinant forms agree") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (std::size_t n : {std::size_t{3}, std::size_t{64}, std::size_t{1500}}) {
      const auto m = verify::random_decaying(seed, n);
      const double x0 = -0.4;
      const auto h = h_sequence(m, n, x0, n);
      const double nd = static_cast<double>(n);
      for (auto [a, b] : {std::pair<cplx, cplx>{1.0, -2.5}, {cplx(0.3, 0.8), 4.0}, {-3.3, -3.2}}) {
        const cplx x = x0 + a / nd, y = x0 + b / nd;
        const cplx s = kernel_sum(m, n, n, x, y);
        const double env = std::sqrt(std::abs(kernel_sum(m, n, n, x, std::conj(x))) *
                                     std::abs(kernel_sum(m, n, n, y, std::conj(y))));
        CHECK(std::abs(s - kernel_cd(m, n, n, x, y)) < 1e-8 * env);
        CHECK(std::abs(s - nd * kernel_det_q(q_final(h, n, a), q_final(h, n, b), a, b)) < 1e-8 * env);
      }
    }
  }
}

TEST_CASE("reproducing property under the Gauss rule") {
  const std::size_t n = 10;
  const auto m = verify::random_table(21, 40);
  const auto rule = gauss_quadrature(m, 20);
  const double x = 0.37;
  const auto px = orthonormal_values(m, 0, x, n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * kernel_sum(m, 0, n, x, rule.nodes[i]) * orthonormal_values(m, 0, rule.nodes[i], n)[j];
    }
    CHECK(std::abs(acc - px[j]) < 1e-10 * std::max(1.0, std::abs(px[j])));
  }
}

TEST_CASE("kernel matrix is symmetric positive semidefinite") {
  const auto m = verify::random_decaying(2, 300);
  const auto pts = to_complex(uniform_grid(-6.0, 6.0, 13));
  const auto g = scaled_grid(m, 300, 0.2, pts, pts);
  Eigen::MatrixXd k(pts.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      CHECK(g.values[i][j] == g.values[j][i]);
      k(i, j) = g.values[i][j].real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  CHECK(es.eigenvalues().minCoeff() > -1e-10 * es.eigenvalues().maxCoeff());
}

TEST_CASE("sine kernel") {
  const double rho = 1.0 / (2.0 * std::numbers::pi), w = 1.0 / std::numbers::pi;
  CHECK(std::abs(sine_kernel(0.7, 0.7, rho, w) - 0.5) < 1e-15);
  CHECK(std::abs(sine_kernel(1.0, -1.0, rho, w) - std::sin(1.0) / 2.0) < 1e-15);
  CHECK(std::abs(sine_kernel(1.0, 1.0 + 1e-9, rho, w) - 0.5) < 1e-15);
  CHECK(std::abs(sine_kernel(0.0, 2.0 * std::numbers::pi, rho, w)) < 1e-16);
}

TEST_CASE("free kernel converges to the sine kernel") {
  const auto pts = to_complex(uniform_grid(-5.0, 5.0, 21));
  double prev = 1.0;
  for (std::size_t n : {250, 500, 1000}) {
    const double d = sine_compare(scaled_grid(CoefficientModel::free(), n, 0.0, pts, pts), 0.5 / std::numbers::pi,
                                  1.0 / std::numbers::pi);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.02);
}
