#include "cdscale/cdkernel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdscale/errors.hpp"

namespace cdscale {

bool KernelGrid::is_real() const {
  auto real = [](cplx z) { return z.imag() == 0.0; };
  return std::all_of(a_values.begin(), a_values.end(), real) && std::all_of(b_values.begin(), b_values.end(), real);
}

bool coincident(cplx x, cplx y) { return std::abs(x - y) < 1e-13 * std::max(1.0, std::abs(x)); }

cplx kernel_sum(const CoefficientModel& model, std::size_t n_ctx, std::size_t n, cplx x, cplx y) {
  if (n == 0) throw InvalidCoefficient("kernel_sum requires n >= 1");
  const auto px = orthonormal_values(model, n_ctx, x, n);
  const auto py = orthonormal_values(model, n_ctx, y, n);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += px[j] * py[j];
  return sum;
}

cplx kernel_cd(const CoefficientModel& model, std::size_t n_ctx, std::size_t n, cplx x, cplx y) {
  if (n == 0) throw InvalidCoefficient("kernel_cd requires n >= 1");
  if (coincident(x, y)) throw CoincidentArguments("kernel_cd: x and y coincide; use kernel_sum on the diagonal");
  const auto px = orthonormal_values(model, n_ctx, x, n + 1);
  const auto py = orthonormal_values(model, n_ctx, y, n + 1);
  const double an = model.a(n, n_ctx);
  return an * (px[n] * py[n - 1] - py[n] * px[n - 1]) / (x - y);
}

cplx kernel_det_q(const Mat2& qa, const Mat2& qb, cplx a, cplx b) {
  if (coincident(a, b)) throw CoincidentArguments("kernel_det_q: a and b coincide");
  return det_cols(qa.col1(), qb.col1()) / (a - b);
}

namespace {

std::vector<cplx> shifted(double x0, std::size_t n, const std::vector<cplx>& s) {
  std::vector<cplx> out(s.size());
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = x0 + s[i] / nd;
  return out;
}

KernelGrid empty_grid(double x0, std::size_t n, const std::vector<cplx>& a_values, const std::vector<cplx>& b_values) {
  if (n == 0) throw InvalidCoefficient("scaled_grid requires n >= 1");
  if (a_values.empty() || b_values.empty()) throw InvalidCoefficient("scaled_grid requires non-empty grids");
  KernelGrid g{x0, n, a_values, b_values, {}};
  g.values.assign(a_values.size(), std::vector<cplx>(b_values.size()));
  return g;
}

cplx cell(const std::vector<cplx>& pa, const std::vector<cplx>& pb, double inv_n) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < pa.size(); ++j) sum += pa[j] * pb[j];
  return sum * inv_n;
}

}  // namespace

namespace detail {

KernelGrid scaled_grid_serial(const CoefficientModel& model, std::size_t n, double x0,
                              const std::vector<cplx>& a_values, const std::vector<cplx>& b_values) {
  KernelGrid g = empty_grid(x0, n, a_values, b_values);
  const auto xa = shifted(x0, n, a_values);
  const auto xb = shifted(x0, n, b_values);
  std::vector<std::vector<cplx>> pa(xa.size()), pb(xb.size());
  for (std::size_t i = 0; i < xa.size(); ++i) pa[i] = orthonormal_values(model, n, xa[i], n);
  for (std::size_t j = 0; j < xb.size(); ++j) pb[j] = orthonormal_values(model, n, xb[j], n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < xa.size(); ++i) {
    for (std::size_t j = 0; j < xb.size(); ++j) g.values[i][j] = cell(pa[i], pb[j], inv_n);
  }
  return g;
}

KernelGrid scaled_grid_omp(const CoefficientModel& model, std::size_t n, double x0, const std::vector<cplx>& a_values,
                           const std::vector<cplx>& b_values, int threads) {
  KernelGrid g = empty_grid(x0, n, a_values, b_values);
  const auto xa = shifted(x0, n, a_values);
  const auto xb = shifted(x0, n, b_values);
  const auto na = static_cast<std::ptrdiff_t>(xa.size());
  const auto nb = static_cast<std::ptrdiff_t>(xb.size());
  std::vector<std::vector<cplx>> pa(xa.size()), pb(xb.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
  // Model accessors may throw; exceptions must not escape a parallel region.
  bool failed = false;
#pragma omp parallel for schedule(static) num_threads(team) reduction(|| : failed)
  for (std::ptrdiff_t i = 0; i < na + nb; ++i) {
    try {
      if (i < na) {
        pa[i] = orthonormal_values(model, n, xa[i], n);
      } else {
        pb[i - na] = orthonormal_values(model, n, xb[i - na], n);
      }
    } catch (...) {
      failed = true;
    }
  }
  if (failed) return scaled_grid_serial(model, n, x0, a_values, b_values);  // rethrows with context
  const double inv_n = 1.0 / static_cast<double>(n);
#pragma omp parallel for collapse(2) schedule(static) num_threads(team)
  for (std::ptrdiff_t i = 0; i < na; ++i) {
    for (std::ptrdiff_t j = 0; j < nb; ++j) g.values[i][j] = cell(pa[i], pb[j], inv_n);
  }
  return g;
}

}  // namespace detail

KernelGrid scaled_grid(const CoefficientModel& model, std::size_t n, double x0, const std::vector<cplx>& a_values,
                       const std::vector<cplx>& b_values, Exec exec) {
  if (exec.is_serial()) return detail::scaled_grid_serial(model, n, x0, a_values, b_values);
  return detail::scaled_grid_omp(model, n, x0, a_values, b_values, exec.threads);
}

cplx sine_kernel(cplx a, cplx b, double rho, double w) {
  const cplx d = b - a;
  if (std::abs(d) < 1e-8) {
    // Entire extension: rho/w * (1 - (pi rho d)^2 / 6 + ...)
    const cplx u = std::numbers::pi * rho * d;
    return rho / w * (1.0 - u * u / 6.0);
  }
  return std::sin(std::numbers::pi * rho * d) / (std::numbers::pi * w * d);
}

double sup_distance(const KernelGrid& grid, const std::function<cplx(cplx, cplx)>& reference) {
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.a_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.b_values.size(); ++j) {
      sup = std::max(sup, std::abs(grid.values[i][j] - reference(grid.a_values[i], grid.b_values[j])));
    }
  }
  return sup;
}

double sine_compare(const KernelGrid& grid, double rho, double w) {
  if (!(rho > 0.0) || !(w > 0.0)) throw InvalidCoefficient("sine_compare requires rho > 0 and w > 0");
  return sup_distance(grid, [rho, w](cplx a, cplx b) { return sine_kernel(a, b, rho, w); });
}

std::vector<cplx> to_complex(const std::vector<double>& xs) { return {xs.begin(), xs.end()}; }

}  // namespace cdscale
