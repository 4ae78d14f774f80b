#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cdscale/jacobi.hpp"
#include "cdscale/mat2.hpp"
#include "cdscale/parallel.hpp"

namespace cdscale {

/// K_n(x0 + a/n, x0 + b/n) / n on a product grid; values[i][j] pairs
/// a_values[i] with b_values[j].
struct KernelGrid {
  double x0 = 0.0;
  std::size_t n = 0;
  std::vector<cplx> a_values;
  std::vector<cplx> b_values;
  std::vector<std::vector<cplx>> values;

  bool is_real() const;
};

/// Arguments closer than 1e-13 * max(1, |x|) are treated as coincident.
bool coincident(cplx x, cplx y);

/// sum_{j<n} p_j(x) p_j(y), no conjugation.
cplx kernel_sum(const CoefficientModel& model, std::size_t n_ctx, std::size_t n, cplx x, cplx y);

/// a_n (p_n(x) p_{n-1}(y) - p_n(y) p_{n-1}(x)) / (x - y).
cplx kernel_cd(const CoefficientModel& model, std::size_t n_ctx, std::size_t n, cplx x, cplx y);

/// det(Q_n(x0+a/n) e1, Q_n(x0+b/n) e1) / (a - b) from the final Q matrices.
cplx kernel_det_q(const Mat2& qa, const Mat2& qb, cplx a, cplx b);

/// Scaled CD kernel on a grid, computed with kernel_sum (diagonal safe).
KernelGrid scaled_grid(const CoefficientModel& model, std::size_t n, double x0, const std::vector<cplx>& a_values,
                       const std::vector<cplx>& b_values, Exec exec = Exec::serial());

namespace detail {
KernelGrid scaled_grid_serial(const CoefficientModel& model, std::size_t n, double x0,
                              const std::vector<cplx>& a_values, const std::vector<cplx>& b_values);
KernelGrid scaled_grid_omp(const CoefficientModel& model, std::size_t n, double x0, const std::vector<cplx>& a_values,
                           const std::vector<cplx>& b_values, int threads);
}  // namespace detail

/// sin(pi rho (b - a)) / (pi w (b - a)), with value rho / w at a = b.
cplx sine_kernel(cplx a, cplx b, double rho, double w);

/// sup over the grid of |value - reference(a, b)|.
double sup_distance(const KernelGrid& grid, const std::function<cplx(cplx, cplx)>& reference);

/// sup distance to the sine kernel with density rho and weight w.
double sine_compare(const KernelGrid& grid, double rho, double w);

std::vector<cplx> to_complex(const std::vector<double>& xs);

}  // namespace cdscale
