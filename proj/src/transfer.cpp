#include "cdscale/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdscale/errors.hpp"

namespace cdscale {

Mat2 one_step(const CoefficientModel& model, std::size_t n_ctx, std::size_t ell, cplx x) {
  if (ell == 0) throw IndexOutOfRange("one_step requires ell >= 1");
  const auto [a, b] = model.coeffs(ell, n_ctx);
  return {(x - b) / a, -1.0 / a, a, 0.0};
}

TransferState transfer_product(const CoefficientModel& model, std::size_t n_ctx, std::size_t ell, cplx x) {
  TransferState st{0, Mat2::identity(), x, 1.0};
  for (std::size_t l = 1; l <= ell; ++l) {
    const Mat2 s = one_step(model, n_ctx, l, x);
    st.T = s * st.T;
    st.accumulated_norm *= operator_norm(s);
  }
  st.ell = ell;
  return st;
}

Mat2 transfer_column_form(const CoefficientModel& model, std::size_t n_ctx, std::size_t ell, cplx x) {
  if (ell == 0) return Mat2::identity();
  const auto seq = eval_poly_sequence(model, n_ctx, x, ell);
  const double a = model.a(ell, n_ctx);
  return {seq[ell].p, -seq[ell].q, a * seq[ell - 1].p, -a * seq[ell - 1].q};
}

Mat2 h_matrix(double p, double q) { return {p * p, -p * q, -p * q, q * q}; }

DiscreteHSequence h_sequence(const CoefficientModel& model, std::size_t n_ctx, double x0, std::size_t count) {
  DiscreteHSequence h{x0, {}};
  if (count == 0) return h;
  h.entries.reserve(count);
  for (const auto& pq : eval_poly_sequence(model, n_ctx, x0, count - 1)) {
    h.entries.push_back(h_matrix(pq.p.real(), pq.q.real()));
  }
  return h;
}

std::size_t step_index(double t, std::size_t n) {
  const double nd = static_cast<double>(n);
  const double raw = std::floor(t * nd + 1e-9 * std::max(1.0, nd));
  if (raw <= 0.0) return 0;
  return std::min(n, static_cast<std::size_t>(raw));
}

namespace {

void require_unit_grid(std::span<const double> t_grid) {
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw IndexOutOfRange("t-grid values must lie in [0, 1]");
  }
}

// Visit order that processes steps monotonically while writing results back
// in the caller's order.
std::vector<std::size_t> ascending_order(std::span<const double> t_grid) {
  std::vector<std::size_t> order(t_grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return t_grid[i] < t_grid[j]; });
  return order;
}

}  // namespace

QTrajectory q_trajectory_direct(const CoefficientModel& model, std::size_t n, double x0, cplx a,
                                std::span<const double> t_grid) {
  require_unit_grid(t_grid);
  QTrajectory traj{n, x0, a, std::vector<QSample>(t_grid.size()), false};
  const cplx x = x0 + a / static_cast<double>(n);
  Mat2 t_x0 = Mat2::identity();
  Mat2 t_x = Mat2::identity();
  double growth = 1.0;
  std::size_t l = 0;
  for (std::size_t idx : ascending_order(t_grid)) {
    const std::size_t target = step_index(t_grid[idx], n);
    for (; l < target; ++l) {
      t_x0 = one_step(model, n, l + 1, x0) * t_x0;
      t_x = one_step(model, n, l + 1, x) * t_x;
      growth = std::max({growth, operator_norm(t_x0), operator_norm(t_x)});
    }
    if (growth > kConditioningLimit) traj.conditioning_warning = true;
    // det T is computed with an absolute error of order eps |T|^2.
    const double tol = kUnimodularTol * std::max(1.0, growth * growth);
    traj.samples[idx] = {t_grid[idx], target, inverse_unimodular(t_x0, tol) * t_x};
  }
  return traj;
}

QTrajectory q_trajectory_recursive(const DiscreteHSequence& h_seq, std::size_t n, cplx a,
                                   std::span<const double> t_grid) {
  require_unit_grid(t_grid);
  if (h_seq.size() < n) throw IndexOutOfRange("h-sequence shorter than n");
  QTrajectory traj{n, h_seq.x0, a, std::vector<QSample>(t_grid.size()), false};
  const cplx step = a / static_cast<double>(n);
  Mat2 q = Mat2::identity();
  std::size_t l = 0;
  for (std::size_t idx : ascending_order(t_grid)) {
    const std::size_t target = step_index(t_grid[idx], n);
    for (; l < target; ++l) {
      q = (Mat2::identity() + step * (kSymplecticInv * h_seq[l])) * q;
    }
    traj.samples[idx] = {t_grid[idx], target, q};
  }
  return traj;
}

Mat2 q_final(const DiscreteHSequence& h_seq, std::size_t n, cplx a) {
  if (h_seq.size() < n) throw IndexOutOfRange("h-sequence shorter than n");
  const cplx step = a / static_cast<double>(n);
  Mat2 q = Mat2::identity();
  for (std::size_t l = 0; l < n; ++l) {
    q = (Mat2::identity() + step * (kSymplecticInv * h_seq[l])) * q;
  }
  return q;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo + h * static_cast<double>(i);
  if (points > 1) g.back() = hi;
  return g;
}

}  // namespace cdscale
