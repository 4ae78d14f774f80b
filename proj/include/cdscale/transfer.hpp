#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdscale/jacobi.hpp"
#include "cdscale/mat2.hpp"

namespace cdscale {

struct TransferState {
  std::size_t ell = 0;
  Mat2 T = Mat2::identity();
  cplx x;
  /// Product of the one-step norms; bounds the growth of T.
  double accumulated_norm = 1.0;
};

/// H_{x0,l} = ((p_l^2, -p_l q_l), (-p_l q_l, q_l^2)) at x0 for l = 0..count-1.
struct DiscreteHSequence {
  double x0 = 0.0;
  std::vector<Mat2> entries;

  std::size_t size() const { return entries.size(); }
  const Mat2& operator[](std::size_t l) const { return entries[l]; }
};

struct QSample {
  double t = 0.0;
  std::size_t ell = 0;
  Mat2 Q = Mat2::identity();
};

/// Q_{[tn]}(x0 + a/n) sampled on a t-grid, in the order the grid was given.
struct QTrajectory {
  std::size_t n = 0;
  double x0 = 0.0;
  cplx a;
  std::vector<QSample> samples;
  /// Direct mode only: set when |T_l(x0)| or |T_l(x)| exceeded 1e12.
  bool conditioning_warning = false;

  const Mat2& final() const { return samples.back().Q; }
};

inline constexpr double kConditioningLimit = 1e12;

/// S_l(x) = (((x - b_l)/a_l, -1/a_l), (a_l, 0)), l >= 1.
Mat2 one_step(const CoefficientModel& model, std::size_t n_ctx, std::size_t ell, cplx x);

/// T_l(x) = S_l(x) ... S_1(x); T_0 = Id.
TransferState transfer_product(const CoefficientModel& model, std::size_t n_ctx, std::size_t ell, cplx x);

/// ((p_l, -q_l), (a_l p_{l-1}, -a_l q_{l-1})) from the polynomial values.
Mat2 transfer_column_form(const CoefficientModel& model, std::size_t n_ctx, std::size_t ell, cplx x);

Mat2 h_matrix(double p, double q);

/// H_{x0,l} for l = 0..count-1. The order context n_ctx only matters for
/// n-dependent models.
DiscreteHSequence h_sequence(const CoefficientModel& model, std::size_t n_ctx, double x0, std::size_t count);

/// Step index [tn], tolerant to rounding in t*n and clamped to [0, n].
std::size_t step_index(double t, std::size_t n);

/// Q at each t from T_l(x0)^{-1} T_l(x0 + a/n).
QTrajectory q_trajectory_direct(const CoefficientModel& model, std::size_t n, double x0, cplx a,
                                std::span<const double> t_grid);

/// Q at each t from Q_{l+1} = (Id + (a/n) J^{-1} H_{x0,l}) Q_l, Q_0 = Id.
QTrajectory q_trajectory_recursive(const DiscreteHSequence& h_seq, std::size_t n, cplx a,
                                   std::span<const double> t_grid);

/// Q_n(x0 + a/n) from the recursion, without sampling.
Mat2 q_final(const DiscreteHSequence& h_seq, std::size_t n, cplx a);

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

}  // namespace cdscale
