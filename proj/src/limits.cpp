#include "cdscale/limits.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdscale/cdkernel.hpp"
#include "cdscale/errors.hpp"

namespace cdscale {

BulkPointData BulkPointData::make(double x0, double w, double rho, double re_f) {
  if (!(w > 0.0) || !(rho > 0.0) || !std::isfinite(re_f)) {
    throw InvalidCoefficient("bulk point data requires w > 0, rho > 0, finite Re F");
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return {x0, w, rho, re_f, w / (pi2 * w * w + re_f * re_f)};
}

BulkPointData BulkPointData::free_at_zero() {
  return make(0.0, 1.0 / std::numbers::pi, 0.5 / std::numbers::pi, 0.0);
}

Mat2 BulkPointData::hamiltonian() const {
  const double d = rho_ / w_;
  return {d, -re_f_ * d, -re_f_ * d, rho_ / wtilde_};
}

cplx BulkPointData::sine_kernel(cplx a, cplx b) const { return cdscale::sine_kernel(a, b, rho_, w_); }

namespace {

void require_length(const DiscreteHSequence& h_seq, std::size_t n) {
  if (n == 0) throw IndexOutOfRange("n must be >= 1");
  if (h_seq.size() < n) throw IndexOutOfRange("h-sequence shorter than n");
}

}  // namespace

Mat2 cesaro_limit(const DiscreteHSequence& h_seq, std::size_t n) {
  require_length(h_seq, n);
  Mat2 acc = Mat2::zero();
  for (std::size_t j = 0; j < n; ++j) acc += h_seq[j];
  return (1.0 / static_cast<double>(n)) * acc;
}

double matrix_convergence(const DiscreteHSequence& h_seq, std::size_t n, const CanonicalSystem& candidate) {
  require_length(h_seq, n);
  const double nd = static_cast<double>(n);
  Mat2 partial = Mat2::zero();
  double sup = 0.0;
  for (std::size_t m = 0; m <= n; ++m) {
    const double t = static_cast<double>(m) / nd;
    sup = std::max(sup, operator_norm((1.0 / nd) * partial - candidate.integral(t)));
    if (m < n) partial += h_seq[m];
  }
  return sup;
}

DiagnosticsReport diagnostics(const DiscreteHSequence& h_seq, std::size_t n, const CanonicalSystem* candidate,
                              const std::vector<double>& L_list) {
  require_length(h_seq, n);
  const double nd = static_cast<double>(n);
  DiagnosticsReport rep;
  rep.n = n;
  // prefix[k] = sum_{j<k} |H_j|
  std::vector<double> prefix(n + 1, 0.0);
  double max_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double nrm = operator_norm(h_seq[j]);
    prefix[j + 1] = prefix[j] + nrm;
    max_norm = std::max(max_norm, nrm);
    rep.poly_growth = std::max(rep.poly_growth, h_seq[j].trace().real());
  }
  rep.avg_norm = prefix[n] / nd;
  rep.max_over_n = max_norm / nd;
  for (double L : L_list) {
    if (!(L > 0.0)) throw IndexOutOfRange("decay profile requires L > 0");
    double sup = 0.0;
    for (std::size_t m = 0; m <= n; ++m) {
      const double t = static_cast<double>(m) / nd;
      const double k = std::floor(t * L + 1e-12);
      const auto start = static_cast<std::size_t>(std::floor(nd / L * k + 1e-9));
      const std::size_t end = std::min(m, n - 1);  // inclusive
      if (start > end) continue;
      sup = std::max(sup, (prefix[end + 1] - prefix[start]) / nd);
    }
    rep.decay_profile.push_back({L, sup});
  }
  if (candidate != nullptr) rep.matrix_conv = matrix_convergence(h_seq, n, *candidate);
  rep.cesaro_H = cesaro_limit(h_seq, n);
  return rep;
}

CanonicalSystem piecewise_estimate(const DiscreteHSequence& h_seq, std::size_t n, std::size_t bins) {
  require_length(h_seq, n);
  if (bins == 0) throw IndexOutOfRange("piecewise_estimate requires bins >= 1");
  bins = std::min(bins, n);
  std::vector<double> breaks{0.0};
  std::vector<Mat2> mats;
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < bins; ++k) {
    const std::size_t lo = k * n / bins;
    const std::size_t hi = (k + 1) * n / bins;
    Mat2 acc = Mat2::zero();
    for (std::size_t j = lo; j < hi; ++j) acc += h_seq[j];
    mats.push_back((1.0 / static_cast<double>(hi - lo)) * acc);
    breaks.push_back(k + 1 == bins ? 1.0 : static_cast<double>(hi) / nd);
  }
  return CanonicalSystem::piecewise(std::move(breaks), std::move(mats));
}

double trajectory_distance(const DiscreteHSequence& h_seq, std::size_t n, const std::vector<double>& a_grid,
                           const std::vector<double>& t_grid, const std::function<Mat2(cplx, double)>& reference,
                           Exec exec) {
  require_length(h_seq, n);
  const auto na = static_cast<std::ptrdiff_t>(a_grid.size());
  std::vector<double> per_a(a_grid.size(), 0.0);
  auto one = [&](std::ptrdiff_t i) {
    const cplx a = a_grid[i];
    const auto traj = q_trajectory_recursive(h_seq, n, a, t_grid);
    double sup = 0.0;
    for (const auto& s : traj.samples) sup = std::max(sup, operator_norm(s.Q - reference(a, s.t)));
    per_a[i] = sup;
  };
  if (exec.is_serial()) {
    for (std::ptrdiff_t i = 0; i < na; ++i) one(i);
  } else {
    const int team = exec.threads > 0 ? exec.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(team)
    for (std::ptrdiff_t i = 0; i < na; ++i) one(i);
  }
  return per_a.empty() ? 0.0 : *std::max_element(per_a.begin(), per_a.end());
}

bool strictly_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] < xs[i - 1])) return false;
  }
  return true;
}

EquivalenceReport check_equivalence(const CoefficientModel& model, const std::vector<std::size_t>& n_list, double x0,
                                    const BulkPointData& bpd, const EquivalenceGrids& grids, Exec exec) {
  EquivalenceReport rep;
  rep.n_list = n_list;
  const Mat2 H = bpd.hamiltonian();
  const auto agrid = to_complex(grids.a_grid);
  for (std::size_t n : n_list) {
    const auto kg = scaled_grid(model, n, x0, agrid, agrid, exec);
    rep.kernel_stat.push_back(sine_compare(kg, bpd.rho(), bpd.w()));
    const auto h_seq = h_sequence(model, n, x0, n);
    rep.trajectory_stat.push_back(trajectory_distance(
        h_seq, n, grids.a_grid, grids.t_grid, [&H](cplx a, double t) { return solve_constant(H, a, t); }, exec));
  }
  rep.kernel_decreasing = strictly_decreasing(rep.kernel_stat);
  rep.trajectory_decreasing = strictly_decreasing(rep.trajectory_stat);
  return rep;
}

}  // namespace cdscale
