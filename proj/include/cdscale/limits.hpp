#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cdscale/canonical.hpp"
#include "cdscale/jacobi.hpp"
#include "cdscale/mat2.hpp"
#include "cdscale/parallel.hpp"
#include "cdscale/transfer.hpp"

namespace cdscale {

/// Quantities at a strong Lebesgue point x0: density w, limiting zero
/// density rho, Re F(x0 + i0), and the second-kind density w~.
class BulkPointData {
 public:
  /// w~ = w / (pi^2 w^2 + ReF^2).
  static BulkPointData make(double x0, double w, double rho, double re_f);
  /// Free Jacobi matrix at 0: w = 1/pi, rho = 1/(2 pi), ReF = 0.
  static BulkPointData free_at_zero();

  double x0() const { return x0_; }
  double w() const { return w_; }
  double rho() const { return rho_; }
  double re_f() const { return re_f_; }
  double wtilde() const { return wtilde_; }

  /// Constant limit Hamiltonian
  /// ((rho/w, -ReF rho/w), (-ReF rho/w, rho/w~)); det = pi^2 rho^2.
  Mat2 hamiltonian() const;
  /// sin(pi rho (b - a)) / (pi w (b - a)).
  cplx sine_kernel(cplx a, cplx b) const;

 private:
  BulkPointData(double x0, double w, double rho, double re_f, double wt)
      : x0_(x0), w_(w), rho_(rho), re_f_(re_f), wtilde_(wt) {}
  double x0_, w_, rho_, re_f_, wtilde_;
};

struct DecayPoint {
  double L = 0.0;
  double value = 0.0;
};

struct DiagnosticsReport {
  std::size_t n = 0;
  /// (1/n) sum_{j<n} |H_j|
  double avg_norm = 0.0;
  /// max_{j<n} |H_j| / n
  double max_over_n = 0.0;
  /// sup_t (1/n) sum over [floor((n/L) floor(tL)), floor(tn)] of |H_j|
  std::vector<DecayPoint> decay_profile;
  /// sup_t |int_0^t (H_{[ns]} - A(s)) ds|; absent without a candidate.
  std::optional<double> matrix_conv;
  Mat2 cesaro_H;
  /// max_{l<n} (p_l^2 + q_l^2): a finite-n proxy for bounded solutions only.
  double poly_growth = 0.0;
};

inline const std::vector<double> kDefaultDecayL{2.0, 5.0, 10.0, 50.0};

DiagnosticsReport diagnostics(const DiscreteHSequence& h_seq, std::size_t n, const CanonicalSystem* candidate,
                              const std::vector<double>& L_list = kDefaultDecayL);

/// sup over t = m/n of |(1/n) sum_{j<m} H_j - int_0^t A|.
double matrix_convergence(const DiscreteHSequence& h_seq, std::size_t n, const CanonicalSystem& candidate);

/// (1/n) sum_{j<n} H_{x0,j}.
Mat2 cesaro_limit(const DiscreteHSequence& h_seq, std::size_t n);

/// Piecewise-constant estimate of the limit Hamiltonian. Bin k covers
/// indices [floor(kn/bins), floor((k+1)n/bins)) and holds their mean; its
/// breakpoints are those index boundaries divided by n.
CanonicalSystem piecewise_estimate(const DiscreteHSequence& h_seq, std::size_t n, std::size_t bins);

/// sup over (t, a) of |Q_{[tn]}(x0 + a/n) - reference(a, t)|, Q by the
/// recursion. Parallel over a.
double trajectory_distance(const DiscreteHSequence& h_seq, std::size_t n, const std::vector<double>& a_grid,
                           const std::vector<double>& t_grid, const std::function<Mat2(cplx, double)>& reference,
                           Exec exec = Exec::serial());

struct EquivalenceReport {
  std::vector<std::size_t> n_list;
  /// sup |K_n(x0+a/n, x0+b/n)/n - sine kernel| on the grid.
  std::vector<double> kernel_stat;
  /// sup |Q_{[tn]}(x0 + a/n) - exp(a t J^{-1} H)|.
  std::vector<double> trajectory_stat;
  bool kernel_decreasing = false;
  bool trajectory_decreasing = false;
};

struct EquivalenceGrids {
  std::vector<double> a_grid = uniform_grid(-5.0, 5.0, 101);
  std::vector<double> t_grid = uniform_grid(0.0, 1.0, 101);
  /// Kernel comparison uses a_grid x a_grid.
};

bool strictly_decreasing(const std::vector<double>& xs);

EquivalenceReport check_equivalence(const CoefficientModel& model, const std::vector<std::size_t>& n_list, double x0,
                                    const BulkPointData& bpd, const EquivalenceGrids& grids = {},
                                    Exec exec = Exec::serial());

}  // namespace cdscale
