#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cdscale/mat2.hpp"

namespace cdscale {

// Coefficients are indexed as in the Jacobi matrix: b_1 is the top-left
// diagonal entry, a_1 the first off-diagonal. a_0 = 1 by convention.
// n-dependent families receive the order n as context; all others ignore it.

struct ConstantCoeffs {
  double a = 1.0;
  double b = 0.0;
};

/// a_j = a[(j-1) mod p], b_j = b[(j-1) mod p].
struct PeriodicCoeffs {
  std::vector<double> a;
  std::vector<double> b;
};

/// a_j = a[j-1], b_j = b[j-1]; indices past the end raise IndexOutOfRange.
struct TableCoeffs {
  std::vector<double> a;
  std::vector<double> b;
};

/// a_{n,j} = 1, b_{n,j} = (-1)^{j+1} V / n.
struct AlternatingVCoeffs {
  double V = 0.0;
};

struct CustomCoeffs {
  std::string description;
  /// (n, j) -> (a_j, b_j) for j >= 1.
  std::function<std::pair<double, double>(std::size_t, std::size_t)> generator;
};

class CoefficientModel {
 public:
  using Kind = std::variant<ConstantCoeffs, PeriodicCoeffs, TableCoeffs, AlternatingVCoeffs, CustomCoeffs>;

  static CoefficientModel constant(double a, double b);
  static CoefficientModel free() { return constant(1.0, 0.0); }
  static CoefficientModel periodic(std::vector<double> a, std::vector<double> b);
  static CoefficientModel table(std::vector<double> a, std::vector<double> b);
  static CoefficientModel alternating_v(double v);
  static CoefficientModel custom(std::string description,
                                 std::function<std::pair<double, double>(std::size_t, std::size_t)> gen);

  /// Off-diagonal a_j for j >= 0 (a_0 = 1).
  double a(std::size_t j, std::size_t n = 0) const { return coeffs(j, n).first; }
  /// Diagonal b_j for j >= 1.
  double b(std::size_t j, std::size_t n = 0) const { return coeffs(j, n).second; }
  /// (a_j, b_j), validated: a_j > 0 and both finite.
  std::pair<double, double> coeffs(std::size_t j, std::size_t n = 0) const;

  bool n_dependent() const;
  /// Catalog name: free, constant, periodic, table, alternating-v, custom.
  std::string name() const;
  std::string describe() const;
  const Kind& kind() const { return kind_; }

 private:
  explicit CoefficientModel(Kind k) : kind_(std::move(k)) {}
  std::pair<double, double> raw(std::size_t j, std::size_t n) const;

  Kind kind_;
};

struct PolyPair {
  cplx p;
  cplx q;
  std::size_t ell = 0;
};

/// (p_l(x), q_l(x)) for l = 0..up_to from the three-term recurrence
/// a_l y_l = (x - b_l) y_{l-1} - a_{l-1} y_{l-2}.
std::vector<PolyPair> eval_poly_sequence(const CoefficientModel& model, std::size_t n_ctx, cplx x,
                                         std::size_t up_to);

/// p_0(x) .. p_{count-1}(x) only.
std::vector<cplx> orthonormal_values(const CoefficientModel& model, std::size_t n_ctx, cplx x,
                                     std::size_t count);

/// Number of eigenvalues of the n x n truncation strictly below x.
std::size_t sturm_count(const CoefficientModel& model, std::size_t n, double x);

struct SpectrumSlice {
  double x0 = 0.0;
  std::size_t n = 0;
  double window = 0.0;
  /// n (x_j - x0), strictly increasing, |value| <= window.
  std::vector<double> scaled_zeros;

  /// Mean nearest-neighbour gap; 0 with fewer than two zeros.
  double mean_gap() const;
};

inline constexpr double kBisectionTol = 1e-12;

/// Eigenvalues of the truncation in [lo, hi], by Sturm bisection.
std::vector<double> eigenvalues_in(const CoefficientModel& model, std::size_t n, double lo, double hi,
                                   double tol = kBisectionTol);

SpectrumSlice scaled_zeros(const CoefficientModel& model, std::size_t n, double x0, double window,
                           double tol = kBisectionTol);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss rule for the (probability) spectral measure, from the
/// eigen-decomposition of the m x m truncation. Exact for degree < 2m.
GaussRule gauss_quadrature(const CoefficientModel& model, std::size_t m, std::size_t n_ctx = 0);

}  // namespace cdscale
