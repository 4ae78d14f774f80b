#pragma once

#include <cstddef>
#include <utility>

#include "cdscale/canonical.hpp"
#include "cdscale/jacobi.hpp"
#include "cdscale/mat2.hpp"

namespace cdscale::models {

// Closed forms for the alternating perturbation b_{n,j} = (-1)^{j+1} V/n,
// a_{n,j} = 1 of the free Jacobi matrix at x0 = 0.

/// (lambda_-, lambda_+) = 1 + V^2/(2n^2) -/+ (V/n) sqrt(1 + V^2/(4n^2)).
std::pair<double, double> lambda_pm(double V, std::size_t n);

/// Columns are eigenvectors of the two-step factor for lambda_-, lambda_+.
Mat2 u_matrix(double V, std::size_t n);

/// ((1 + V^2/n^2, V/n), (V/n, 1)).
Mat2 two_step_factor(double V, std::size_t n);

/// Qhat_l = (T_l^{free}(0))^{-1} T_l^{(n)}(0) from the diagonalised form.
Mat2 qhat_closed(double V, std::size_t n, std::size_t ell);

/// The same quantity from explicit transfer-matrix products.
Mat2 qhat_product(double V, std::size_t n, std::size_t ell);

/// A(s) = ((0, -e^{sV}/2), (e^{-sV}/2, 0)).
Mat2 limit_coefficient(double V, double s);

/// Exact coefficient A_l^{(n)} = -U_n^{-1} J^{-1} H_{0,l} U_n of the
/// conjugated difference equation Qc_{l+1} - Qc_l = -(a/n) A_l Qc_l,
/// Qc_l = U_n^{-1} Q_l. H_{0,l} is read off T_l^{(n)}(0) = J^l Qhat_l.
Mat2 discrete_coefficient(double V, std::size_t n, std::size_t ell);

/// Leading term of A_l^{(n)}: exact for even l, off by O(V/n) for odd l.
Mat2 discrete_coefficient_leading(double V, std::size_t n, std::size_t ell);

/// The cosh/sinh limit Hamiltonian.
CanonicalSystem limit_system(double V);

struct LimitKernel {
  /// The displayed closed form.
  cplx raw;
  /// raw / (a - b), with its entire extension on a = b.
  cplx divided;
};

/// Evaluated through even entire helpers of omega^2 = V^2 - x^2.
LimitKernel limit_kernel_candidate(double V, cplx a, cplx b);

}  // namespace cdscale::models
