#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cdscale/cdkernel.hpp"
#include "cdscale/jacobi.hpp"
#include "cdscale/mat2.hpp"
#include "cdscale/parallel.hpp"

namespace cdscale {

struct ConstantH {
  Mat2 H;
};

/// H(t) = matrices[k] on [breakpoints[k], breakpoints[k+1]); breakpoints
/// run from 0 to 1.
struct PiecewiseConstantH {
  std::vector<double> breakpoints;
  std::vector<Mat2> matrices;
};

/// H(t) = ((cosh(tV), sinh(tV)), (sinh(tV), cosh(tV))) / 2.
struct CoshSinhH {
  double V = 0.0;
};

struct CallableH {
  std::string description;
  std::function<Mat2(double)> fn;
};

inline constexpr double kPsdTol = 1e-12;
inline constexpr double kDefaultStep = 1e-3;

/// J u' = z H(t) u on [0, 1].
class CanonicalSystem {
 public:
  using Kind = std::variant<ConstantH, PiecewiseConstantH, CoshSinhH, CallableH>;

  static CanonicalSystem constant(const Mat2& h);
  static CanonicalSystem piecewise(std::vector<double> breakpoints, std::vector<Mat2> matrices);
  static CanonicalSystem cosh_sinh(double v);
  static CanonicalSystem callable(std::string description, std::function<Mat2(double)> fn);

  /// H(t); throws NotPSD when the smallest eigenvalue is below -kPsdTol.
  Mat2 hamiltonian(double t) const;
  /// H on the mesh segment [lo, hi]; piecewise systems use the piece that
  /// contains the segment.
  Mat2 hamiltonian_on(double t, double lo, double hi) const;
  /// int_0^t H(s) ds; exact for the built-in variants.
  Mat2 integral(double t) const;
  /// Points where H may be discontinuous, always including 0 and 1.
  std::vector<double> knots() const;

  std::string name() const;
  const Kind& kind() const { return kind_; }

 private:
  explicit CanonicalSystem(Kind k) : kind_(std::move(k)) {}
  Mat2 raw(double t) const;

  Kind kind_;
};

void require_psd(const Mat2& h, double tol, const char* where);

struct CanonicalSample {
  double t = 0.0;
  Mat2 Q = Mat2::identity();
};

struct CanonicalSolution {
  cplx z;
  std::vector<CanonicalSample> samples;

  const Mat2& final() const { return samples.back().Q; }
};

/// Integration mesh: knots of the system plus `extra`, each segment split
/// into an even number of equal steps no longer than h.
std::vector<double> integration_mesh(const CanonicalSystem& system, std::span<const double> extra, double h);

/// exp(z t J^{-1} H) for constant H.
Mat2 solve_constant(const Mat2& H, cplx z, double t);

/// Classical RK4 for J Q' = z H(t) Q, Q(0) = Id, sampled on a sorted t-grid.
CanonicalSolution solve_ode(const CanonicalSystem& system, cplx z, std::span<const double> t_grid,
                            double h = kDefaultStep);

/// u(1, z) for u(0) = (1, 0)^t.
Vec2 solve_column(const CanonicalSystem& system, cplx z, double h = kDefaultStep);

/// det(Q_a(1) e1, Q_b(1) e1) / (a - b).
cplx kernel_from_solutions(const Mat2& qa, const Mat2& qb, cplx a, cplx b);

/// Diagonal value -det(u(a), du/dz(a)) from a symmetric difference of step
/// delta with one Richardson extrapolation.
cplx confluent_kernel(const std::function<Vec2(cplx)>& column, cplx a, double delta = 1e-5);

/// Determinant-form kernel with the confluent limit on the diagonal.
cplx canonical_kernel(const CanonicalSystem& system, cplx a, cplx b, double h = kDefaultStep);

/// int_0^1 u(t, conj a)^* H(t) u(t, b) dt, composite Simpson on the mesh.
cplx kernel_integral_form(const CanonicalSystem& system, cplx a, cplx b, double h = kDefaultStep);

/// E(z) = u_1(1, z) + i u_2(1, z).
cplx hermite_biehler(const CanonicalSystem& system, cplx z, double h = kDefaultStep);

/// (conj E(z) E(zeta) - E(conj z) conj E(conj zeta)) / (2i (conj z - zeta)).
cplx hermite_biehler_kernel(const CanonicalSystem& system, cplx z, cplx zeta, double h = kDefaultStep);

/// Kernel of the canonical system on a product grid (n = 0 in the result).
KernelGrid canonical_grid(const CanonicalSystem& system, const std::vector<cplx>& a_values,
                          const std::vector<cplx>& b_values, double h = kDefaultStep, Exec exec = Exec::serial());

/// Discrete canonical system data: r_l, s_l, a_l for l = 0..N with a_0 = 1.
struct RSSequence {
  std::vector<double> r;
  std::vector<double> s;
  std::vector<double> a;
};

/// (r, s) = (p_l(0), q_l(0)) of a model, l = 0..count-1.
RSSequence rs_from_model(const CoefficientModel& model, std::size_t count, std::size_t n_ctx = 0);

/// max_l |s_l r_{l-1} - r_l s_{l-1} - 1/a_l| relative to the size of the terms.
double wronskian_defect(const RSSequence& rs);

/// Jacobi matrix whose orthonormal polynomials are r_l u_{l,1} - s_l u_{l,2}.
/// b_l = a_l a_{l-1} (r_l s_{l-2} - s_l r_{l-2}), with r_{-1} = 0, s_{-1} = -1.
CoefficientModel discrete_to_jacobi(const RSSequence& rs, double tol = 1e-10);

/// p_l(x), l = 0..N, read off the discrete canonical system built from rs.
std::vector<cplx> canonical_polynomials(const RSSequence& rs, cplx x);

}  // namespace cdscale
