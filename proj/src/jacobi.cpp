#include "cdscale/jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cdscale/errors.hpp"

namespace cdscale {

namespace {

void require_finite_list(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidCoefficient(std::string(what) + ": non-finite coefficient");
  }
}

void require_positive_list(const std::vector<double>& v, const char* what) {
  require_finite_list(v, what);
  for (double x : v) {
    if (!(x > 0.0)) throw InvalidCoefficient(std::string(what) + ": off-diagonal coefficient must be > 0");
  }
}

}  // namespace

CoefficientModel CoefficientModel::constant(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidCoefficient("constant model requires a > 0 and finite b");
  }
  return CoefficientModel(ConstantCoeffs{a, b});
}

CoefficientModel CoefficientModel::periodic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || a.size() != b.size()) {
    throw InvalidCoefficient("periodic model requires equal, non-empty a and b lists");
  }
  require_positive_list(a, "periodic");
  require_finite_list(b, "periodic");
  return CoefficientModel(PeriodicCoeffs{std::move(a), std::move(b)});
}

CoefficientModel CoefficientModel::table(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw InvalidCoefficient("table model requires equal-length a and b");
  require_positive_list(a, "table");
  require_finite_list(b, "table");
  return CoefficientModel(TableCoeffs{std::move(a), std::move(b)});
}

CoefficientModel CoefficientModel::alternating_v(double v) {
  if (!std::isfinite(v)) throw InvalidCoefficient("alternating-v requires finite V");
  return CoefficientModel(AlternatingVCoeffs{v});
}

CoefficientModel CoefficientModel::custom(
    std::string description, std::function<std::pair<double, double>(std::size_t, std::size_t)> gen) {
  return CoefficientModel(CustomCoeffs{std::move(description), std::move(gen)});
}

std::pair<double, double> CoefficientModel::raw(std::size_t j, std::size_t n) const {
  struct Visitor {
    std::size_t j;
    std::size_t n;
    std::pair<double, double> operator()(const ConstantCoeffs& c) const { return {c.a, c.b}; }
    std::pair<double, double> operator()(const PeriodicCoeffs& c) const {
      const std::size_t k = (j - 1) % c.a.size();
      return {c.a[k], c.b[k]};
    }
    std::pair<double, double> operator()(const TableCoeffs& c) const {
      if (j > c.a.size()) {
        throw IndexOutOfRange("table model has " + std::to_string(c.a.size()) + " rows; index " +
                              std::to_string(j) + " requested");
      }
      return {c.a[j - 1], c.b[j - 1]};
    }
    std::pair<double, double> operator()(const AlternatingVCoeffs& c) const {
      if (n == 0) throw InvalidCoefficient("alternating-v model needs an order context n >= 1");
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^{j+1}
      return {1.0, sign * c.V / static_cast<double>(n)};
    }
    std::pair<double, double> operator()(const CustomCoeffs& c) const { return c.generator(n, j); }
  };
  return std::visit(Visitor{j, n}, kind_);
}

std::pair<double, double> CoefficientModel::coeffs(std::size_t j, std::size_t n) const {
  if (j == 0) return {1.0, 0.0};
  const auto [a, b] = raw(j, n);
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidCoefficient("a_" + std::to_string(j) + " = " + std::to_string(a) + " is not > 0");
  }
  if (!std::isfinite(b)) throw InvalidCoefficient("b_" + std::to_string(j) + " is not finite");
  return {a, b};
}

bool CoefficientModel::n_dependent() const {
  return std::holds_alternative<AlternatingVCoeffs>(kind_) || std::holds_alternative<CustomCoeffs>(kind_);
}

std::string CoefficientModel::name() const {
  struct Visitor {
    std::string operator()(const ConstantCoeffs& c) const {
      return (c.a == 1.0 && c.b == 0.0) ? "free" : "constant";
    }
    std::string operator()(const PeriodicCoeffs&) const { return "periodic"; }
    std::string operator()(const TableCoeffs&) const { return "table"; }
    std::string operator()(const AlternatingVCoeffs&) const { return "alternating-v"; }
    std::string operator()(const CustomCoeffs&) const { return "custom"; }
  };
  return std::visit(Visitor{}, kind_);
}

std::string CoefficientModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ConstantCoeffs>) {
          os << "constant a=" << c.a << " b=" << c.b;
        } else if constexpr (std::is_same_v<T, PeriodicCoeffs>) {
          os << "periodic p=" << c.a.size();
        } else if constexpr (std::is_same_v<T, TableCoeffs>) {
          os << "table rows=" << c.a.size();
        } else if constexpr (std::is_same_v<T, AlternatingVCoeffs>) {
          os << "alternating-v V=" << c.V;
        } else {
          os << "custom " << c.description;
        }
      },
      kind_);
  return os.str();
}

std::vector<PolyPair> eval_poly_sequence(const CoefficientModel& model, std::size_t n_ctx, cplx x,
                                         std::size_t up_to) {
  std::vector<PolyPair> out;
  out.reserve(up_to + 1);
  // Extended initial data: p_{-1} = 0, q_{-1} = -1 reproduce q_1 = 1/a_1.
  cplx p_prev = 0.0, q_prev = -1.0;
  cplx p = 1.0, q = 0.0;
  out.push_back({p, q, 0});
  double a_prev = 1.0;
  for (std::size_t l = 1; l <= up_to; ++l) {
    const auto [a, b] = model.coeffs(l, n_ctx);
    const cplx shift = x - b;
    const cplx p_next = (shift * p - a_prev * p_prev) / a;
    const cplx q_next = (shift * q - a_prev * q_prev) / a;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    a_prev = a;
    out.push_back({p, q, l});
  }
  return out;
}

std::vector<cplx> orthonormal_values(const CoefficientModel& model, std::size_t n_ctx, cplx x,
                                     std::size_t count) {
  std::vector<cplx> out;
  if (count == 0) return out;
  out.reserve(count);
  cplx p_prev = 0.0, p = 1.0;
  out.push_back(p);
  double a_prev = 1.0;
  for (std::size_t l = 1; l < count; ++l) {
    const auto [a, b] = model.coeffs(l, n_ctx);
    const cplx p_next = ((x - b) * p - a_prev * p_prev) / a;
    p_prev = p;
    p = p_next;
    a_prev = a;
    out.push_back(p);
  }
  return out;
}

std::size_t sturm_count(const CoefficientModel& model, std::size_t n, double x) {
  std::size_t count = 0;
  double d = 1.0;
  double a_prev = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto [a, b] = model.coeffs(i, n);
    // Pivot of the LDL^T factorisation of J^(n) - x.
    d = (i == 1) ? (b - x) : (b - x) - a_prev * a_prev / d;
    if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(b) + std::abs(x) + a_prev + 1.0);
    if (d < 0.0) ++count;
    a_prev = a;
  }
  return count;
}

double SpectrumSlice::mean_gap() const {
  if (scaled_zeros.size() < 2) return 0.0;
  return (scaled_zeros.back() - scaled_zeros.front()) / static_cast<double>(scaled_zeros.size() - 1);
}

std::vector<double> eigenvalues_in(const CoefficientModel& model, std::size_t n, double lo, double hi,
                                   double tol) {
  std::vector<double> out;
  if (n == 0 || !(hi >= lo)) return out;
  const double hi_closed = std::nextafter(hi, std::numeric_limits<double>::infinity());
  const std::size_t k_lo = sturm_count(model, n, lo);
  const std::size_t k_hi = sturm_count(model, n, hi_closed);
  out.reserve(k_hi - k_lo);
  for (std::size_t k = k_lo; k < k_hi; ++k) {
    // Invariant: count(left) <= k < count(right).
    double left = lo, right = hi_closed;
    while (right - left > tol) {
      const double mid = 0.5 * (left + right);
      if (mid <= left || mid >= right) break;
      if (sturm_count(model, n, mid) <= k) {
        left = mid;
      } else {
        right = mid;
      }
    }
    out.push_back(0.5 * (left + right));
  }
  return out;
}

SpectrumSlice scaled_zeros(const CoefficientModel& model, std::size_t n, double x0, double window,
                           double tol) {
  if (n == 0) throw InvalidCoefficient("scaled_zeros requires n >= 1");
  if (!(window > 0.0)) throw InvalidCoefficient("scaled_zeros requires window > 0");
  const double nd = static_cast<double>(n);
  SpectrumSlice slice{x0, n, window, {}};
  for (double lambda : eigenvalues_in(model, n, x0 - window / nd, x0 + window / nd, tol)) {
    const double s = nd * (lambda - x0);
    if (std::abs(s) <= window) slice.scaled_zeros.push_back(s);
  }
  return slice;
}

GaussRule gauss_quadrature(const CoefficientModel& model, std::size_t m, std::size_t n_ctx) {
  if (m == 0) throw InvalidCoefficient("gauss_quadrature requires m >= 1");
  Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 1 ? m - 1 : 0));
  for (std::size_t i = 1; i <= m; ++i) {
    const auto [a, b] = model.coeffs(i, n_ctx);
    diag(static_cast<Eigen::Index>(i - 1)) = b;
    if (i < m) sub(static_cast<Eigen::Index>(i - 1)) = a;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    rule.nodes[k] = solver.eigenvalues()(ki);
    const double v0 = solver.eigenvectors()(0, ki);
    rule.weights[k] = v0 * v0;
  }
  return rule;
}

}  // namespace cdscale
