#include "cdscale/canonical.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "cdscale/entire.hpp"
#include "cdscale/errors.hpp"
#include "cdscale/transfer.hpp"

namespace cdscale {

void require_psd(const Mat2& h, double tol, const char* where) {
  const auto [lo, hi] = hermitian_eigenvalues(h);
  if (lo < -tol * std::max(1.0, std::abs(hi))) {
    throw NotPSD(std::string(where) + ": Hamiltonian has eigenvalue " + std::to_string(lo));
  }
}

CanonicalSystem CanonicalSystem::constant(const Mat2& h) {
  require_psd(h, kPsdTol, "constant system");
  return CanonicalSystem(ConstantH{h});
}

CanonicalSystem CanonicalSystem::piecewise(std::vector<double> breakpoints, std::vector<Mat2> matrices) {
  if (matrices.empty() || breakpoints.size() != matrices.size() + 1) {
    throw ParseError("piecewise system needs k matrices and k+1 breakpoints");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw ParseError("piecewise breakpoints must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k] > breakpoints[k - 1])) throw ParseError("piecewise breakpoints must increase");
  }
  for (const auto& m : matrices) require_psd(m, kPsdTol, "piecewise system");
  return CanonicalSystem(PiecewiseConstantH{std::move(breakpoints), std::move(matrices)});
}

CanonicalSystem CanonicalSystem::cosh_sinh(double v) { return CanonicalSystem(CoshSinhH{v}); }

CanonicalSystem CanonicalSystem::callable(std::string description, std::function<Mat2(double)> fn) {
  return CanonicalSystem(CallableH{std::move(description), std::move(fn)});
}

namespace {

Mat2 cosh_sinh_value(double v, double t) {
  const double c = 0.5 * std::cosh(t * v);
  const double s = 0.5 * std::sinh(t * v);
  return {c, s, s, c};
}

std::size_t piece_index(const PiecewiseConstantH& p, double t) {
  const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t);
  const auto k = static_cast<std::size_t>(std::distance(p.breakpoints.begin(), it));
  return std::clamp<std::size_t>(k == 0 ? 0 : k - 1, 0, p.matrices.size() - 1);
}

}  // namespace

Mat2 CanonicalSystem::raw(double t) const {
  struct Visitor {
    double t;
    Mat2 operator()(const ConstantH& c) const { return c.H; }
    Mat2 operator()(const PiecewiseConstantH& p) const { return p.matrices[piece_index(p, t)]; }
    Mat2 operator()(const CoshSinhH& c) const { return cosh_sinh_value(c.V, t); }
    Mat2 operator()(const CallableH& c) const { return c.fn(t); }
  };
  return std::visit(Visitor{t}, kind_);
}

Mat2 CanonicalSystem::hamiltonian(double t) const {
  const Mat2 h = raw(t);
  if (std::holds_alternative<CallableH>(kind_)) require_psd(h, kPsdTol, "callable system");
  return h;
}

Mat2 CanonicalSystem::hamiltonian_on(double t, double lo, double hi) const {
  if (const auto* p = std::get_if<PiecewiseConstantH>(&kind_)) return p->matrices[piece_index(*p, 0.5 * (lo + hi))];
  return hamiltonian(t);
}

Mat2 CanonicalSystem::integral(double t) const {
  struct Visitor {
    double t;
    Mat2 operator()(const ConstantH& c) const { return t * c.H; }
    Mat2 operator()(const PiecewiseConstantH& p) const {
      Mat2 acc = Mat2::zero();
      for (std::size_t k = 0; k < p.matrices.size(); ++k) {
        const double lo = p.breakpoints[k];
        const double hi = std::min(p.breakpoints[k + 1], t);
        if (hi <= lo) break;
        acc += (hi - lo) * p.matrices[k];
      }
      return acc;
    }
    Mat2 operator()(const CoshSinhH& c) const {
      // sinh(tV)/V = t S(t^2 V^2),  (cosh(tV) - 1)/V = (t^2 V / 2) S((tV/2)^2)^2
      const double tv = t * c.V;
      const double sh = t * entire::sinhc_sqrt(tv * tv).real();
      const double half = entire::sinhc_sqrt(0.25 * tv * tv).real();
      const double ch1 = 0.5 * t * t * c.V * half * half;
      return {0.5 * sh, 0.5 * ch1, 0.5 * ch1, 0.5 * sh};
    }
    Mat2 operator()(const CallableH& c) const {
      const int steps = 2000;
      const double h = t / steps;
      Mat2 acc = c.fn(0.0) + c.fn(t);
      for (int i = 1; i < steps; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * c.fn(h * i);
      return (h / 3.0) * acc;
    }
  };
  if (t <= 0.0) return Mat2::zero();
  return std::visit(Visitor{std::min(t, 1.0)}, kind_);
}

std::vector<double> CanonicalSystem::knots() const {
  if (const auto* p = std::get_if<PiecewiseConstantH>(&kind_)) return p->breakpoints;
  return {0.0, 1.0};
}

std::string CanonicalSystem::name() const {
  struct Visitor {
    std::string operator()(const ConstantH&) const { return "constant"; }
    std::string operator()(const PiecewiseConstantH&) const { return "piecewise"; }
    std::string operator()(const CoshSinhH&) const { return "coshsinh"; }
    std::string operator()(const CallableH&) const { return "callable"; }
  };
  return std::visit(Visitor{}, kind_);
}

std::vector<double> integration_mesh(const CanonicalSystem& system, std::span<const double> extra, double h) {
  if (!(h > 0.0)) throw ParseError("integration step must be positive");
  std::vector<double> knots = system.knots();
  for (double t : extra) {
    if (!(t >= 0.0 && t <= 1.0)) throw IndexOutOfRange("t-grid values must lie in [0, 1]");
    knots.push_back(t);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(), [](double x, double y) { return y - x < 1e-14; }),
              knots.end());
  std::vector<double> mesh{knots.front()};
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const double lo = knots[k - 1], hi = knots[k];
    auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9));
    steps = std::max<std::size_t>(2, steps + (steps % 2));
    for (std::size_t i = 1; i < steps; ++i) mesh.push_back(lo + (hi - lo) * static_cast<double>(i) / steps);
    mesh.push_back(hi);
  }
  return mesh;
}

Mat2 solve_constant(const Mat2& H, cplx z, double t) {
  require_psd(H, 1e-10, "solve_constant");
  return expm((z * t) * (kSymplecticInv * H));
}

namespace {

// One RK4 step for Y' = z J^{-1} H(t) Y on the mesh segment [lo, hi].
template <class Y>
Y rk4_step(const CanonicalSystem& sys, cplx z, double t, double dt, double lo, double hi, const Y& y) {
  auto f = [&](double s, const Y& v) { return (z * (kSymplecticInv * sys.hamiltonian_on(s, lo, hi))) * v; };
  const Y k1 = f(t, y);
  const Y k2 = f(t + 0.5 * dt, y + (0.5 * dt) * k1);
  const Y k3 = f(t + 0.5 * dt, y + (0.5 * dt) * k2);
  const Y k4 = f(t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Segment bounds of the knot interval containing mesh step i.
struct Segments {
  std::vector<double> knots;
  std::pair<double, double> around(double t0, double t1) const {
    const double mid = 0.5 * (t0 + t1);
    const auto it = std::upper_bound(knots.begin(), knots.end(), mid);
    const double hi = it == knots.end() ? knots.back() : *it;
    const double lo = it == knots.begin() ? knots.front() : *(it - 1);
    return {lo, hi};
  }
};

template <class Y>
std::vector<Y> integrate_on_mesh(const CanonicalSystem& sys, cplx z, const std::vector<double>& mesh, const Y& y0) {
  const Segments seg{sys.knots()};
  std::vector<Y> ys;
  ys.reserve(mesh.size());
  ys.push_back(y0);
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    const auto [lo, hi] = seg.around(mesh[i - 1], mesh[i]);
    ys.push_back(rk4_step(sys, z, mesh[i - 1], mesh[i] - mesh[i - 1], lo, hi, ys.back()));
  }
  return ys;
}

}  // namespace

CanonicalSolution solve_ode(const CanonicalSystem& system, cplx z, std::span<const double> t_grid, double h) {
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (t_grid[i] < t_grid[i - 1]) throw IndexOutOfRange("solve_ode requires a sorted t-grid");
  }
  const auto mesh = integration_mesh(system, t_grid, h);
  const auto ys = integrate_on_mesh(system, z, mesh, Mat2::identity());
  CanonicalSolution sol{z, {}};
  sol.samples.reserve(t_grid.size());
  for (double t : t_grid) {
    auto it = std::lower_bound(mesh.begin(), mesh.end(), t - 1e-14);
    const auto idx = static_cast<std::size_t>(std::distance(mesh.begin(), it));
    sol.samples.push_back({t, ys[std::min(idx, ys.size() - 1)]});
  }
  return sol;
}

Vec2 solve_column(const CanonicalSystem& system, cplx z, double h) {
  const auto mesh = integration_mesh(system, {}, h);
  const Segments seg{system.knots()};
  Vec2 u{1.0, 0.0};
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    const auto [lo, hi] = seg.around(mesh[i - 1], mesh[i]);
    u = rk4_step(system, z, mesh[i - 1], mesh[i] - mesh[i - 1], lo, hi, u);
  }
  return u;
}

cplx kernel_from_solutions(const Mat2& qa, const Mat2& qb, cplx a, cplx b) {
  if (coincident(a, b)) throw CoincidentArguments("kernel_from_solutions: a and b coincide");
  return det_cols(qa.col1(), qb.col1()) / (a - b);
}

cplx confluent_kernel(const std::function<Vec2(cplx)>& column, cplx a, double delta) {
  const Vec2 ua = column(a);
  auto derivative = [&](double d) { return (1.0 / (2.0 * d)) * (column(a + d) - column(a - d)); };
  const Vec2 d1 = derivative(delta);
  const Vec2 d2 = derivative(0.5 * delta);
  const Vec2 du = (1.0 / 3.0) * (4.0 * d2 - d1);
  return -det_cols(ua, du);
}

cplx canonical_kernel(const CanonicalSystem& system, cplx a, cplx b, double h) {
  auto column = [&](cplx z) { return solve_column(system, z, h); };
  if (coincident(a, b)) return confluent_kernel(column, a);
  return det_cols(column(a), column(b)) / (a - b);
}

cplx kernel_integral_form(const CanonicalSystem& system, cplx a, cplx b, double h) {
  const auto mesh = integration_mesh(system, {}, h);
  const auto ua = integrate_on_mesh(system, std::conj(a), mesh, Vec2{1.0, 0.0});
  const auto ub = integrate_on_mesh(system, b, mesh, Vec2{1.0, 0.0});
  const Segments seg{system.knots()};
  auto integrand = [&](std::size_t i, double lo, double hi) {
    const Vec2 hu = system.hamiltonian_on(mesh[i], lo, hi) * ub[i];
    return std::conj(ua[i].v1) * hu.v1 + std::conj(ua[i].v2) * hu.v2;
  };
  cplx total = 0.0;
  // Simpson over consecutive step pairs; each knot segment has an even count.
  for (std::size_t i = 0; i + 2 < mesh.size(); i += 2) {
    const auto [lo, hi] = seg.around(mesh[i], mesh[i + 2]);
    const double width = mesh[i + 2] - mesh[i];
    total += (width / 6.0) * (integrand(i, lo, hi) + 4.0 * integrand(i + 1, lo, hi) + integrand(i + 2, lo, hi));
  }
  return total;
}

cplx hermite_biehler(const CanonicalSystem& system, cplx z, double h) {
  const Vec2 u = solve_column(system, z, h);
  return u.v1 + cplx(0.0, 1.0) * u.v2;
}

cplx hermite_biehler_kernel(const CanonicalSystem& system, cplx z, cplx zeta, double h) {
  const cplx zb = std::conj(z);
  if (coincident(zb, zeta)) throw CoincidentArguments("hermite_biehler_kernel: conj(z) and zeta coincide");
  const cplx ez = hermite_biehler(system, z, h);
  const cplx ezeta = hermite_biehler(system, zeta, h);
  const cplx ezb = hermite_biehler(system, zb, h);
  const cplx ezetab = hermite_biehler(system, std::conj(zeta), h);
  return (std::conj(ez) * ezeta - ezb * std::conj(ezetab)) / (cplx(0.0, 2.0) * (zb - zeta));
}

KernelGrid canonical_grid(const CanonicalSystem& system, const std::vector<cplx>& a_values,
                          const std::vector<cplx>& b_values, double h, Exec exec) {
  KernelGrid g{0.0, 0, a_values, b_values, {}};
  g.values.assign(a_values.size(), std::vector<cplx>(b_values.size()));
  const auto na = static_cast<std::ptrdiff_t>(a_values.size());
  const auto nb = static_cast<std::ptrdiff_t>(b_values.size());
  std::vector<Vec2> ua(a_values.size()), ub(b_values.size());
  auto column = [&](cplx z) { return solve_column(system, z, h); };
  auto solve_all = [&](std::ptrdiff_t i) {
    if (i < na) {
      ua[i] = column(a_values[i]);
    } else {
      ub[i - na] = column(b_values[i - na]);
    }
  };
  auto fill = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    const cplx a = a_values[i], b = b_values[j];
    g.values[i][j] = coincident(a, b) ? confluent_kernel(column, a) : det_cols(ua[i], ub[j]) / (a - b);
  };
  if (exec.is_serial()) {
    for (std::ptrdiff_t i = 0; i < na + nb; ++i) solve_all(i);
    for (std::ptrdiff_t i = 0; i < na; ++i)
      for (std::ptrdiff_t j = 0; j < nb; ++j) fill(i, j);
    return g;
  }
  const int team = exec.threads > 0 ? exec.threads : omp_get_max_threads();
  // CallableH may throw NotPSD; fall back to the serial path to surface it.
  bool failed = false;
#pragma omp parallel for schedule(dynamic) num_threads(team) reduction(|| : failed)
  for (std::ptrdiff_t i = 0; i < na + nb; ++i) {
    try {
      solve_all(i);
    } catch (...) {
      failed = true;
    }
  }
  if (!failed) {
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(team) reduction(|| : failed)
    for (std::ptrdiff_t i = 0; i < na; ++i) {
      for (std::ptrdiff_t j = 0; j < nb; ++j) {
        try {
          fill(i, j);
        } catch (...) {
          failed = true;
        }
      }
    }
  }
  if (failed) return canonical_grid(system, a_values, b_values, h, Exec::serial());
  return g;
}

RSSequence rs_from_model(const CoefficientModel& model, std::size_t count, std::size_t n_ctx) {
  RSSequence rs;
  if (count == 0) return rs;
  for (const auto& pq : eval_poly_sequence(model, n_ctx, 0.0, count - 1)) {
    rs.r.push_back(pq.p.real());
    rs.s.push_back(pq.q.real());
    rs.a.push_back(model.a(pq.ell, n_ctx));
  }
  return rs;
}

double wronskian_defect(const RSSequence& rs) {
  double worst = 0.0;
  for (std::size_t l = 1; l < rs.r.size(); ++l) {
    const double t1 = rs.s[l] * rs.r[l - 1];
    const double t2 = rs.r[l] * rs.s[l - 1];
    const double scale = std::max({1.0, std::abs(t1) + std::abs(t2), 1.0 / rs.a[l]});
    worst = std::max(worst, std::abs(t1 - t2 - 1.0 / rs.a[l]) / scale);
  }
  return worst;
}

CoefficientModel discrete_to_jacobi(const RSSequence& rs, double tol) {
  const std::size_t size = rs.r.size();
  if (size < 2 || rs.s.size() != size || rs.a.size() != size) {
    throw WronskianViolation("RS sequence needs equal-length r, s, a with at least two entries");
  }
  if (rs.a[0] != 1.0) throw WronskianViolation("RS sequence requires a_0 = 1");
  for (std::size_t l = 1; l < size; ++l) {
    if (!(rs.a[l] > 0.0)) throw InvalidCoefficient("RS sequence requires a_l > 0");
  }
  if (const double d = wronskian_defect(rs); d > tol) {
    throw WronskianViolation("Wronskian defect " + std::to_string(d) + " exceeds tolerance");
  }
  auto r_at = [&](std::ptrdiff_t l) { return l < 0 ? 0.0 : rs.r[static_cast<std::size_t>(l)]; };
  auto s_at = [&](std::ptrdiff_t l) { return l < 0 ? -1.0 : rs.s[static_cast<std::size_t>(l)]; };
  std::vector<double> a(rs.a.begin() + 1, rs.a.end());
  std::vector<double> b(size - 1);
  for (std::size_t l = 1; l < size; ++l) {
    const auto li = static_cast<std::ptrdiff_t>(l);
    b[l - 1] = rs.a[l] * rs.a[l - 1] * (r_at(li) * s_at(li - 2) - s_at(li) * r_at(li - 2));
  }
  return CoefficientModel::table(std::move(a), std::move(b));
}

std::vector<cplx> canonical_polynomials(const RSSequence& rs, cplx x) {
  std::vector<cplx> out;
  out.reserve(rs.r.size());
  Vec2 u{1.0, 0.0};
  for (std::size_t l = 0; l < rs.r.size(); ++l) {
    out.push_back(rs.r[l] * u.v1 - rs.s[l] * u.v2);
    const Mat2 h = h_matrix(rs.r[l], rs.s[l]);
    u = u + x * ((kSymplecticInv * h) * u);
  }
  return out;
}

}  // namespace cdscale
