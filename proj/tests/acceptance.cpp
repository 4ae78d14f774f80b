// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cdscale/canonical.hpp"
#include "cdscale/cdkernel.hpp"
#include "cdscale/jacobi.hpp"
#include "cdscale/limits.hpp"
#include "cdscale/models.hpp"
#include "cdscale/transfer.hpp"
#include "cdscale/verify.hpp"

using namespace cdscale;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what, double measured, double bound) {
    pass = pass && ok;
    detail << ' ' << what << '=' << measured << (ok ? "<=" : ">") << bound;
  }
  void at_most(const std::string& what, double measured, double bound) {
    require(std::isfinite(measured) && measured <= bound, what, measured, bound);
  }
  void flag(const std::string& what, bool ok) {
    pass = pass && ok;
    detail << ' ' << what << '=' << (ok ? "yes" : "no");
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<double>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

double rel_diff(const Mat2& x, const Mat2& y) { return max_abs(x - y) / std::max(1.0, max_abs(y)); }

Outcome exact_identities() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t big = 10000;
  struct Case {
    CoefficientModel model;
    double x0;
  };
  const std::vector<Case> cases{{CoefficientModel::free(), 0.5},
                                {CoefficientModel::alternating_v(1.0), 0.0},
                                {verify::random_decaying(1, big), 0.3},
                                {CoefficientModel::periodic({1.0, 0.6}, {0.2, -0.2}), 1.0}};
  double det_err = 0.0, col_err = 0.0, q_err = 0.0, conj_err = 0.0;
  const auto ts = uniform_grid(0.0, 1.0, 11);
  for (const auto& c : cases) {
    Mat2 T = Mat2::identity();
    for (std::size_t l = 1; l <= big; ++l) {
      T = one_step(c.model, big, l, c.x0) * T;
      det_err = std::max(det_err, std::abs(T.det() - 1.0));
      if (l == 1 || l == 7 || l == 1000 || l == big) {
        col_err = std::max(col_err, rel_diff(T, transfer_column_form(c.model, big, l, c.x0)));
      }
      if (l <= 200) {
        const Mat2 lhs = inverse_unimodular(one_step(c.model, big, l, c.x0)) * one_step(c.model, big, l, c.x0 + 0.9);
        conj_err = std::max(conj_err, max_abs(lhs - Mat2{1.0, 0.0, -0.9, 1.0}));
      }
    }
    const std::size_t n = 2000;
    const auto h = h_sequence(c.model, n, c.x0, n);
    for (cplx a : {cplx(-5.0), cplx(2.5), cplx(1.0, 1.0)}) {
      const auto d = q_trajectory_direct(c.model, n, c.x0, a, ts);
      const auto r = q_trajectory_recursive(h, n, a, ts);
      for (std::size_t i = 0; i < ts.size(); ++i) q_err = std::max(q_err, rel_diff(d.samples[i].Q, r.samples[i].Q));
    }
  }
  double kernel_err = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (std::size_t n : {std::size_t{10}, std::size_t{500}, std::size_t{2000}}) {
      const auto m = verify::random_decaying(seed, n);
      const double x0 = -0.6 + 0.3 * static_cast<double>(seed), nd = static_cast<double>(n);
      const auto h = h_sequence(m, n, x0, n);
      for (auto [a, b] : {std::pair<cplx, cplx>{-4.0, 1.0}, {0.5, 3.0}, {cplx(1.0, 0.5), -2.0}}) {
        const cplx x = x0 + a / nd, y = x0 + b / nd;
        const double env = std::sqrt(std::abs(kernel_sum(m, n, n, x, std::conj(x))) *
                                     std::abs(kernel_sum(m, n, n, y, std::conj(y))));
        const cplx s = kernel_sum(m, n, n, x, y);
        kernel_err = std::max(kernel_err, std::abs(s - kernel_cd(m, n, n, x, y)) / env);
        kernel_err = std::max(kernel_err, std::abs(s - nd * kernel_det_q(q_final(h, n, a), q_final(h, n, b), a, b)) / env);
      }
    }
  }
  o.at_most("det_T", det_err, 1e-8);
  o.at_most("column_form", col_err, 1e-9);
  o.at_most("kernel_forms", kernel_err, 1e-8);
  o.at_most("q_direct_vs_recursive", q_err, 1e-8);
  o.at_most("conjugation", conj_err, 1e-12);
  o.at_most("seconds", seconds_since(t0), 10.0);
  return o;
}

Outcome free_sine_universality() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto pts = to_complex(uniform_grid(-5.0, 5.0, 101));
  std::vector<double> stats;
  for (std::size_t n : {500, 1000, 2000, 4000}) {
    stats.push_back(sine_compare(scaled_grid(CoefficientModel::free(), n, 0.0, pts, pts, Exec::parallel()),
                                 0.5 / kPi, 1.0 / kPi));
  }
  o.at_most("sup_n4000", stats.back(), 0.02);
  o.flag("decreasing[" + join(stats) + "]", strictly_decreasing(stats));
  o.at_most("seconds", seconds_since(t0), 60.0);
  return o;
}

Outcome free_trajectory() {
  Outcome o;
  const auto a = uniform_grid(-5.0, 5.0, 101), t = uniform_grid(0.0, 1.0, 101);
  auto rot = [](cplx aa, double tt) {
    const cplx th = 0.5 * aa * tt;
    return Mat2{std::cos(th), std::sin(th), -std::sin(th), std::cos(th)};
  };
  std::vector<double> stats;
  for (std::size_t n : {500, 1000, 2000, 4000}) {
    stats.push_back(trajectory_distance(h_sequence(CoefficientModel::free(), n, 0.0, n), n, a, t, rot, Exec::parallel()));
  }
  o.at_most("sup_n4000", stats.back(), 0.02);
  o.flag("decreasing[" + join(stats) + "]", strictly_decreasing(stats));
  return o;
}

Outcome alternating_cross_pipeline() {
  Outcome o;
  const double V = 1.0, tol = 0.02;
  const std::size_t n = 4000;
  const auto pts = to_complex(uniform_grid(-5.0, 5.0, 41));
  const auto discrete = scaled_grid(CoefficientModel::alternating_v(V), n, 0.0, pts, pts, Exec::parallel());
  const auto continuum = canonical_grid(models::limit_system(V), pts, pts, 1e-3, Exec::parallel());
  double cross = 0.0, raw = 0.0, divided = 0.0, reduction = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const cplx a = pts[i], b = pts[j], v = discrete.values[i][j];
      cross = std::max(cross, std::abs(v - continuum.values[i][j]));
      const auto cand = models::limit_kernel_candidate(V, a, b);
      divided = std::max(divided, std::abs(v - cand.divided));
      if (i != j) raw = std::max(raw, std::abs(v - cand.raw));
      const cplx sine = i == j ? cplx(0.5) : std::sin(0.5 * (a - b)) / (a - b);
      reduction = std::max(reduction, std::abs(models::limit_kernel_candidate(0.0, a, b).divided - sine));
    }
  }
  o.at_most("vs_canonical", cross, tol);
  const bool raw_ok = raw <= tol, div_ok = divided <= tol;
  o.flag("exactly_one_variant(raw=" + std::to_string(raw) + ",divided=" + std::to_string(divided) + ")",
         raw_ok != div_ok);
  o.at_most("matching_variant_V0_reduction", div_ok ? reduction : 1.0, 1e-12);
  return o;
}

Outcome alternating_closed_forms() {
  Outcome o;
  double lam = 0.0;
  for (double V : {0.0, 0.3, 1.0, 4.0}) {
    for (std::size_t n : {1, 2, 10, 500, 10000}) {
      const auto [lm, lp] = models::lambda_pm(V, n);
      lam = std::max(lam, std::abs(lm * lp - 1.0));
    }
  }
  double qhat = 0.0;
  for (double V : {0.5, 1.0, 3.0}) {
    for (std::size_t n : {500, 2000}) {
      Mat2 tf = Mat2::identity(), tp = Mat2::identity();
      const auto pert = CoefficientModel::alternating_v(V);
      for (std::size_t l = 1; l <= 500; ++l) {
        tf = one_step(CoefficientModel::free(), n, l, 0.0) * tf;
        tp = one_step(pert, n, l, 0.0) * tp;
        qhat = std::max(qhat, rel_diff(models::qhat_closed(V, n, l), inverse_unimodular(tf) * tp));
      }
    }
  }
  const std::size_t n = 10000, bins = 50;
  const auto est = piecewise_estimate(h_sequence(CoefficientModel::alternating_v(1.0), n, 0.0, n), n, bins);
  const auto limit = models::limit_system(1.0);
  double pw = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / bins;
    pw = std::max(pw, max_abs(est.hamiltonian(t) - limit.hamiltonian(t)));
  }
  o.at_most("lambda_product", lam, 1e-14);
  o.at_most("qhat_closed_vs_product", qhat, 1e-9);
  o.at_most("piecewise_vs_coshsinh", pw, 0.02);
  return o;
}

Outcome canonical_identities() {
  Outcome o;
  const auto bpd = BulkPointData::make(0.0, 0.4, 0.25, -0.6);
  double forms = 0.0;
  const std::vector<std::pair<cplx, cplx>> pairs{{1.0, -2.0}, {4.5, 0.5}, {cplx(0.5, 1.0), -3.0}, {cplx(-1.0, -0.5), cplx(2.0, 0.3)}};
  for (const auto& sys : {CanonicalSystem::constant(bpd.hamiltonian()), CanonicalSystem::cosh_sinh(1.0)}) {
    for (const auto& [a, b] : pairs) {
      const cplx det_form = canonical_kernel(sys, a, b);
      forms = std::max(forms, std::abs(det_form - kernel_integral_form(sys, a, b)));
      forms = std::max(forms, std::abs(det_form - hermite_biehler_kernel(sys, std::conj(a), b)));
    }
  }
  double sine = 0.0, det_h = 0.0;
  for (const auto& b : {BulkPointData::free_at_zero(), bpd, BulkPointData::make(0.5, 1.3, 0.1, 2.0)}) {
    det_h = std::max(det_h, std::abs(b.hamiltonian().det() - kPi * kPi * b.rho() * b.rho()));
    const auto sys = CanonicalSystem::constant(b.hamiltonian());
    for (double a : {-5.0, -1.5, 0.0, 2.0, 5.0}) {
      for (double bb : {-4.0, 0.5, 3.0, 5.0}) sine = std::max(sine, std::abs(canonical_kernel(sys, a, bb) - b.sine_kernel(a, bb)));
    }
  }
  const auto cs = CanonicalSystem::cosh_sinh(1.0);
  const std::vector<double> one{1.0};
  const Mat2 ref = solve_ode(cs, 12.0, one, 1e-4).final();
  const double factor = max_abs(solve_ode(cs, 12.0, one, 0.1).final() - ref) /
                        max_abs(solve_ode(cs, 12.0, one, 0.05).final() - ref);
  o.at_most("kernel_forms", forms, 1e-6);
  o.at_most("constant_H_sine", sine, 1e-8);
  o.at_most("det_H", det_h, 1e-10);
  o.require(factor >= 12.0 && factor <= 20.0, "rk4_halving_factor", factor, 20.0);
  return o;
}

Outcome inverse_map() {
  Outcome o;
  double b_err = 0.0, wr = 0.0;
  const std::size_t n = 50;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = verify::random_table(seed, n);
    const auto rs = rs_from_model(m, n + 1);
    for (std::size_t l = 1; l <= n; ++l) {
      wr = std::max(wr, std::abs(rs.s[l] * rs.r[l - 1] - rs.r[l] * rs.s[l - 1] - 1.0 / rs.a[l]));
    }
    const auto back = discrete_to_jacobi(rs);
    for (std::size_t l = 1; l <= n; ++l) b_err = std::max(b_err, std::abs(back.b(l) - m.b(l)));
  }
  o.at_most("b_recovery", b_err, 1e-9);
  o.at_most("wronskian", wr, 1e-10);
  return o;
}

Outcome zero_spacing() {
  Outcome o;
  const std::size_t n = 5000;
  const double window = 40.0, nd = static_cast<double>(n);
  const auto model = CoefficientModel::free();
  const auto slice = scaled_zeros(model, n, 0.0, window);
  const double gap_err = std::abs(slice.mean_gap() / (2.0 * kPi) - 1.0);

  // Zeros located independently from sign changes of p_n.
  auto pn = [&](double x) { return orthonormal_values(model, n, x, n + 1).back().real(); };
  std::vector<double> sign_zeros;
  const double step = 0.25 / nd;
  double lo = -(window + 1.0) / nd, flo = pn(lo);
  for (double hi = lo + step; hi <= (window + 1.0) / nd; hi += step) {
    const double fhi = pn(hi);
    if (flo == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
      double l = lo, h = hi, fl = flo;
      for (int it = 0; it < 60 && h - l > 1e-16; ++it) {
        const double mid = 0.5 * (l + h), fm = pn(mid);
        if ((fm < 0.0) == (fl < 0.0)) {
          l = mid;
          fl = fm;
        } else {
          h = mid;
        }
      }
      const double z = nd * 0.5 * (l + h);
      if (std::abs(z) <= window) sign_zeros.push_back(z);
    }
    lo = hi;
    flo = fhi;
  }
  double match = sign_zeros.size() == slice.scaled_zeros.size() ? 0.0 : 1.0;
  for (std::size_t i = 0; i < std::min(sign_zeros.size(), slice.scaled_zeros.size()); ++i) {
    match = std::max(match, std::abs(sign_zeros[i] - slice.scaled_zeros[i]));
  }
  o.at_most("mean_gap_rel_err", gap_err, 0.02);
  o.at_most("sturm_vs_sign_changes", match, 1e-8);
  return o;
}

Outcome free_diagnostics() {
  Outcome o;
  const std::size_t n = 10000;
  const auto cand = CanonicalSystem::constant(Mat2::diag(0.5, 0.5));
  const auto rep = diagnostics(h_sequence(CoefficientModel::free(), n, 0.0, n), n, &cand);
  o.at_most("matrix_conv", *rep.matrix_conv, 2e-4);
  o.at_most("max_over_n", rep.max_over_n, 2e-4);
  for (const auto& d : rep.decay_profile) o.at_most("L*decay(L=" + std::to_string(int(d.L)) + ")", d.L * d.value, 1.1 * rep.avg_norm);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact identities", exact_identities},
      {"free Jacobi sine-kernel universality", free_sine_universality},
      {"free Jacobi trajectory convergence", free_trajectory},
      {"alternating V cross-pipeline kernel", alternating_cross_pipeline},
      {"alternating V closed forms", alternating_closed_forms},
      {"canonical system kernel identities", canonical_identities},
      {"inverse map round trip", inverse_map},
      {"zero spacing", zero_spacing},
      {"Cesaro diagnostics", free_diagnostics},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    all = all && o.pass;
    std::printf("criterion %zu: %s %s:%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.str().c_str());
  }
  return all ? 0 : 1;
}
