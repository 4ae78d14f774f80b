#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdscale/io.hpp"
#include "cdscale/jacobi.hpp"
#include "cdscale/limits.hpp"
#include "cdscale/parallel.hpp"

namespace cdscale::verify {

using io::CheckResult;

/// Independent draws with a_j in [0.5, 1.5], b_j in [-0.5, 0.5].
CoefficientModel random_table(std::uint64_t seed, std::size_t n);

/// Trace-class perturbation of the free matrix: a_j = 1 + e_j / j^2,
/// b_j = d_j / j^2 with |e_j|, |d_j| <= 0.4. Bounded polynomials on (-2, 2).
CoefficientModel random_decaying(std::uint64_t seed, std::size_t n);

struct Options {
  CoefficientModel model = CoefficientModel::free();
  /// Unset: each suite uses its own default order.
  std::optional<std::size_t> n;
  double x0 = 0.0;
  std::uint64_t seed = 7;
  double V = 1.0;
  double tol = 0.02;
  BulkPointData bulk = BulkPointData::free_at_zero();
  std::vector<std::size_t> n_list{500, 1000, 2000, 4000};
  Exec exec = Exec::serial();
};

/// CLI suite names: transfer-identities, kernel-identities, section5
/// (alternating_closed_forms), appendix-roundtrip (inverse_map_roundtrip),
/// thm25 (scaling_limit_equivalence).
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& name, const Options& opts);

std::vector<CheckResult> transfer_identities(const Options& opts);
std::vector<CheckResult> kernel_identities(const Options& opts);
std::vector<CheckResult> alternating_closed_forms(const Options& opts);
std::vector<CheckResult> inverse_map_roundtrip(const Options& opts);
std::vector<CheckResult> scaling_limit_equivalence(const Options& opts);

}  // namespace cdscale::verify
