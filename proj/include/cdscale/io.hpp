#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdscale/canonical.hpp"
#include "cdscale/cdkernel.hpp"
#include "cdscale/jacobi.hpp"
#include "cdscale/limits.hpp"

namespace cdscale::io {

using json = nlohmann::json;

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

/// Header `a_re,a_im,b_re,b_im,re,im`, one row per grid cell, a-major.
void write_kernel_csv(std::ostream& os, const KernelGrid& grid);

/// Table model from CSV with header `j,a,b`; row j (0-based, contiguous)
/// holds (a_{j+1}, b_{j+1}). Errors carry the 1-based line number.
CoefficientModel read_table_csv(std::istream& is);
CoefficientModel read_table_csv_file(const std::string& path);
void write_table_csv(std::ostream& os, const std::vector<double>& a, const std::vector<double>& b);

json to_json(cplx z);
json to_json(const Mat2& m);
Mat2 mat2_from_json(const json& j);

json model_to_json(const CoefficientModel& model);

/// {"type": "constant" | "piecewise" | "coshsinh", ...}. Callable systems
/// are not serialisable.
json system_to_json(const CanonicalSystem& system);
CanonicalSystem system_from_json(const json& j);
CanonicalSystem read_system_file(const std::string& path);

json diagnostics_to_json(const DiagnosticsReport& report);
json equivalence_to_json(const EquivalenceReport& report);
/// Header `n,kernel_stat,trajectory_stat`.
void write_equivalence_csv(std::ostream& os, const EquivalenceReport& report);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

/// `PASS name measured=... tol=...`
std::string format_check(const CheckResult& c);

struct RunManifest {
  std::string command;
  json model;
  std::vector<std::size_t> n_list;
  double x0 = 0.0;
  json grids = json::object();
  json tolerances = json::object();
  std::vector<CheckResult> checks;
  json extra = json::object();

  bool all_passed() const;
  json to_json() const;
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Writes the text and a trailing newline; throws Error on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cdscale::io
