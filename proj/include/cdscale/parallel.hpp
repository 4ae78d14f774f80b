#pragma once

namespace cdscale {

/// Execution policy for grid sweeps. threads == 0 selects the serial
/// reference path; otherwise an OpenMP team of that size (or the runtime
/// default for threads < 0). Both paths produce bit-identical output.
struct Exec {
  int threads = 0;

  static Exec serial() { return {0}; }
  static Exec parallel(int n = -1) { return {n}; }
  bool is_serial() const { return threads == 0; }
};

}  // namespace cdscale
