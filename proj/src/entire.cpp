#include "cdscale/entire.hpp"

#include <cmath>

namespace cdscale::entire {

namespace {

constexpr double kSeriesRadius = 0.1;

// sum_{k>=0} u^k / (2k)!  and  sum_{k>=0} u^k / (2k+1)!
cplx cosh_series(cplx u) {
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= u / (double((2 * k - 1) * (2 * k)));
    sum += term;
  }
  return sum;
}

cplx sinhc_series(cplx u) {
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= u / (double((2 * k) * (2 * k + 1)));
    sum += term;
  }
  return sum;
}

// sum_{k>=1} k u^{k-1} / (2k+1)!
cplx sinhc_derivative_series(cplx u) {
  cplx fact_term = 1.0 / 6.0;  // u^0 / 3!
  cplx sum = fact_term;
  for (int k = 2; k < 14; ++k) {
    fact_term *= u / (double((2 * k) * (2 * k + 1)));
    sum += double(k) * fact_term;
  }
  return sum;
}

}  // namespace

cplx cosh_sqrt(cplx u) {
  if (std::abs(u) < kSeriesRadius) return cosh_series(u);
  return std::cosh(std::sqrt(u));
}

cplx sinhc_sqrt(cplx u) {
  if (std::abs(u) < kSeriesRadius) return sinhc_series(u);
  const cplx r = std::sqrt(u);
  return std::sinh(r) / r;
}

cplx sinhc_sqrt_derivative(cplx u) {
  if (std::abs(u) < kSeriesRadius) return sinhc_derivative_series(u);
  return (cosh_sqrt(u) - sinhc_sqrt(u)) / (2.0 * u);
}

}  // namespace cdscale::entire
