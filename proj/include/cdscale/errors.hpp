#pragma once

#include <stdexcept>
#include <string>

namespace cdscale {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An accessed off-diagonal coefficient is not strictly positive, or a
/// coefficient is not finite.
class InvalidCoefficient : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be unimodular has |det - 1| above tolerance.
class DetNotOne : public Error {
 public:
  using Error::Error;
};

/// A table model was queried past its last row.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Off-diagonal kernel formula evaluated at (numerically) equal arguments.
class CoincidentArguments : public Error {
 public:
  using Error::Error;
};

/// A Hamiltonian value has an eigenvalue below the PSD tolerance.
class NotPSD : public Error {
 public:
  using Error::Error;
};

/// (r, s) sequence fails s_l r_{l-1} - r_l s_{l-1} = 1/a_l.
class WronskianViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (CSV table, JSON system, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdscale
