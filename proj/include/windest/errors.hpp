#pragma once

#include <stdexcept>

namespace windest {

/// Thrown when an operating point leaves the region where the power
/// coefficient (and therefore the torque model) is defined.
class EnvelopeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The frequency grid did not contain the minimum of the distance to the
/// forbidden circle.
class GridCoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A margin search found a certificate pattern that is not monotone in the
/// searched parameter.
class NonMonotoneCertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace windest
