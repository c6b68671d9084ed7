#pragma once

#include <stdexcept>
#include <string>

namespace darkchain {

// Invalid arguments are reported with std::invalid_argument; the types below
// cover the numerical failure modes.

/// Two emitters closer than the kernel can resolve.
class SingularGeometry : public std::runtime_error {
 public:
  explicit SingularGeometry(const std::string& what) : std::runtime_error(what) {}
};

/// The adaptive integrator could not meet its tolerance (step-size underflow,
/// step budget exhausted, non-finite state).
class IntegrationFailure : public std::runtime_error {
 public:
  explicit IntegrationFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A density matrix left the physical cone beyond the monitored tolerance.
class PositivityViolation : public std::runtime_error {
 public:
  explicit PositivityViolation(const std::string& what) : std::runtime_error(what) {}
};

/// An effective (adiabatically eliminated) model was asked for parameters where
/// its closed form has no real solution.
class RegimeViolation : public std::runtime_error {
 public:
  explicit RegimeViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace darkchain
