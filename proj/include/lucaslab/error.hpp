#pragma once

#include <stdexcept>
#include <string>

namespace lucaslab {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- numerics ---

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NonFiniteIntegrand : public Error {
 public:
  NonFiniteIntegrand(double where)
      : Error("integrand evaluated to a non-finite value at s=" + std::to_string(where)),
        location(where) {}
  double location;
};

class InvalidEnvelope : public Error {
 public:
  using Error::Error;
};

class StepSizeUnderflow : public Error {
 public:
  StepSizeUnderflow(double t)
      : Error("ODE step size underflow at t=" + std::to_string(t)), at_time(t) {}
  double at_time;
};

class NonFiniteState : public Error {
 public:
  NonFiniteState(double t)
      : Error("ODE state or derivative became non-finite at t=" + std::to_string(t)),
        at_time(t) {}
  double at_time;
};

// --- models ---

class DomainError : public Error {
 public:
  using Error::Error;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class NonPositiveC0 : public Error {
 public:
  using Error::Error;
};

class Con1Violated : public Error {
 public:
  using Error::Error;
};

class Conn1Violated : public Error {
 public:
  using Error::Error;
};

class DenominatorVanished : public Error {
 public:
  DenominatorVanished(double t)
      : Error("trajectory denominator vanished near t=" + std::to_string(t)), at_time(t) {}
  double at_time;
};

// --- sweep / cli ---

class RejectionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lucaslab
