#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrw {

enum class ErrorKind {
  config,
  contract,
  convention,
  domain,
  integration,
  measurement_impossible,
  truncation,
  resolution,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base class of every error raised by the library. The kind decides the CLI
/// exit code and the tag written into machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error(ErrorKind::config, message) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message) : Error(ErrorKind::contract, message) {}
};

class ConventionError : public Error {
 public:
  explicit ConventionError(const std::string& message)
      : Error(ErrorKind::convention, message) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(ErrorKind::domain, message) {}
};

class MeasurementImpossible : public Error {
 public:
  explicit MeasurementImpossible(const std::string& message)
      : Error(ErrorKind::measurement_impossible, message) {}
};

class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& message)
      : Error(ErrorKind::resolution, message) {}
};

/// Raised when an integrator fails to converge or drifts out of tolerance.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& message, double residual)
      : Error(ErrorKind::integration, message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Raised when a Fock cutoff leaves more probability mass than allowed.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& message, double tail_mass)
      : Error(ErrorKind::truncation, message), tail_mass_(tail_mass) {}

  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

}  // namespace qrw
