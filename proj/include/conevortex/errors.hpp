#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace conevortex {

enum class ErrorKind {
  Domain,          // argument outside the mathematical domain
  Range,           // result outside the supported / representable range
  NonConvergence,  // iteration or truncation cap reached
  Degenerate,      // band edge or direction on an interval endpoint
  Pole,            // singular direction of the zero-thickness amplitude
  Divergence,      // integral is infinite
  Resonance,       // vanishing Wronskian denominator
  Config           // malformed run configuration
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::Range, what) {}
};

/// Carries the history of the monitored quantity (residuals, term magnitudes).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history = {})
      : Error(ErrorKind::NonConvergence, what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

class DegenerateGeometry : public Error {
 public:
  explicit DegenerateGeometry(const std::string& what) : Error(ErrorKind::Degenerate, what) {}
};

class PoleSignal : public Error {
 public:
  PoleSignal(const std::string& what, double direction)
      : Error(ErrorKind::Pole, what), direction_(direction) {}
  /// The divergent direction, normalized to [0, 2π).
  double direction() const noexcept { return direction_; }

 private:
  double direction_;
};

class DivergenceSignal : public Error {
 public:
  explicit DivergenceSignal(const std::string& what) : Error(ErrorKind::Divergence, what) {}
};

class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, long mode) : Error(ErrorKind::Resonance, what), mode_(mode) {}
  long mode() const noexcept { return mode_; }

 private:
  long mode_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& key_path, const std::string& what)
      : Error(ErrorKind::Config, key_path.empty() ? what : key_path + ": " + what), key_path_(key_path) {}
  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

}  // namespace conevortex
