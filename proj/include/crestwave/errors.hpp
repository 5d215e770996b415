#pragma once
// Error types raised by the simulator. Guards map one-to-one onto run
// termination reasons; configuration errors carry the offending location.

#include <stdexcept>
#include <string>

namespace cw {

class CrestwaveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to a numerical routine (bad grid size, y >= 0, ...).
class DomainError : public CrestwaveError {
 public:
  using CrestwaveError::CrestwaveError;
};

class JacobianGuardError : public CrestwaveError {
 public:
  JacobianGuardError(const std::string& what, double min_modulus)
      : CrestwaveError(what), min_modulus_(min_modulus) {}
  double min_modulus() const { return min_modulus_; }

 private:
  double min_modulus_;
};

class A1ViolationError : public CrestwaveError {
 public:
  A1ViolationError(const std::string& what, double min_a1)
      : CrestwaveError(what), min_a1_(min_a1) {}
  double min_a1() const { return min_a1_; }

 private:
  double min_a1_;
};

class HolomorphicityError : public CrestwaveError {
 public:
  HolomorphicityError(const std::string& what, double residual)
      : CrestwaveError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class UnderResolvedError : public CrestwaveError {
 public:
  UnderResolvedError(const std::string& what, double tail_fraction)
      : CrestwaveError(what), tail_fraction_(tail_fraction) {}
  double tail_fraction() const { return tail_fraction_; }

 private:
  double tail_fraction_;
};

class MarkerCollisionError : public CrestwaveError {
 public:
  using CrestwaveError::CrestwaveError;
};

class ValidationError : public CrestwaveError {
 public:
  using CrestwaveError::CrestwaveError;
};

// Config problems: `where` is "line N" or a dotted key such as "run.T".
class ConfigError : public CrestwaveError {
 public:
  ConfigError(const std::string& where, const std::string& msg)
      : CrestwaveError(where + ": " + msg), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace cw
