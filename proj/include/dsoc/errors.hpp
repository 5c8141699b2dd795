#pragma once

#include <stdexcept>
#include <string>

namespace dsoc {

// Configuration rejected before any numerics ran; message names the field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to converge or produced an invalid result.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Regulator equations could not be solved to tolerance.
class RegulatorInfeasible : public NumericalError {
 public:
  explicit RegulatorInfeasible(const std::string& msg) : NumericalError(msg) {}
};

// A provided gain fails validation or gain synthesis failed.
class StabilizerError : public NumericalError {
 public:
  explicit StabilizerError(const std::string& msg) : NumericalError(msg) {}
};

// Non-finite state encountered during integration.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double t, const std::string& msg)
      : std::runtime_error(msg), time(t) {}
  double time;
};

// Iterative optimum search exceeded its iteration cap.
class OracleError : public NumericalError {
 public:
  explicit OracleError(const std::string& msg) : NumericalError(msg) {}
};

// A constraint-set family violated one of its structural conditions.
class ScheduleError : public std::runtime_error {
 public:
  explicit ScheduleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dsoc
