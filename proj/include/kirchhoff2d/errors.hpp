#pragma once

#include <stdexcept>
#include <string>

namespace kirchhoff2d {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct CollarViolation : Error { using Error::Error; };
struct InvalidShape : Error { using Error::Error; };

// panels / pressure; everything a time step can propagate derives from SolverFailure
struct SolverFailure : Error { using Error::Error; };
struct DegenerateShape : SolverFailure { using SolverFailure::SolverFailure; };
struct IncompatibleData : SolverFailure { using SolverFailure::SolverFailure; };
struct SingularSystem : SolverFailure { using SolverFailure::SolverFailure; };

// vortex
struct InsideBody : Error { using Error::Error; };
struct SingularPoint : Error { using Error::Error; };
struct BodyCollision : Error { using Error::Error; };

// dynamics
struct CollisionFlag : Error { using Error::Error; };

// cli
struct ConfigError : Error {
  ConfigError(const std::string& msg, int line = 0, std::string field = {})
      : Error(format(msg, line, field)), line(line), field(std::move(field)) {}
  int line;
  std::string field;

 private:
  static std::string format(const std::string& msg, int line, const std::string& field) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "'" + field + "': ";
    return out + msg;
  }
};

// calculus
struct BoundViolation : Error { using Error::Error; };
struct RecursionMismatch : Error { using Error::Error; };

// gevrey
struct NoiseFloor : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };

}  // namespace kirchhoff2d
