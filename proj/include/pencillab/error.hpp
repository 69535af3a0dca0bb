#pragma once

#include <stdexcept>
#include <string>

namespace pencillab {

// Every failure the library reports carries a stable process exit code so the
// CLI can map exceptions to its exit-code contract without string matching.
enum class ExitCode : int {
  ok = 0,
  unexpected = 1,
  parse_error = 2,
  singular_pencil = 3,
  plane_not_on_x = 4,
  bad_reduction = 5,
  ceiling_exceeded = 6,
  inconsistency = 7,
  invalid_argument = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ExitCode::parse_error, w) {}
};

/// Identically-zero discriminant, mismatched sizes, asymmetric input.
struct MalformedPencil : Error {
  explicit MalformedPencil(const std::string& w) : Error(ExitCode::singular_pencil, w) {}
};

struct SingularPencil : Error {
  explicit SingularPencil(const std::string& w) : Error(ExitCode::singular_pencil, w) {}
};

struct PlaneNotOnX : Error {
  explicit PlaneNotOnX(const std::string& w) : Error(ExitCode::plane_not_on_x, w) {}
};

struct DegenerateConfiguration : Error {
  explicit DegenerateConfiguration(const std::string& w) : Error(ExitCode::inconsistency, w) {}
};

struct BadReduction : Error {
  explicit BadReduction(const std::string& w) : Error(ExitCode::bad_reduction, w) {}
};

struct CeilingExceeded : Error {
  CeilingExceeded(const std::string& w, double estimate)
      : Error(ExitCode::ceiling_exceeded, w), estimate_(estimate) {}
  [[nodiscard]] double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

struct InvalidInvariant : Error {
  explicit InvalidInvariant(const std::string& w) : Error(ExitCode::invalid_argument, w) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error(ExitCode::invalid_argument, w) {}
};

struct Inconsistency : Error {
  explicit Inconsistency(const std::string& w) : Error(ExitCode::inconsistency, w) {}
};

}  // namespace pencillab
