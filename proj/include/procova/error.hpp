#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace procova {

enum class ErrorKind {
  RankDeficient,
  Singular,
  DimensionMismatch,
  EmptyData,
  SingleArm,
  InvalidTarget,
  InvalidProbability,
  AllReplicationsFailed,
  DegenerateScore,
  Schema,
  NonFinite,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` lets callers (the CLI in particular) map
/// failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace procova
