#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhe {

enum class ErrorKind {
  NonNormalized,
  OutOfRange,
  BadDimension,
  DimensionMismatch,
  InfeasibleDamping,
  NoUniqueFixedPoint,
  NoHeatAbsorbed,
  DegenerateInput,
  AxisMismatch,
  UnknownPreset,
  BadInput,
  IoFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qhe
