#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace margulis {

enum class ErrorKind {
  ComplexSpectrum,
  ModulusCollision,
  Singular,
  NotTransverse,
  NotUnimodular,
  DegenerateParameters,
  OutOfRange,
  UnknownLetter,
  EmptySampleSet,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind codes so
/// that callers (spectrum sampling, the CLI) can turn it into data.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace margulis
