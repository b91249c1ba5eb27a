#include "margulis/error.hpp"

namespace margulis {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorKind::ModulusCollision: return "ModulusCollision";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotTransverse: return "NotTransverse";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::EmptySampleSet: return "EmptySampleSet";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace margulis
