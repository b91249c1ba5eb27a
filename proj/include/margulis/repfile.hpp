#pragma once

// Representation files: JSON documents
//   {"n": 3, "k": 2, "name": "...", "description": "...",
//    "generators": [{"rho": [...], "u": [...]}, ...]}
// where each matrix is either n*n row-major numbers or n rows of n numbers.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "margulis/affine_invariants.hpp"
#include "margulis/freegroup.hpp"

namespace margulis {

/// Load failure with the CLI exit status it maps to (1 = I/O or unparseable
/// text, 2 = schema or invariant violation).
class LoadError : public std::runtime_error {
 public:
  LoadError(int exit_code, std::string kind, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code), kind_(std::move(kind)) {}
  int exit_code() const noexcept { return exit_code_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  int exit_code_;
  std::string kind_;
};

struct RepFile {
  std::string name;
  std::string description;
  AffineRepresentation rep;
};

std::string read_text_file(const std::string& path);

RepFile parse_rep_file(std::string_view text, const Tolerances& tol = {});
RepFile load_rep_file(const std::string& path, const Tolerances& tol = {});

/// Affine parabolic spaces from {"spaces": [{"frame": M, "base": M}, ...]}.
std::vector<AffineParabolic> parse_parabolics(std::string_view text);

/// %.17g, with non-finite values written as null.
std::string format_number(double x);
std::string format_array(const std::vector<double>& v);
std::string format_matrix(const Matrix& m);
std::string quote(std::string_view s);

std::string rep_file_json(const RepFile& f);

}  // namespace margulis
