#pragma once

// Words in the free group F_k and their images under an affine
// representation F_k -> SL_n(R) x| sl_n(R).
//
// Letters are nonzero ints: +(i+1) is the generator a_i, -(i+1) its inverse.
// In text, generator i is the i-th lowercase letter and its inverse the
// matching uppercase letter ("aB" = a b^-1).

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "margulis/matrix.hpp"
#include "margulis/numkernel.hpp"

namespace margulis {

/// A freely reduced word. Construct through reduce() or parse_word().
class GroupWord {
 public:
  GroupWord() = default;

  std::span<const int> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  friend GroupWord reduce(std::span<const int> letters);
  std::vector<int> letters_;
};

/// Raw letters from text; blanks are ignored, "" and "1" denote the identity.
/// Letters beyond the first k generators raise UnknownLetter.
std::vector<int> parse_letters(std::string_view text, std::size_t k);

GroupWord reduce(std::span<const int> letters);
GroupWord parse_word(std::string_view text, std::size_t k);
std::string to_string(const GroupWord& w);

GroupWord inverse(const GroupWord& w);
GroupWord concat(const GroupWord& a, const GroupWord& b);
GroupWord power(const GroupWord& w, std::size_t n);
GroupWord cyclic_reduce(const GroupWord& w);

/// Order a < A < b < B < ... on letters, extended lexicographically.
bool letter_less(int x, int y);
bool word_less(std::span<const int> x, std::span<const int> y);

/// Calls `emit` for one representative per conjugacy class of cyclically
/// reduced length 1..max_length: the rotation-minimal cyclic word, in
/// (length, lexicographic) order. Inverse classes are distinct classes.
void for_each_conjugacy_rep(std::size_t k, std::size_t max_length,
                            const std::function<void(const GroupWord&)>& emit);
std::vector<GroupWord> enumerate_conjugacy_reps(std::size_t k, std::size_t max_length);

/// Element (g, Y) of SL_n(R) x| sl_n(R); g_inv is carried so that products
/// never need to invert an accumulated (possibly ill-conditioned) matrix.
struct AffineElement {
  Matrix g;
  Matrix g_inv;
  Matrix y;

  static AffineElement identity(std::size_t n);
  /// Inverts g numerically.
  static AffineElement from_pair(Matrix g, Matrix y, const Tolerances& tol = {});
};

/// (g1,Y1)(g2,Y2) = (g1 g2, Y1 + Ad(g1) Y2).
AffineElement compose(const AffineElement& a, const AffineElement& b);
/// (g,Y)^-1 = (g^-1, -Ad(g^-1) Y).
AffineElement inverse(const AffineElement& a);
/// a^n by repeated squaring.
AffineElement power(const AffineElement& a, std::size_t n);

struct AffineRepresentation {
  std::size_t n = 0;
  std::vector<Matrix> rho;
  std::vector<Matrix> u;

  std::size_t k() const noexcept { return rho.size(); }

  /// Validates shapes, unimodularity (NotUnimodular) and tracelessness
  /// (InvalidArgument), naming the offending generator.
  static AffineRepresentation make(std::vector<Matrix> rho, std::vector<Matrix> u,
                                   const Tolerances& tol = {});

  /// Image of one letter.
  const AffineElement& letter(int l) const;

 private:
  std::vector<AffineElement> images_;  // a_1, a_1^-1, a_2, a_2^-1, ...
};

AffineElement eval_affine(const AffineRepresentation& rep, const GroupWord& w);

}  // namespace margulis
