#include "margulis/freegroup.hpp"

#include <algorithm>
#include <cctype>

#include "margulis/error.hpp"

namespace margulis {
namespace {

int letter_key(int l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

int key_letter(int key) { return (key % 2 == 0 ? 1 : -1) * (key / 2 + 1); }

bool rotation_minimal(const std::vector<int>& w) {
  const std::size_t len = w.size();
  for (std::size_t r = 1; r < len; ++r) {
    for (std::size_t i = 0; i < len; ++i) {
      const int a = letter_key(w[(r + i) % len]);
      const int b = letter_key(w[i]);
      if (a < b) return false;
      if (a > b) break;
    }
  }
  return true;
}

}  // namespace

std::vector<int> parse_letters(std::string_view text, std::size_t k) {
  std::vector<int> out;
  if (text == "1") return out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c >= 'a' && c <= 'z' && static_cast<std::size_t>(c - 'a') < k) {
      out.push_back(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z' && static_cast<std::size_t>(c - 'A') < k) {
      out.push_back(-(c - 'A' + 1));
    } else {
      throw MathError(ErrorKind::UnknownLetter, std::string("unknown letter '") + c + "'");
    }
  }
  return out;
}

GroupWord reduce(std::span<const int> letters) {
  GroupWord w;
  for (int l : letters) {
    if (l == 0) throw MathError(ErrorKind::UnknownLetter, "letter 0");
    if (!w.letters_.empty() && w.letters_.back() == -l) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

GroupWord parse_word(std::string_view text, std::size_t k) {
  const auto raw = parse_letters(text, k);
  return reduce(raw);
}

std::string to_string(const GroupWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int l : w.letters()) {
    s.push_back(static_cast<char>((l > 0 ? 'a' : 'A') + std::abs(l) - 1));
  }
  return s;
}

GroupWord inverse(const GroupWord& w) {
  std::vector<int> r(w.letters().rbegin(), w.letters().rend());
  for (int& l : r) l = -l;
  return reduce(r);
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  std::vector<int> r(a.letters().begin(), a.letters().end());
  r.insert(r.end(), b.letters().begin(), b.letters().end());
  return reduce(r);
}

GroupWord power(const GroupWord& w, std::size_t n) {
  std::vector<int> r;
  r.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) r.insert(r.end(), w.letters().begin(), w.letters().end());
  return reduce(r);
}

GroupWord cyclic_reduce(const GroupWord& w) {
  const auto l = w.letters();
  std::size_t first = 0;
  std::size_t last = l.size();
  while (last - first >= 2 && l[first] == -l[last - 1]) {
    ++first;
    --last;
  }
  return reduce(l.subspan(first, last - first));
}

bool letter_less(int x, int y) { return letter_key(x) < letter_key(y); }

bool word_less(std::span<const int> x, std::span<const int> y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), letter_less);
}

void for_each_conjugacy_rep(std::size_t k, std::size_t max_length,
                            const std::function<void(const GroupWord&)>& emit) {
  if (k == 0) return;
  const int keys = static_cast<int>(2 * k);
  std::vector<int> w;
  for (std::size_t len = 1; len <= max_length; ++len) {
    // Depth-first over reduced words in key order, so emission is lexicographic.
    w.assign(len, 0);
    std::vector<int> next_key(len, 0);
    std::size_t depth = 0;
    while (true) {
      if (next_key[depth] >= keys) {
        if (depth == 0) break;
        next_key[depth] = 0;
        --depth;
        continue;
      }
      const int l = key_letter(next_key[depth]++);
      if (depth > 0 && w[depth - 1] == -l) continue;
      w[depth] = l;
      if (depth + 1 < len) {
        ++depth;
        continue;
      }
      if (len > 1 && w.front() == -w.back()) continue;
      if (rotation_minimal(w)) emit(reduce(w));
    }
  }
}

std::vector<GroupWord> enumerate_conjugacy_reps(std::size_t k, std::size_t max_length) {
  std::vector<GroupWord> out;
  for_each_conjugacy_rep(k, max_length, [&](const GroupWord& w) { out.push_back(w); });
  return out;
}

AffineElement AffineElement::identity(std::size_t n) {
  return {Matrix::identity(n), Matrix::identity(n), Matrix::zero(n)};
}

AffineElement AffineElement::from_pair(Matrix g, Matrix y, const Tolerances& tol) {
  Matrix gi = margulis::inverse(g, tol);
  return {std::move(g), std::move(gi), std::move(y)};
}

AffineElement compose(const AffineElement& a, const AffineElement& b) {
  return {a.g * b.g, b.g_inv * a.g_inv, a.y + a.g * b.y * a.g_inv};
}

AffineElement inverse(const AffineElement& a) {
  return {a.g_inv, a.g, -(a.g_inv * a.y * a.g)};
}

AffineElement power(const AffineElement& a, std::size_t n) {
  AffineElement result = AffineElement::identity(a.g.rows());
  AffineElement base = a;
  while (n > 0) {
    if (n & 1U) result = compose(result, base);
    n >>= 1U;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

AffineRepresentation AffineRepresentation::make(std::vector<Matrix> rho, std::vector<Matrix> u,
                                                const Tolerances& tol) {
  if (rho.size() != u.size()) {
    throw MathError(ErrorKind::InvalidArgument, "rho and u have different generator counts");
  }
  if (rho.empty()) throw MathError(ErrorKind::InvalidArgument, "representation has no generators");
  AffineRepresentation rep;
  rep.n = rho[0].rows();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const std::string name = "generator " + std::to_string(i) + " ('" +
                             std::string(1, static_cast<char>('a' + i)) + "')";
    if (rho[i].rows() != rep.n || !rho[i].is_square() || u[i].rows() != rep.n || !u[i].is_square()) {
      throw MathError(ErrorKind::InvalidArgument, name + ": matrices must be " +
                                                      std::to_string(rep.n) + "x" + std::to_string(rep.n));
    }
    if (!is_unimodular(rho[i], tol)) {
      throw MathError(ErrorKind::NotUnimodular, name + ": det(rho) = " + std::to_string(determinant(rho[i])));
    }
    if (!is_traceless(u[i], tol)) {
      throw MathError(ErrorKind::InvalidArgument, name + ": u is not traceless");
    }
  }
  rep.rho = std::move(rho);
  rep.u = std::move(u);
  rep.images_.reserve(2 * rep.rho.size());
  for (std::size_t i = 0; i < rep.rho.size(); ++i) {
    AffineElement gen = AffineElement::from_pair(rep.rho[i], rep.u[i], tol);
    AffineElement inv = inverse(gen);
    rep.images_.push_back(std::move(gen));
    rep.images_.push_back(std::move(inv));
  }
  return rep;
}

const AffineElement& AffineRepresentation::letter(int l) const {
  const std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
  if (l == 0 || i >= rho.size()) {
    throw MathError(ErrorKind::UnknownLetter, "letter outside the generator range");
  }
  return images_[2 * i + (l < 0 ? 1 : 0)];
}

AffineElement eval_affine(const AffineRepresentation& rep, const GroupWord& w) {
  AffineElement acc = AffineElement::identity(rep.n);
  const auto l = w.letters();
  for (std::size_t i = l.size(); i-- > 0;) acc = compose(rep.letter(l[i]), acc);
  return acc;
}

}  // namespace margulis
