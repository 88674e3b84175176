#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablab/common.hpp"
#include "stablab/words.hpp"

namespace stablab {

/// A permutation of {0, ..., k-1}, stored as its image array.
///
/// Products compose right to left: (p * q)(i) = p(q(i)), so that
/// word evaluation is a homomorphism for left actions.
class Perm {
 public:
  Perm() = default;
  static Perm identity(std::size_t degree);

  /// Validates bijectivity.
  explicit Perm(std::vector<std::uint32_t> images);

  /// One-line image array "[1 2 0]" or cycle notation "(0 1 2)(3 4)".
  static Perm parse(std::size_t degree, std::string_view text);

  /// The cycle (c0 c1 ... cm) on `degree` points.
  static Perm cycle(std::size_t degree, std::span<const std::uint32_t> points);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  Perm inverse() const;
  Perm pow(long exponent) const;
  bool is_identity() const noexcept;
  std::size_t fixed_points() const noexcept;
  std::size_t moved_points() const noexcept { return degree() - fixed_points(); }
  bool is_even() const;
  /// Multiplicative order; lcm of cycle lengths.
  std::uint64_t order() const;
  std::vector<std::vector<std::uint32_t>> cycles() const;

  /// Canonical byte encoding of the image array (dedup key).
  std::string key() const;

  /// "[a b c ...]"
  std::string str() const;
  std::string cycle_str() const;

  friend Perm operator*(const Perm& p, const Perm& q);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

/// Normalized Hamming distance 1 - |{i : p(i) = q(i)}| / k, exact.
Rational hamming_distance(const Perm& p, const Perm& q);

/// A d-tuple of permutations of a common degree k: a point of Sym(k)^d,
/// equivalently an action of the rank-d free group on {0, ..., k-1}.
class GenTuple {
 public:
  GenTuple() = default;
  explicit GenTuple(std::vector<Perm> perms);
  /// d copies of the identity of degree k.
  static GenTuple identity(int rank, std::size_t degree);

  int rank() const noexcept { return static_cast<int>(perms_.size()); }
  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& perms() const noexcept { return perms_; }
  const Perm& operator[](std::size_t i) const { return perms_[i]; }

  /// Image of a signed letter (+i generator, -i inverse).
  const Perm& letter(int x) const;

  /// Conjugates every generator by the relabeling `relabel`.
  GenTuple relabeled(const Perm& relabel) const;

  friend bool operator==(const GenTuple&, const GenTuple&) = default;

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> perms_;
  std::vector<Perm> inverses_;
};

/// w(sigma): product of the letter images, left to right.
Perm word_eval(const ReducedWord& w, const GenTuple& tuple);

/// Evaluations of every ball word, computed incrementally along prefixes.
std::vector<Perm> eval_ball(const Ball& ball, const GenTuple& tuple);

/// Sum over generators of the coordinate Hamming distances.
Rational tuple_distance(const GenTuple& a, const GenTuple& b);

/// Per-word distances to the identity and the overall verdict of an
/// almost-solution or separation check.
struct WordDistanceReport {
  std::vector<std::pair<ReducedWord, Rational>> distances;
  /// max (almost-solution) or min (separation) over the words; 0 when empty.
  Rational extreme = 0;
  bool pass = true;
};

/// Passes iff d_k(r(sigma), id) < delta for every r in `relators`.
WordDistanceReport check_almost_solution(const GenTuple& tuple, const WordSet& relators,
                                         const Rational& delta);

/// Passes iff d_k(w(sigma), id) > 1 - delta for every w in `words`.
WordDistanceReport check_separating(const GenTuple& tuple, const WordSet& words,
                                    const Rational& delta);

/// Default cap on BFS closure sizes.
inline constexpr std::size_t kDefaultClosureCap = 10'000'000;

/// Elements of the group generated by a tuple, in BFS order from the identity.
struct Closure {
  std::vector<Perm> elements;
  bool truncated = false;
};

/// BFS closure of <tuple> under right multiplication by generators.
/// Stops and flags truncation once `cap` elements are found.
Closure generate_closure(const GenTuple& tuple, std::size_t cap = kDefaultClosureCap);

/// Pair (alpha_r, beta_r) acting on [[r]] = {-r..r}, relabeled n -> n + r.
/// alpha_r is the full cycle n -> n+1 (mod 2r+1), beta_r the 3-cycle (-1 0 1).
/// Accepts r >= 1; the alternating-group marking requires r >= 2.
GenTuple bracket_marking(int r);

/// The 2-marking T(r) = (alpha_r, beta_r) of Alt([[r]]); r >= 2.
GenTuple alt_marking(int r);

}  // namespace stablab
