#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablab/common.hpp"

namespace stablab {

/// Largest supported free-group rank; letters serialize as a..z / A..Z.
inline constexpr int kMaxRank = 26;

/// Default cap on the number of words enumerated into a ball.
inline constexpr std::size_t kDefaultBallCap = 1'000'000;

/// A freely reduced word in the free group of rank d.
///
/// Letters are signed generator indices: +i is the i-th generator (1-based),
/// -i its inverse. Words are immutable values; every constructor reduces.
class ReducedWord {
 public:
  /// The identity of the rank-`rank` free group.
  explicit ReducedWord(int rank = 1);

  /// Free reduction of an arbitrary letter sequence.
  static ReducedWord reduce(int rank, std::span<const int> letters);

  /// Parses "e", or letters a..z (generators) and A..Z (inverses).
  static ReducedWord parse(int rank, std::string_view text);

  static ReducedWord generator(int rank, int letter);

  int rank() const noexcept { return rank_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  const std::vector<int>& letters() const noexcept { return letters_; }

  ReducedWord inverse() const;
  ReducedWord power(long exponent) const;

  /// Net exponent of generator `gen` (1-based) across the word.
  long exponent_sum(int gen) const;

  std::string str() const;

  friend ReducedWord operator*(const ReducedWord& u, const ReducedWord& v);
  friend bool operator==(const ReducedWord& u, const ReducedWord& v) noexcept {
    return u.rank_ == v.rank_ && u.letters_ == v.letters_;
  }
  /// Length-lexicographic order with a < A < b < B < ...
  friend std::strong_ordering operator<=>(const ReducedWord& u, const ReducedWord& v) noexcept;

 private:
  ReducedWord(int rank, std::vector<int> letters) : rank_(rank), letters_(std::move(letters)) {}

  int rank_;
  std::vector<int> letters_;
};

std::ostream& operator<<(std::ostream& os, const ReducedWord& w);

/// Sort key of a single letter in the a < A < b < B order.
constexpr int letter_key(int letter) noexcept {
  return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
}
constexpr int letter_from_key(int key) noexcept {
  return key % 2 == 0 ? key / 2 + 1 : -(key / 2 + 1);
}

/// 1 + sum_{k=1..r} 2d (2d-1)^{k-1}; saturates at SIZE_MAX.
std::size_t ball_size(int rank, int radius);

/// All reduced words of length <= radius in length-lexicographic order.
///
/// Each non-identity word records the index of its prefix (the word with its
/// last letter removed) so that evaluations can be computed incrementally.
class Ball {
 public:
  int rank() const noexcept { return rank_; }
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<ReducedWord>& words() const noexcept { return words_; }
  const ReducedWord& operator[](std::size_t i) const { return words_[i]; }

  /// Index of the prefix word; the identity has no parent.
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  int last_letter(std::size_t i) const { return last_letter_[i]; }

  /// Number of words of length <= r (a prefix of the ordering).
  std::size_t prefix_size(int r) const;

  /// Position of `w`, or size() if absent.
  std::size_t index_of(const ReducedWord& w) const;

  /// Line-delimited dump, one word per line.
  std::string dump() const;

 private:
  friend Ball enumerate_ball(int rank, int radius, std::size_t cap);

  int rank_ = 1;
  int radius_ = 0;
  std::vector<ReducedWord> words_;
  std::vector<std::size_t> parent_;
  std::vector<int> last_letter_;
  std::vector<std::size_t> level_end_;
};

Ball enumerate_ball(int rank, int radius, std::size_t cap = kDefaultBallCap);

/// A finite set of reduced words of bounded length, kept sorted so that
/// equality and ordering are structural.
class WordSet {
 public:
  WordSet() = default;
  WordSet(int rank, int radius) : rank_(rank), radius_(radius) {}
  WordSet(int rank, int radius, std::vector<ReducedWord> members);

  /// Members of `ball` selected by `mask` (mask.size() == ball.size()).
  static WordSet from_mask(const Ball& ball, const std::vector<bool>& mask);

  int rank() const noexcept { return rank_; }
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<ReducedWord>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(const ReducedWord& w) const;

  /// Members of length <= r, as a set of radius r.
  WordSet restrict(int r) const;

  std::string str() const;

  friend bool operator==(const WordSet&, const WordSet&) = default;
  friend std::strong_ordering operator<=>(const WordSet& a, const WordSet& b);

 private:
  int rank_ = 1;
  int radius_ = 0;
  std::vector<ReducedWord> members_;
};

/// Which of the closure properties of a stabilizer fingerprint fail.
struct FingerprintCheck {
  bool contains_identity = false;
  bool inverse_closed = false;
  bool product_closed = false;
  bool ok() const { return contains_identity && inverse_closed && product_closed; }
};

/// e in W; w in W => w^-1 in W; w, v in W with |wv| <= r => wv in W.
FingerprintCheck check_fingerprint(const WordSet& w);

}  // namespace stablab
