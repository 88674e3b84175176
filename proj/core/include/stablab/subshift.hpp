#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stablab/common.hpp"

namespace stablab {

/// A substitution on a finite alphabet of single characters.
class Substitution {
 public:
  /// "a->ab;b->a". Whitespace is ignored.
  static Substitution parse(std::string_view text);

  static Substitution fibonacci();   // a->ab; b->a
  static Substitution thue_morse();  // a->ab; b->ba
  static Substitution chacon();      // a->aabc; b->bc; c->abc

  /// Letters in sorted order.
  const std::string& alphabet() const noexcept { return alphabet_; }
  std::size_t letter_index(char c) const;
  const std::string& image(char c) const { return images_[letter_index(c)]; }

  std::string apply(std::string_view w) const;
  /// sigma^k(c)
  std::string iterate(char c, int k) const;

  /// M[i][j] = occurrences of letter i in the image of letter j.
  std::vector<std::vector<std::uint64_t>> incidence() const;
  /// Some power M^p, p <= 2|A|^2, is entrywise positive.
  bool is_primitive() const;

  std::string str() const;

 private:
  Substitution(std::string alphabet, std::vector<std::string> images);

  std::string alphabet_;
  std::vector<std::string> images_;
};

/// The two-sided subshift X of a primitive aperiodic substitution.
///
/// Language tables are memoized behind a mutex; the object is otherwise
/// immutable and may be shared across threads.
class Subshift {
 public:
  /// Throws InvalidArgument unless the substitution is primitive and aperiodic.
  explicit Subshift(Substitution s, std::size_t max_word_length = 1 << 14);

  static std::shared_ptr<const Subshift> create(Substitution s);

  const Substitution& substitution() const noexcept { return sub_; }
  const std::string& alphabet() const noexcept { return sub_.alphabet(); }
  std::size_t max_word_length() const noexcept { return max_len_; }

  /// Admissible words of length exactly n, sorted.
  const std::vector<std::string>& language(std::size_t n) const;
  /// Admissible words of length 1..n, by length then lexicographically.
  std::vector<std::string> language_upto(std::size_t n) const;
  bool admissible(std::string_view w) const;

  /// Uniform draw among admissible words of the given length.
  std::string sample_word(std::mt19937_64& rng, std::size_t length) const;

 private:
  struct Table {
    std::vector<std::string> words;
    std::unordered_set<std::string> index;
  };
  const Table& table(std::size_t n) const;
  std::vector<std::string> compute_language(std::size_t n) const;

  Substitution sub_;
  std::size_t max_len_;
  std::vector<std::string> two_factors_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, Table> tables_;
};

using SubshiftPtr = std::shared_ptr<const Subshift>;

/// The unique invariant probability measure of a primitive substitution
/// subshift, through word frequencies.
///
/// Frequencies of length-l words are the normalized Perron vector of the
/// l-block substitution, found by power iteration; a table is accepted only
/// when its eigen-residual is below the tolerance.
class ErgodicMeasure {
 public:
  explicit ErgodicMeasure(SubshiftPtr space, double tolerance = 1e-9);

  const SubshiftPtr& space() const noexcept { return space_; }
  double tolerance() const noexcept { return tolerance_; }

  /// Frequency of an admissible word; 0 for inadmissible ones.
  double frequency(std::string_view w) const;
  /// Perron eigen-residual of the length-n table.
  double residual(std::size_t n) const;

 private:
  struct Table {
    std::unordered_map<std::string, double> freq;
    double residual = 0;
  };
  const Table& table(std::size_t n) const;

  SubshiftPtr space_;
  double tolerance_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, Table> tables_;
};

}  // namespace stablab
