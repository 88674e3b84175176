#include "stablab/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

namespace stablab {

namespace {

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw InvalidArgument("rank must lie in [1, 26], got " + std::to_string(rank));
  }
}

void check_letter(int rank, int letter) {
  if (letter == 0 || letter > rank || letter < -rank) {
    throw InvalidArgument("invalid generator index " + std::to_string(letter) + " for rank " +
                          std::to_string(rank));
  }
}

}  // namespace

ReducedWord::ReducedWord(int rank) : rank_(rank) { check_rank(rank); }

ReducedWord ReducedWord::reduce(int rank, std::span<const int> letters) {
  check_rank(rank);
  std::vector<int> out;
  out.reserve(letters.size());
  for (int x : letters) {
    check_letter(rank, x);
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return ReducedWord(rank, std::move(out));
}

ReducedWord ReducedWord::parse(int rank, std::string_view text) {
  check_rank(rank);
  if (text == "e" || text.empty()) return ReducedWord(rank);
  std::vector<int> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c >= 'a' && c <= 'z') {
      letters.push_back(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z') {
      letters.push_back(-(c - 'A' + 1));
    } else {
      throw InvalidArgument("invalid character '" + std::string(1, c) + "' in word \"" +
                            std::string(text) + "\"");
    }
  }
  return reduce(rank, letters);
}

ReducedWord ReducedWord::generator(int rank, int letter) {
  check_rank(rank);
  check_letter(rank, letter);
  return ReducedWord(rank, {letter});
}

ReducedWord ReducedWord::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& x : out) x = -x;
  return ReducedWord(rank_, std::move(out));
}

ReducedWord ReducedWord::power(long exponent) const {
  ReducedWord base = exponent < 0 ? inverse() : *this;
  ReducedWord acc(rank_);
  for (long i = 0, n = exponent < 0 ? -exponent : exponent; i < n; ++i) acc = acc * base;
  return acc;
}

long ReducedWord::exponent_sum(int gen) const {
  long s = 0;
  for (int x : letters_) {
    if (x == gen) ++s;
    if (x == -gen) --s;
  }
  return s;
}

std::string ReducedWord::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  s.reserve(letters_.size());
  for (int x : letters_) {
    s.push_back(x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1));
  }
  return s;
}

ReducedWord operator*(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank_ != v.rank_) {
    throw InvalidArgument("rank mismatch in word product: " + std::to_string(u.rank_) + " vs " +
                          std::to_string(v.rank_));
  }
  // Cancel the longest suffix of u against the matching prefix of v.
  std::size_t cancel = 0;
  const std::size_t n = u.letters_.size();
  while (cancel < n && cancel < v.letters_.size() &&
         u.letters_[n - 1 - cancel] == -v.letters_[cancel]) {
    ++cancel;
  }
  std::vector<int> out;
  out.reserve(n + v.letters_.size() - 2 * cancel);
  out.insert(out.end(), u.letters_.begin(), u.letters_.end() - static_cast<long>(cancel));
  out.insert(out.end(), v.letters_.begin() + static_cast<long>(cancel), v.letters_.end());
  return ReducedWord(u.rank_, std::move(out));
}

std::strong_ordering operator<=>(const ReducedWord& u, const ReducedWord& v) noexcept {
  if (auto c = u.rank_ <=> v.rank_; c != 0) return c;
  if (auto c = u.letters_.size() <=> v.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < u.letters_.size(); ++i) {
    if (auto c = letter_key(u.letters_[i]) <=> letter_key(v.letters_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ReducedWord& w) { return os << w.str(); }

std::size_t ball_size(int rank, int radius) {
  check_rank(rank);
  if (radius < 0) throw InvalidArgument("ball radius must be non-negative");
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  std::size_t level = 2 * static_cast<std::size_t>(rank);
  const std::size_t branch = level - 1;
  for (int k = 1; k <= radius; ++k) {
    if (total > kMax - level) return kMax;
    total += level;
    if (k < radius) {
      if (branch != 0 && level > kMax / branch) return kMax;
      level *= branch;
    }
  }
  return total;
}

Ball enumerate_ball(int rank, int radius, std::size_t cap) {
  const std::size_t expected = ball_size(rank, radius);
  if (expected > cap) {
    throw ResourceError("ball of rank " + std::to_string(rank) + " and radius " +
                        std::to_string(radius) + " has " + std::to_string(expected) +
                        " words, over the cap of " + std::to_string(cap));
  }
  Ball ball;
  ball.rank_ = rank;
  ball.radius_ = radius;
  ball.words_.reserve(expected);
  ball.parent_.reserve(expected);
  ball.last_letter_.reserve(expected);

  ball.words_.emplace_back(rank);
  ball.parent_.push_back(0);
  ball.last_letter_.push_back(0);
  ball.level_end_.push_back(1);

  // Appending letters in key order to a sorted level yields a sorted level.
  std::size_t level_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t level_end = ball.words_.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const int last = ball.last_letter_[i];
      for (int key = 0; key < 2 * rank; ++key) {
        const int x = letter_from_key(key);
        if (last != 0 && x == -last) continue;
        std::vector<int> letters = ball.words_[i].letters();
        letters.push_back(x);
        ball.words_.push_back(ReducedWord::reduce(rank, letters));
        ball.parent_.push_back(i);
        ball.last_letter_.push_back(x);
      }
    }
    level_begin = level_end;
    ball.level_end_.push_back(ball.words_.size());
  }
  return ball;
}

std::size_t Ball::prefix_size(int r) const {
  if (r < 0) return 0;
  if (r >= radius_) return words_.size();
  return level_end_[static_cast<std::size_t>(r)];
}

std::size_t Ball::index_of(const ReducedWord& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || *it != w) return words_.size();
  return static_cast<std::size_t>(it - words_.begin());
}

std::string Ball::dump() const {
  std::string out;
  for (const auto& w : words_) {
    out += w.str();
    out.push_back('\n');
  }
  return out;
}

WordSet::WordSet(int rank, int radius, std::vector<ReducedWord> members)
    : rank_(rank), radius_(radius), members_(std::move(members)) {
  for (const auto& w : members_) {
    if (w.rank() != rank_) throw InvalidArgument("word set member has the wrong rank");
    if (static_cast<int>(w.length()) > radius_) {
      throw InvalidArgument("word set member " + w.str() + " exceeds radius " +
                            std::to_string(radius_));
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

WordSet WordSet::from_mask(const Ball& ball, const std::vector<bool>& mask) {
  if (mask.size() != ball.size()) throw InvalidArgument("mask size does not match ball size");
  WordSet out(ball.rank(), ball.radius());
  // Ball order is already the set order.
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.members_.push_back(ball[i]);
  }
  return out;
}

bool WordSet::contains(const ReducedWord& w) const {
  return std::binary_search(members_.begin(), members_.end(), w);
}

WordSet WordSet::restrict(int r) const {
  if (r < 0 || r > radius_) {
    throw InvalidArgument("cannot restrict a radius-" + std::to_string(radius_) +
                          " word set to radius " + std::to_string(r));
  }
  WordSet out(rank_, r);
  for (const auto& w : members_) {
    if (static_cast<int>(w.length()) <= r) out.members_.push_back(w);
  }
  return out;
}

std::string WordSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i].str();
  }
  os << '}';
  return os.str();
}

std::strong_ordering operator<=>(const WordSet& a, const WordSet& b) {
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  if (auto c = a.radius_ <=> b.radius_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                b.members_.begin(), b.members_.end());
}

FingerprintCheck check_fingerprint(const WordSet& w) {
  FingerprintCheck res;
  res.contains_identity = w.contains(ReducedWord(w.rank()));
  res.inverse_closed = std::all_of(w.begin(), w.end(),
                                   [&](const ReducedWord& u) { return w.contains(u.inverse()); });
  res.product_closed = true;
  for (const auto& u : w) {
    for (const auto& v : w) {
      ReducedWord uv = u * v;
      if (static_cast<int>(uv.length()) <= w.radius() && !w.contains(uv)) {
        res.product_closed = false;
        return res;
      }
    }
  }
  return res;
}

}  // namespace stablab
