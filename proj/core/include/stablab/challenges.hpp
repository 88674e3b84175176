#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablab/common.hpp"
#include "stablab/irs.hpp"
#include "stablab/perms.hpp"
#include "stablab/words.hpp"

namespace stablab {

/// Two finite F-sets of the same size and rank.
struct FSetPair {
  FiniteGSet x;
  FiniteGSet y;

  FSetPair(FiniteGSet x_, FiniteGSet y_);
};

/// f as an image array: point i of X goes to f[i] in Y.
using Bijection = std::vector<std::uint32_t>;

/// (1/|S|) sum_s Prob_x[f(s x) != s f(x)].
Rational gen_norm(const Bijection& f, const FiniteGSet& x, const FiniteGSet& y);

struct DGenResult {
  Rational value;
  Bijection witness;
};

inline constexpr std::size_t kDefaultDGenCap = 8;

/// Minimum of gen_norm over all |X|! bijections.
DGenResult d_gen_exact(const FiniteGSet& x, const FiniteGSet& y, std::size_t cap = kDefaultDGenCap);

/// Upper bound on d_gen: greedy matching of radius-2 fixation fingerprints,
/// then first-improvement 2-swap descent. Restart 0 is the plain greedy
/// start; restart i > 0 uses its own stream seeded from (seed, i), so adding
/// restarts never raises the bound.
DGenResult d_gen_bound(const FiniteGSet& x, const FiniteGSet& y, std::size_t restarts = 8,
                       std::uint64_t seed = 0);

/// Fraction of points moved by each word of R.
std::vector<std::pair<ReducedWord, Rational>> challenge_defect(const FiniteGSet& x, const WordSet& r);

struct MGoodReport {
  bool good = false;
  Rational d_gen;
  /// True when d_gen was computed exhaustively, false when it is the heuristic bound.
  bool d_gen_is_exact = false;
  bool distance_ok = false;
  bool kernel_trivial = false;
  std::optional<ReducedWord> violating_word;
  std::string str() const;
};

/// d_gen(X, Y) < 1/m and every kernel word of length <= m acts trivially on Y.
/// d_gen is exact when |X| <= cap and the heuristic bound otherwise.
MGoodReport is_m_good(const FiniteGSet& x, const FiniteGSet& y, const WordSet& kernel, int m,
                      std::size_t cap = kDefaultDGenCap);

/// {"size": k, "rank": d, "X": [[images]...], "Y": [[images]...]}
std::string fset_pair_to_json(const FSetPair& pair);
FSetPair fset_pair_from_json(const std::string& text);

}  // namespace stablab
