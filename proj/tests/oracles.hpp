// Independent reference computations. Nothing here calls the algorithm it
// is used to check; each one recomputes from first principles.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stablab/clopen.hpp"
#include "stablab/fullgroup.hpp"
#include "stablab/irs.hpp"
#include "stablab/perms.hpp"
#include "stablab/words.hpp"

namespace oracle {

using Images = std::vector<std::uint32_t>;

inline Images compose(const Images& p, const Images& q) {
  Images r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Images invert(const Images& p) {
  Images r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline bool is_identity(const Images& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

inline std::uint64_t factorial(unsigned n) { return n < 2 ? 1 : n * factorial(n - 1); }

inline Images random_images(std::mt19937_64& rng, std::size_t k) {
  Images p(k);
  std::iota(p.begin(), p.end(), 0u);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// x -> w(x) on the 2r+1 points of [[r]] relabelled n -> n + r: a is the
/// rotation by +1, b the 3-cycle r-1 -> r -> r+1 -> r-1. Letters act right to left.
inline Images alt_word(const stablab::ReducedWord& w, int r) {
  const auto k = static_cast<std::uint32_t>(2 * r + 1);
  Images out(k);
  const auto c = static_cast<std::uint32_t>(r);
  for (std::uint32_t x = 0; x < k; ++x) {
    std::uint32_t y = x;
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
      switch (*it) {
        case 1: y = (y + 1) % k; break;
        case -1: y = (y + k - 1) % k; break;
        case 2: y = y == c - 1 ? c : y == c ? c + 1 : y == c + 1 ? c - 1 : y; break;
        case -2: y = y == c ? c - 1 : y == c + 1 ? c : y == c - 1 ? c + 1 : y; break;
      }
    }
    out[x] = y;
  }
  return out;
}

/// Action of a word of A(Z) on one integer: a is n -> n+1, b the 3-cycle (-1 0 1).
inline long az_apply(const stablab::ReducedWord& w, long n) {
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    switch (*it) {
      case 1: n += 1; break;
      case -1: n -= 1; break;
      case 2: n = n == -1 ? 0 : n == 0 ? 1 : n == 1 ? -1 : n; break;
      case -2: n = n == 0 ? -1 : n == 1 ? 0 : n == -1 ? 1 : n; break;
    }
  }
  return n;
}

/// Outside [-|w|-2, |w|+2] a word acts as the shift by its a-exponent, so
/// checking that interval and the exponent decides triviality.
inline bool az_trivial(const stablab::ReducedWord& w) {
  if (w.exponent_sum(1) != 0) return false;
  const long l = static_cast<long>(w.length()) + 2;
  for (long n = -l; n <= l; ++n) {
    if (az_apply(w, n) != n) return false;
  }
  return true;
}

/// All letter sequences of length <= r over a..A..b..B.. that are reduced.
inline std::vector<stablab::ReducedWord> brute_ball(int d, int r) {
  std::vector<stablab::ReducedWord> out{stablab::ReducedWord(d)};
  std::vector<std::vector<int>> layer{{}};
  for (int len = 1; len <= r; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      for (int g = 1; g <= d; ++g) {
        for (int x : {g, -g}) {
          if (!w.empty() && w.back() == -x) continue;
          auto v = w;
          v.push_back(x);
          next.push_back(v);
        }
      }
    }
    for (const auto& w : next) out.push_back(stablab::ReducedWord::reduce(d, w));
    layer = std::move(next);
  }
  return out;
}

/// sigma^k(c) by plain string rewriting.
inline std::string iterate(const std::map<char, std::string>& rules, char c, std::size_t min_length) {
  std::string w(1, c);
  while (w.size() < min_length) {
    std::string next;
    for (char x : w) next += rules.at(x);
    w = std::move(next);
  }
  return w;
}

/// Length-n factors of a long iterate, plus those crossing the seam of
/// every two-letter word ed in the language.
inline std::set<std::string> factors(const std::map<char, std::string>& rules, std::size_t n,
                                     std::size_t min_length = 20000) {
  std::set<std::string> out;
  std::set<std::string> seeds;
  for (const auto& [c, _] : rules) {
    const std::string w = iterate(rules, c, min_length);
    for (std::size_t i = 0; i + 2 <= w.size(); ++i) seeds.insert(w.substr(i, 2));
  }
  for (const auto& s : seeds) {
    const std::string w = iterate(rules, s[0], min_length) + iterate(rules, s[1], min_length);
    for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  }
  return out;
}

/// Gap words between consecutive occurrences of u in a long iterate.
inline std::set<std::string> gap_words(const std::map<char, std::string>& rules, const std::string& u,
                                       std::size_t min_length = 20000) {
  std::set<std::string> out;
  for (const auto& [c, _] : rules) {
    const std::string w = iterate(rules, c, min_length);
    std::size_t prev = w.find(u);
    while (prev != std::string::npos) {
      const std::size_t next = w.find(u, prev + 1);
      if (next == std::string::npos) break;
      out.insert(w.substr(prev, next - prev));
      prev = next;
    }
  }
  return out;
}

inline const std::map<char, std::string> kFibonacci{{'a', "ab"}, {'b', "a"}};
inline const std::map<char, std::string> kThueMorse{{'a', "ab"}, {'b', "ba"}};

/// Cocycle read off the table by membership of the centred window.
inline long cocycle(const stablab::TableElement& g, const std::string& window, std::size_t center) {
  long found = 0;
  int hits = 0;
  for (const auto& part : g.parts()) {
    const auto l = static_cast<std::size_t>(part.set.resolution());
    const std::string piece = window.substr(center - l, 2 * l + 1);
    const auto& m = part.set.members();
    if (std::binary_search(m.begin(), m.end(), piece)) {
      found = part.exponent;
      ++hits;
    }
  }
  if (hits != 1) throw std::logic_error("window not in exactly one part");
  return found;
}

// Uniform measure on the conjugates of H, fingerprinted by brute force.
inline stablab::ExactIRS conjugate_oracle(const stablab::FiniteGroup& g, const std::vector<std::vector<std::size_t>>& gens,
                          const std::vector<stablab::Rational>& weights, int r) {
  using namespace stablab;
  ExactIRS out;
  out.rank = 2;
  out.radius = r;
  const auto ball = brute_ball(2, r);
  std::vector<Perm> evals;
  for (const auto& w : ball) evals.push_back(word_eval(w, g.marking()));
  for (std::size_t a = 0; a < gens.size(); ++a) {
    const auto h = g.subgroup(gens[a]);
    std::set<std::set<std::string>> conjugates;
    for (const auto& x : g.elements()) {
      std::set<std::string> c;
      for (auto i : h) c.insert((x * g[i] * x.inverse()).key());
      conjugates.insert(c);
    }
    for (const auto& c : conjugates) {
      std::vector<ReducedWord> in;
      for (std::size_t i = 0; i < ball.size(); ++i) {
        if (c.count(evals[i].key())) in.push_back(ball[i]);
      }
      out.masses[WordSet(2, r, in)] += weights[a] / Rational(conjugates.size());
    }
  }
  return out;
}

}  // namespace oracle
