#include "stablab/challenges.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <random>
#include <sstream>

namespace stablab {

FSetPair::FSetPair(FiniteGSet x_, FiniteGSet y_) : x(std::move(x_)), y(std::move(y_)) {
  if (x.degree() != y.degree()) {
    throw InvalidArgument("F-sets have sizes " + std::to_string(x.degree()) + " and " +
                          std::to_string(y.degree()));
  }
  if (x.rank() != y.rank()) throw InvalidArgument("F-sets have different ranks");
}

namespace {

void check_pair(const FiniteGSet& x, const FiniteGSet& y) {
  if (x.degree() != y.degree() || x.rank() != y.rank()) {
    throw InvalidArgument("F-sets must have equal size and rank");
  }
  if (x.degree() == 0) throw InvalidArgument("F-sets must be non-empty");
}

// Number of (s, x) with f(s x) != s f(x).
std::size_t mismatch_count(const Bijection& f, const FiniteGSet& x, const FiniteGSet& y) {
  std::size_t bad = 0;
  for (int s = 0; s < x.rank(); ++s) {
    const Perm& sx = x[static_cast<std::size_t>(s)];
    const Perm& sy = y[static_cast<std::size_t>(s)];
    for (std::uint32_t p = 0; p < x.degree(); ++p) bad += f[sx(p)] != sy(f[p]);
  }
  return bad;
}

Rational norm_of(std::size_t bad, const FiniteGSet& x) {
  return Rational(bad, x.degree() * static_cast<std::size_t>(x.rank()));
}

// Mismatches at the terms touched by swapping f(a) and f(b).
std::size_t local_mismatch(const Bijection& f, const FiniteGSet& x, const FiniteGSet& y,
                           std::uint32_t a, std::uint32_t b) {
  std::size_t bad = 0;
  for (int s = 0; s < x.rank(); ++s) {
    const Perm& sx = x[static_cast<std::size_t>(s)];
    const Perm& sxi = x.letter(-(s + 1));
    const Perm& sy = y[static_cast<std::size_t>(s)];
    std::uint32_t pts[4] = {a, b, sxi(a), sxi(b)};
    std::sort(pts, pts + 4);
    for (int k = 0; k < 4; ++k) {
      if (k > 0 && pts[k] == pts[k - 1]) continue;
      bad += f[sx(pts[k])] != sy(f[pts[k]]);
    }
  }
  return bad;
}

void descend(Bijection& f, const FiniteGSet& x, const FiniteGSet& y) {
  const auto n = static_cast<std::uint32_t>(x.degree());
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) {
        const std::size_t before = local_mismatch(f, x, y, a, b);
        std::swap(f[a], f[b]);
        if (local_mismatch(f, x, y, a, b) < before) {
          improved = true;
        } else {
          std::swap(f[a], f[b]);
        }
      }
    }
  }
}

Bijection greedy(const std::vector<std::vector<bool>>& fx, const std::vector<std::vector<bool>>& fy,
                 std::mt19937_64* rng) {
  const std::size_t n = fx.size();
  struct Cand {
    std::size_t score;
    std::uint32_t a, b;
  };
  std::vector<Cand> cands;
  cands.reserve(n * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      std::size_t score = 0;
      for (std::size_t i = 0; i < fx[a].size(); ++i) score += fx[a][i] == fy[b][i];
      cands.push_back({score, a, b});
    }
  }
  if (rng) std::shuffle(cands.begin(), cands.end(), *rng);
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& l, const Cand& r) { return l.score > r.score; });
  Bijection f(n, 0);
  std::vector<bool> used_a(n, false), used_b(n, false);
  for (const auto& c : cands) {
    if (used_a[c.a] || used_b[c.b]) continue;
    used_a[c.a] = used_b[c.b] = true;
    f[c.a] = c.b;
  }
  return f;
}

}  // namespace

Rational gen_norm(const Bijection& f, const FiniteGSet& x, const FiniteGSet& y) {
  check_pair(x, y);
  if (f.size() != x.degree()) throw InvalidArgument("bijection has the wrong size");
  std::vector<bool> hit(f.size(), false);
  for (auto v : f) {
    if (v >= f.size() || hit[v]) throw InvalidArgument("map is not a bijection");
    hit[v] = true;
  }
  return norm_of(mismatch_count(f, x, y), x);
}

DGenResult d_gen_exact(const FiniteGSet& x, const FiniteGSet& y, std::size_t cap) {
  check_pair(x, y);
  if (x.degree() > cap) {
    throw ResourceError("exhaustive d_gen is capped at size " + std::to_string(cap) + " (got " +
                        std::to_string(x.degree()) + "); use d_gen_bound");
  }
  Bijection f(x.degree());
  std::iota(f.begin(), f.end(), 0u);
  Bijection best = f;
  std::size_t best_bad = mismatch_count(f, x, y);
  while (best_bad > 0 && std::next_permutation(f.begin(), f.end())) {
    const std::size_t bad = mismatch_count(f, x, y);
    if (bad < best_bad) {
      best_bad = bad;
      best = f;
    }
  }
  return {norm_of(best_bad, x), best};
}

DGenResult d_gen_bound(const FiniteGSet& x, const FiniteGSet& y, std::size_t restarts,
                       std::uint64_t seed) {
  check_pair(x, y);
  const Ball ball = enumerate_ball(x.rank(), 2);
  const auto fx = fixation_masks(x, ball);
  const auto fy = fixation_masks(y, ball);
  auto run = [&](std::size_t r) {
    Bijection f;
    if (r == 0) {
      f = greedy(fx, fy, nullptr);
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      if (r % 2 == 1) {
        f = greedy(fx, fy, &rng);
      } else {
        f.resize(x.degree());
        std::iota(f.begin(), f.end(), 0u);
        std::shuffle(f.begin(), f.end(), rng);
      }
    }
    descend(f, x, y);
    std::size_t bad = mismatch_count(f, x, y);
    // Escape 2-swap local minima with random 3-cycle kicks.
    std::mt19937_64 kick_rng(seed ^ (0x9e3779b97f4a7c15ULL * (r + 1)));
    std::uniform_int_distribution<std::uint32_t> pt(0, static_cast<std::uint32_t>(x.degree() - 1));
    for (std::size_t k = 0; bad > 0 && x.degree() >= 3 && k < 8 * x.degree(); ++k) {
      Bijection g = f;
      const std::uint32_t a = pt(kick_rng), b = pt(kick_rng), c = pt(kick_rng);
      if (a == b || b == c || a == c) continue;
      std::swap(g[a], g[b]);
      std::swap(g[b], g[c]);
      descend(g, x, y);
      const std::size_t g_bad = mismatch_count(g, x, y);
      if (g_bad <= bad) {
        f = std::move(g);
        bad = g_bad;
      }
    }
    return std::make_pair(bad, f);
  };
  std::vector<std::future<std::pair<std::size_t, Bijection>>> jobs;
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    jobs.push_back(std::async(std::launch::async, run, r));
  }
  auto best = jobs[0].get();
  for (std::size_t r = 1; r < jobs.size(); ++r) {
    auto cur = jobs[r].get();
    if (cur.first < best.first) best = std::move(cur);
  }
  return {norm_of(best.first, x), best.second};
}

std::vector<std::pair<ReducedWord, Rational>> challenge_defect(const FiniteGSet& x, const WordSet& r) {
  if (r.rank() != x.rank()) throw InvalidArgument("word set rank differs from the F-set rank");
  std::vector<std::pair<ReducedWord, Rational>> out;
  for (const auto& w : r) {
    const Perm p = word_eval(w, x);
    out.emplace_back(w, Rational(p.moved_points(), x.degree()));
  }
  return out;
}

MGoodReport is_m_good(const FiniteGSet& x, const FiniteGSet& y, const WordSet& kernel, int m,
                      std::size_t cap) {
  check_pair(x, y);
  if (m < 1) throw InvalidArgument("m must be positive");
  MGoodReport rep;
  if (x.degree() <= cap) {
    rep.d_gen = d_gen_exact(x, y, cap).value;
    rep.d_gen_is_exact = true;
  } else {
    rep.d_gen = d_gen_bound(x, y).value;
  }
  rep.distance_ok = rep.d_gen < Rational(1, m);
  rep.kernel_trivial = true;
  for (const auto& w : kernel) {
    if (w.length() > static_cast<std::size_t>(m)) continue;
    if (!word_eval(w, y).is_identity()) {
      rep.kernel_trivial = false;
      rep.violating_word = w;
      break;
    }
  }
  rep.good = rep.distance_ok && rep.kernel_trivial;
  return rep;
}

std::string MGoodReport::str() const {
  std::ostringstream os;
  os << (good ? "good" : "not good") << ": d_gen " << (d_gen_is_exact ? "= " : "<= ")
     << to_string(d_gen) << (distance_ok ? " (ok)" : " (too large)") << ", kernel "
     << (kernel_trivial ? "trivial on Y" : "violated by " + violating_word->str());
  return os.str();
}

}  // namespace stablab
