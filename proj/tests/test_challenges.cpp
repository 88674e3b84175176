#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "stablab/challenges.hpp"

using namespace stablab;

namespace {

GenTuple random_gset(std::mt19937_64& rng, std::size_t m, int rank = 2) {
  std::vector<Perm> ps;
  for (int i = 0; i < rank; ++i) ps.emplace_back(oracle::random_images(rng, m));
  return GenTuple(ps);
}

// Mismatch count straight from the definition, over every bijection.
Rational brute_dgen(const GenTuple& x, const GenTuple& y) {
  std::vector<std::uint32_t> f(x.degree());
  std::iota(f.begin(), f.end(), 0u);
  std::size_t best = SIZE_MAX;
  do {
    std::size_t bad = 0;
    for (int s = 1; s <= x.rank(); ++s) {
      for (std::uint32_t p = 0; p < x.degree(); ++p) bad += f[x.letter(s)(p)] != y.letter(s)(f[p]);
    }
    best = std::min(best, bad);
  } while (std::next_permutation(f.begin(), f.end()));
  return Rational(best, x.degree() * static_cast<std::size_t>(x.rank()));
}

}  // namespace

TEST(GenNorm, Examples) {
  std::mt19937_64 rng(1);
  const GenTuple x = random_gset(rng, 6);
  Bijection id(6);
  std::iota(id.begin(), id.end(), 0u);
  EXPECT_EQ(gen_norm(id, x, x), 0);
  const Bijection f = oracle::random_images(rng, 6);
  EXPECT_EQ(gen_norm(f, GenTuple::identity(2, 6), GenTuple::identity(2, 6)), 0);
  // a a 6-cycle, b a 3-cycle, against the trivial action.
  const GenTuple c({Perm::parse(6, "(0 1 2 3 4 5)"), Perm::parse(6, "(0 1 2)")});
  EXPECT_EQ(gen_norm(f, c, GenTuple::identity(2, 6)), (Rational(6, 6) + Rational(3, 6)) / 2);
  EXPECT_THROW(gen_norm({0, 0, 1, 2, 3, 4}, x, x), InvalidArgument);
  EXPECT_THROW(gen_norm({0, 1}, x, x), InvalidArgument);
}

TEST(GenNorm, ZeroExactlyOnIntertwiners) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const GenTuple x = random_gset(rng, 7);
    const auto p = oracle::random_images(rng, 7);
    const GenTuple y = x.relabeled(Perm(p));
    // relabeled conjugates by p, so p itself intertwines.
    EXPECT_EQ(gen_norm(p, x, y), 0);
    const auto q = oracle::random_images(rng, 7);
    bool equivariant = true;
    for (int s = 1; s <= 2; ++s) {
      for (std::uint32_t v = 0; v < 7; ++v) equivariant = equivariant && q[x.letter(s)(v)] == y.letter(s)(q[v]);
    }
    EXPECT_EQ(gen_norm(q, x, y) == 0, equivariant);
  }
}

TEST(DGen, ExactAgainstBruteForce) {
  std::mt19937_64 rng(3);
  const GenTuple one_a({Perm::identity(1), Perm::identity(1)});
  EXPECT_EQ(d_gen_exact(one_a, one_a).value, 0);
  for (int i = 0; i < 40; ++i) {
    const GenTuple x = random_gset(rng, 6), y = random_gset(rng, 6);
    const DGenResult d = d_gen_exact(x, y);
    EXPECT_EQ(d.value, brute_dgen(x, y));
    EXPECT_EQ(gen_norm(d.witness, x, y), d.value);
    EXPECT_EQ(d.value, d_gen_exact(y, x).value);
    EXPECT_EQ(d_gen_exact(x, x).value, 0);
    EXPECT_LE(d.value, gen_norm(oracle::random_images(rng, 6), x, y));
  }
  EXPECT_THROW(d_gen_exact(random_gset(rng, 9), random_gset(rng, 9)), ResourceError);
  EXPECT_THROW(d_gen_exact(random_gset(rng, 4), random_gset(rng, 5)), InvalidArgument);
}

TEST(DGen, BoundNeverBeatsExactAndUsuallyMatches) {
  std::mt19937_64 rng(4);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    const GenTuple x = random_gset(rng, 6), y = random_gset(rng, 6);
    const Rational exact = d_gen_exact(x, y).value;
    const DGenResult b = d_gen_bound(x, y, 8, static_cast<std::uint64_t>(i));
    EXPECT_GE(b.value, exact);
    EXPECT_EQ(gen_norm(b.witness, x, y), b.value);
    equal += b.value == exact;
  }
  EXPECT_GE(equal, 90);
}

TEST(DGen, BoundBasics) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const GenTuple x = random_gset(rng, 12);
    EXPECT_EQ(d_gen_bound(x, x).value, 0);
    const GenTuple y = random_gset(rng, 12);
    Rational prev = 2;
    for (std::size_t restarts : {1u, 2u, 4u, 8u, 16u}) {
      const Rational v = d_gen_bound(x, y, restarts, 77).value;
      EXPECT_LE(v, prev);
      prev = v;
    }
    EXPECT_EQ(d_gen_bound(x, y, 4, 9).value, d_gen_bound(x, y, 4, 9).value);
  }
}

TEST(ChallengeDefect, Examples) {
  const GenTuple t = alt_marking(2);
  for (const auto& [w, v] : challenge_defect(t, WordSet(2, 0, {ReducedWord(2)}))) EXPECT_EQ(v, 0);
  const WordSet r(2, 3, {ReducedWord::parse(2, "ab"), ReducedWord::parse(2, "bbb")});
  for (const auto& [w, v] : challenge_defect(GenTuple::identity(2, 4), r)) EXPECT_EQ(v, 0);
  const WordSet five(2, 5, {ReducedWord::parse(2, "aaaaa"), ReducedWord::parse(2, "b")});
  const auto d = challenge_defect(t, five);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].first.str(), "b");
  EXPECT_EQ(d[0].second, Rational(3, 5));
  EXPECT_EQ(d[1].second, 0);
}

TEST(MGood, Examples) {
  const GenTuple t = alt_marking(2);
  const WordSet kernel(2, 5, {ReducedWord::parse(2, "bbb"), ReducedWord::parse(2, "aaaaa")});
  EXPECT_TRUE(is_m_good(t, t, kernel, 1).good);
  EXPECT_TRUE(is_m_good(t, t, kernel, 5).good);
  // Y where b is an involution on two points: bbb survives.
  const GenTuple y({t[0], Perm::parse(5, "(0 1)(2 3)")});
  const MGoodReport bad = is_m_good(t, y, kernel, 3);
  EXPECT_FALSE(bad.good);
  EXPECT_FALSE(bad.kernel_trivial);
  EXPECT_EQ(bad.violating_word->str(), "bbb");
  EXPECT_NE(bad.str().find("bbb"), std::string::npos);
  // d_gen = 1 = 1/m exactly: strict inequality fails.
  const GenTuple x2({Perm::identity(2)}), y2({Perm::parse(2, "(0 1)")});
  const MGoodReport edge = is_m_good(x2, y2, WordSet(1, 0, {ReducedWord(1)}), 1);
  EXPECT_EQ(edge.d_gen, 1);
  EXPECT_TRUE(edge.d_gen_is_exact);
  EXPECT_FALSE(edge.distance_ok);
  EXPECT_FALSE(edge.good);
}

TEST(FSetPairs, JsonRoundTrip) {
  std::mt19937_64 rng(6);
  const FSetPair p(random_gset(rng, 5), random_gset(rng, 5));
  const FSetPair q = fset_pair_from_json(fset_pair_to_json(p));
  EXPECT_EQ(q.x, p.x);
  EXPECT_EQ(q.y, p.y);
  EXPECT_THROW(FSetPair(random_gset(rng, 5), random_gset(rng, 4)), InvalidArgument);
  EXPECT_THROW(fset_pair_from_json("{\"size\":2}"), InvalidArgument);
}
