#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "oracles.hpp"
#include "stablab/irs.hpp"
#include "stablab/vershik.hpp"

using namespace stablab;

namespace {

GenTuple tuple(std::initializer_list<oracle::Images> ps) {
  std::vector<Perm> v;
  for (const auto& p : ps) v.emplace_back(p);
  return GenTuple(v);
}

GenTuple random_gset(std::mt19937_64& rng, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  const std::size_t m = size(rng);
  return GenTuple({Perm(oracle::random_images(rng, m)), Perm(oracle::random_images(rng, m))});
}

// Fingerprint of x computed point by point from image arrays.
WordSet brute_fingerprint(const GenTuple& g, std::uint32_t x, int r) {
  std::vector<ReducedWord> fix;
  for (const auto& w : oracle::brute_ball(g.rank(), r)) {
    std::uint32_t y = x;
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) y = g.letter(*it)(y);
    if (y == x) fix.push_back(w);
  }
  return WordSet(g.rank(), r, fix);
}

ExactIRS brute_irs(const GenTuple& g, int r) {
  ExactIRS out;
  out.rank = g.rank();
  out.radius = r;
  for (std::uint32_t x = 0; x < g.degree(); ++x) out.masses[brute_fingerprint(g, x, r)] += Rational(1, g.degree());
  return out;
}

ExactIRS point_mass(int rank, int r, const WordSet& w) {
  ExactIRS out;
  out.rank = rank;
  out.radius = r;
  out.masses[w] = 1;
  return out;
}

WordSet whole_ball(int rank, int r) { return WordSet(rank, r, enumerate_ball(rank, r).words()); }

}  // namespace

TEST(Fingerprint, Examples) {
  const Ball b = enumerate_ball(2, 2);
  EXPECT_EQ(fingerprint(GenTuple::identity(2, 3), 1, b), whole_ball(2, 2));
  // Regular action of Alt(5): no nontrivial element fixes a point.
  const FiniteGroup a5(alt_marking(2));
  const GenTuple regular = a5.coset_action({0});
  EXPECT_EQ(regular.degree(), 60u);
  EXPECT_EQ(fingerprint(regular, 17, b).members(), std::vector<ReducedWord>{ReducedWord(2)});
  const Ball b1 = enumerate_ball(2, 1);
  EXPECT_EQ(fingerprint(alt_marking(2), 2, b1), brute_fingerprint(alt_marking(2), 2, 1));
  EXPECT_EQ(fingerprint(alt_marking(2), 2, b1).members(), std::vector<ReducedWord>{ReducedWord(2)});
  EXPECT_THROW(fingerprint(alt_marking(2), 5, b1), InvalidArgument);
}

TEST(Fingerprint, MatchesPointSimulationAndIsValid) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const GenTuple g = random_gset(rng, 7);
    const ExactIRS irs = irs_of_gset(g, 3);
    EXPECT_EQ(irs.masses, brute_irs(g, 3).masses);
    EXPECT_EQ(irs.total(), 1);
    EXPECT_TRUE(fingerprints_valid(irs));
    for (const auto& [f, _] : irs.masses) EXPECT_TRUE(check_fingerprint(f).ok());
  }
}

TEST(IrsOfGset, Examples) {
  const ExactIRS triv = irs_of_gset(trivial_gset(2, 2), 2);
  EXPECT_EQ(triv.masses, point_mass(2, 2, whole_ball(2, 2)).masses);
  const GenTuple free3 = tuple({{1, 2, 0}, {2, 0, 1}});
  const WordSet e(2, 1, {ReducedWord(2)});
  EXPECT_EQ(irs_of_gset(free3, 1).masses, point_mass(2, 1, e).masses);
  const ExactIRS u = irs_of_gset(disjoint_union(trivial_gset(2, 2), free3), 1);
  EXPECT_EQ(u.mass_of(whole_ball(2, 1)), Rational(2, 5));
  EXPECT_EQ(u.mass_of(e), Rational(3, 5));
}

TEST(IrsAlgebra, MixtureAndPadding) {
  const GenTuple free3 = tuple({{1, 2, 0}, {2, 0, 1}});
  const ExactIRS x = irs_of_gset(trivial_gset(2, 2), 1), y = irs_of_gset(free3, 1);
  EXPECT_EQ(mixture({{x, 1}}).masses, x.masses);
  EXPECT_EQ(mixture({{x, Rational(1, 3)}, {x, Rational(2, 3)}}).masses, x.masses);
  EXPECT_EQ(mixture({{x, Rational(2, 5)}, {y, Rational(3, 5)}}).masses,
            irs_of_gset(disjoint_union(trivial_gset(2, 2), free3), 1).masses);
  EXPECT_THROW(mixture({{x, Rational(1, 2)}}), InvalidArgument);
  EXPECT_THROW(mixture({{x, Rational(3, 2)}, {y, Rational(-1, 2)}}), InvalidArgument);
  EXPECT_THROW(mixture({{x, Rational(1, 2)}, {irs_of_gset(free3, 2), Rational(1, 2)}}), InvalidArgument);

  EXPECT_EQ(irs_of_gset(pad_gset(free3, 3), 2).masses, irs_of_gset(free3, 2).masses);
  EXPECT_EQ(irs_of_gset(pad_gset(free3, 6), 2).masses, irs_of_gset(free3, 2).masses);
  const ExactIRS p7 = irs_of_gset(pad_gset(free3, 7), 2);
  EXPECT_EQ(pad_gset(free3, 7).degree(), 7u);
  EXPECT_EQ(p7.masses, mixture({{irs_of_gset(free3, 2), Rational(6, 7)},
                                {point_mass(2, 2, whole_ball(2, 2)), Rational(1, 7)}})
                           .masses);
  EXPECT_EQ(p7.masses, padding_formula(irs_of_gset(free3, 2), 3, 7).masses);
  EXPECT_THROW(pad_gset(free3, 2), InvalidArgument);
}

TEST(IrsAlgebra, RandomUnionsAndPaddings) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const GenTuple x = random_gset(rng, 6), y = random_gset(rng, 6);
    const Rational m(x.degree()), n(y.degree());
    EXPECT_EQ(irs_of_gset(disjoint_union(x, y), 2).masses,
              mixture({{irs_of_gset(x, 2), m / (m + n)}, {irs_of_gset(y, 2), n / (m + n)}}).masses);
    std::uniform_int_distribution<std::size_t> extra(0, 13);
    const std::size_t target = x.degree() + extra(rng);
    const std::size_t rk = target % x.degree();
    EXPECT_EQ(irs_of_gset(pad_gset(x, target), 2).masses,
              mixture({{irs_of_gset(x, 2), Rational(target - rk, target)},
                       {point_mass(2, 2, whole_ball(2, 2)), Rational(rk, target)}})
                  .masses);
  }
}

TEST(IrsAlgebra, RelabelingAndRestriction) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    const GenTuple x = random_gset(rng, 8);
    const Perm rel(oracle::random_images(rng, x.degree()));
    EXPECT_EQ(irs_of_gset(x.relabeled(rel), 3).masses, irs_of_gset(x, 3).masses);
    for (int r = 0; r < 3; ++r) EXPECT_EQ(restrict_irs(irs_of_gset(x, 3), r).masses, irs_of_gset(x, r).masses);
  }
}

TEST(IrsDistance, Examples) {
  const GenTuple free3 = tuple({{1, 2, 0}, {2, 0, 1}});
  const ExactIRS x = irs_of_gset(trivial_gset(2, 2), 1), y = irs_of_gset(free3, 1);
  EXPECT_EQ(irs_distance(x, x), 0);
  EXPECT_EQ(irs_distance(x, y), 1);
  const ExactIRS h = mixture({{x, Rational(1, 2)}, {y, Rational(1, 2)}});
  EXPECT_LE(irs_distance(h, x), Rational(1, 2));
  EXPECT_THROW(irs_distance(x, irs_of_gset(free3, 2)), InvalidArgument);
}

TEST(CosetRealization, Examples) {
  const FiniteGroup a5(alt_marking(2));
  ASSERT_EQ(a5.order(), 60u);
  EXPECT_EQ(realize_irs_as_gset(a5, {{{1, 2}, 1}}).degree(), 1u);
  EXPECT_EQ(realize_irs_as_gset(a5, {{{}, 1}}).degree(), 60u);
  std::vector<IRSAtom> atoms{{{1}, Rational(1, 3)}, {{2}, Rational(2, 3)}};
  const GenTuple x = realize_irs_as_gset(a5, atoms);
  for (int r = 1; r <= 3; ++r) {
    const ExactIRS want = oracle::conjugate_oracle(a5, {{1}, {2}}, {Rational(1, 3), Rational(2, 3)}, r);
    EXPECT_EQ(atomic_irs(a5, atoms, r).masses, want.masses);
    EXPECT_EQ(irs_of_gset(x, r).masses, want.masses);
  }
  EXPECT_THROW(a5.check_subgroup({0, 1}), InvalidArgument);
  EXPECT_THROW(realize_irs_as_gset(a5, {{{1}, Rational(1, 2)}}), InvalidArgument);
}

TEST(CosetRealization, RandomSubgroupPairsRoundTrip) {
  const FiniteGroup a5(alt_marking(2));
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::size_t> el(0, 59), ngen(0, 2);
  std::uniform_int_distribution<int> w(1, 4);
  for (int i = 0; i < 10; ++i) {
    std::vector<IRSAtom> atoms(2);
    std::vector<std::vector<std::size_t>> gens(2);
    const int a = w(rng), b = w(rng);
    atoms[0].weight = Rational(a, a + b);
    atoms[1].weight = Rational(b, a + b);
    for (int k = 0; k < 2; ++k) {
      for (std::size_t j = ngen(rng); j > 0; --j) gens[k].push_back(el(rng));
      atoms[static_cast<std::size_t>(k)].generators = gens[static_cast<std::size_t>(k)];
    }
    const GenTuple x = realize_irs_as_gset(a5, atoms);
    for (int r = 1; r <= 3; ++r) {
      EXPECT_EQ(irs_of_gset(x, r).masses, oracle::conjugate_oracle(a5, gens, {atoms[0].weight, atoms[1].weight}, r).masses);
    }
  }
}

TEST(Sampling, DeterministicAndExactForConstantSamplers) {
  const Ball b = enumerate_ball(2, 2);
  const FiniteGroup a5(alt_marking(2));
  const GenTuple regular = a5.coset_action({0});
  const auto fixes = [&](std::size_t i, const std::uint32_t& x) { return word_eval(b[i], regular)(x) == x; };
  const ApproxIRS one = sample_irs<std::uint32_t>([](std::mt19937_64&) { return 0u; }, fixes, b, 1, 3);
  EXPECT_EQ(one.masses.size(), 1u);
  const ApproxIRS many = sample_irs<std::uint32_t>([](std::mt19937_64&) { return 7u; }, fixes, b, 500, 3);
  EXPECT_EQ(irs_distance<double>(many, to_approx(irs_of_gset(regular, 2))), 0.0);
  EXPECT_EQ(*many.n_samples, 500u);

  const auto sampler = [](std::mt19937_64& rng) { return static_cast<std::uint32_t>(rng() % 60); };
  const GenTuple x = realize_irs_as_gset(a5, {{{1}, Rational(1)}});
  const auto fx = [&](std::size_t i, const std::uint32_t& p) { return word_eval(b[i], x)(p % x.degree()) == p % x.degree(); };
  const ApproxIRS s1 = sample_irs<std::uint32_t>(sampler, fx, b, 2000, 9);
  const ApproxIRS s2 = sample_irs<std::uint32_t>(sampler, fx, b, 2000, 9);
  EXPECT_EQ(s1.masses, s2.masses);
  EXPECT_NEAR(s1.total(), 1.0, 1e-12);
  for (const auto& [f, m] : s1.masses) EXPECT_DOUBLE_EQ(s1.stderr_of.at(f), std::sqrt(m * (1 - m) / 2000));
  EXPECT_THROW(sample_irs<std::uint32_t>(sampler, fx, b, 0, 1), InvalidArgument);
}

TEST(Vershik, AltOneEnumeratedByHand) {
  // bracket marking at r = 1: both generators rotate the three points.
  const std::vector<Rational> alpha{Rational(1, 2), Rational(1, 2)};
  const ExactIRS irs = vershik_irs_exact(alpha, VershikTarget::parse("alt:1"), {1, 64, 1 << 22});
  ExactIRS want;
  want.rank = 2;
  want.radius = 1;
  const auto ball = oracle::brute_ball(2, 1);
  for (int c = 0; c < 8; ++c) {
    std::vector<ReducedWord> fix;
    for (const auto& w : ball) {
      const auto p = oracle::alt_word(w, 1);
      bool ok = true;
      for (std::uint32_t x = 0; x < 3; ++x) ok = ok && ((c >> p[x]) & 1) == ((c >> x) & 1);
      if (ok) fix.push_back(w);
    }
    want.masses[WordSet(2, 1, fix)] += Rational(1, 8);
  }
  EXPECT_EQ(irs.masses, want.masses);
}

TEST(Vershik, SingleColourIsAPointMass) {
  const std::vector<Rational> one{Rational(1)};
  const VershikOptions opt{2, 8, 1 << 22};
  EXPECT_EQ(vershik_irs_exact(one, VershikTarget::parse("alt:4"), opt).masses,
            point_mass(2, 2, whole_ball(2, 2)).masses);
  const ApproxIRS s = vershik_irs_sampled(one, VershikTarget::parse("az"), opt, 50, 1);
  ASSERT_EQ(s.masses.size(), 1u);
  EXPECT_EQ(s.masses.begin()->first, whole_ball(2, 2));
}

TEST(Vershik, SampledAgreesWithExact) {
  const std::vector<Rational> alpha{Rational(1, 3), Rational(2, 3)};
  const VershikOptions opt{2, 64, 1 << 22};
  const auto target = VershikTarget::parse("alt:3");
  const ExactIRS exact = vershik_irs_exact(alpha, target, opt);
  EXPECT_EQ(exact.total(), 1);
  const ApproxIRS s = vershik_irs_sampled(alpha, target, opt, 40000, 5);
  EXPECT_LT(irs_distance<double>(s, to_approx(exact)), 5 * combined_stderr(s, to_approx(exact)) + 1e-12);
  EXPECT_TRUE(fingerprints_valid(s));
}

TEST(Vershik, ShiftWordsNeverFixNonConstantWindows) {
  const std::vector<Rational> alpha{Rational(1, 2), Rational(1, 2)};
  const ApproxIRS s = vershik_irs_sampled(alpha, VershikTarget::parse("az"), {2, 32, 1 << 22}, 5000, 2);
  for (const auto& [f, _] : s.masses) {
    for (const auto& w : f) EXPECT_EQ(w.exponent_sum(1), 0) << w.str();
  }
  // Analytic value: b fixes a colouring iff sites -1, 0, 1 agree.
  double fixed_b = 0;
  for (const auto& [f, m] : s.masses) fixed_b += f.contains(ReducedWord::parse(2, "b")) ? m : 0;
  EXPECT_NEAR(fixed_b, 0.25, 5 * std::sqrt(0.25 * 0.75 / 5000));
}

TEST(Vershik, SampleSizesConverge) {
  const std::vector<Rational> alpha{Rational(1, 2), Rational(1, 2)};
  const VershikOptions opt{2, 64, 1 << 22};
  const auto t = VershikTarget::parse("az");
  const ApproxIRS small = vershik_irs_sampled(alpha, t, opt, 10000, 1);
  const ApproxIRS large = vershik_irs_sampled(alpha, t, opt, 100000, 2);
  EXPECT_LT(irs_distance<double>(small, large), 5 * combined_stderr(small, large));
}

TEST(Vershik, Validation) {
  const std::vector<Rational> alpha{Rational(1, 2), Rational(1, 2)};
  EXPECT_THROW(vershik_irs_sampled(alpha, VershikTarget::parse("az"), {2, vershik_min_window(2) - 1, 1 << 22}, 10, 1),
               InvalidArgument);
  EXPECT_THROW(vershik_irs_exact(alpha, VershikTarget::parse("alt:12"), {2, 64, 1 << 10}), ResourceError);
  EXPECT_THROW(vershik_irs_exact({Rational(1, 2)}, VershikTarget::parse("alt:2"), {}), InvalidArgument);
  EXPECT_THROW(VershikTarget::parse("alt:0"), InvalidArgument);
  EXPECT_THROW(VershikTarget::parse("sym:3"), InvalidArgument);
}

TEST(Serialization, JsonLines) {
  const ExactIRS x = irs_of_gset(disjoint_union(trivial_gset(2, 2), tuple({{1, 2, 0}, {2, 0, 1}})), 1);
  std::istringstream in(to_jsonl(x));
  std::set<std::string> masses;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("r"), 1);
    masses.insert(j.at("mass").get<std::string>());
  }
  EXPECT_EQ(masses, (std::set<std::string>{"2/5", "3/5"}));
  const ApproxIRS s = vershik_irs_sampled({Rational(1)}, VershikTarget::parse("alt:2"), {}, 10, 1);
  const auto j = nlohmann::json::parse(to_jsonl(s));
  EXPECT_EQ(j.at("n_samples"), 10);
  EXPECT_TRUE(j.contains("stderr"));
  EXPECT_EQ(to_string(parse_rational("0.25")), "1/4");
  EXPECT_EQ(to_string(parse_rational("3")), "3/1");
}
