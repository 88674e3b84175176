#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stablab/marked.hpp"
#include "stablab/oracle.hpp"

using namespace stablab;

namespace {

ReducedWord random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), key(0, 3);
  std::vector<int> ls(static_cast<std::size_t>(len(rng)));
  for (auto& x : ls) x = letter_from_key(key(rng));
  return ReducedWord::reduce(2, ls);
}

AZElement az(const ReducedWord& w) { return *az_oracle()->evaluate(w).get<AZElement>(); }

// nu by brute force: compare "dies" on every word of the ball.
template <class DiesA, class DiesB>
int brute_nu(DiesA dies_a, DiesB dies_b, int r_max) {
  const auto ball = oracle::brute_ball(2, r_max);
  int nu = r_max;
  for (const auto& w : ball) {
    if (dies_a(w) != dies_b(w)) nu = std::min(nu, static_cast<int>(w.length()) - 1);
  }
  return nu;
}

}  // namespace

TEST(AZ, Examples) {
  EXPECT_TRUE(az(ReducedWord(2)).is_identity());
  const AZElement conj = az(ReducedWord::parse(2, "abA"));
  EXPECT_EQ(conj, AZElement({{0, 1}, {1, 2}, {2, 0}}, 0));
  EXPECT_TRUE(az(ReducedWord::parse(2, "bbb")).is_identity());
  EXPECT_EQ(az(ReducedWord::parse(2, "aaaaa")), AZElement::shift_by(5));
  EXPECT_EQ(az(ReducedWord::parse(2, "b")), AZElement::three_cycle_at(0));
  EXPECT_THROW(AZElement({{0, 1}, {1, 0}}, 0), InvalidArgument);
}

TEST(AZ, AgreesWithPointSimulation) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const ReducedWord w = random_word(rng, 14);
    const AZElement g = az(w);
    EXPECT_EQ(g.shift(), w.exponent_sum(1));
    for (long n = -20; n <= 20; ++n) EXPECT_EQ(g.apply(n), oracle::az_apply(w, n)) << w.str() << " " << n;
    EXPECT_EQ(g.is_identity(), oracle::az_trivial(w));
    EXPECT_LE(g.support_radius(), static_cast<long>(w.length()) + 1);
  }
}

TEST(AZ, GroupAxiomsAndParity) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const AZElement x = az(random_word(rng, 8)), y = az(random_word(rng, 8)), z = az(random_word(rng, 8));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_TRUE((x * x.inverse()).is_identity());
    EXPECT_TRUE((x * y).sigma_is_even());
  }
}

TEST(AltOracle, OrdersAndKernels) {
  for (int r : {2, 3, 4}) {
    const auto o = alt_oracle(r);
    EXPECT_TRUE(o->evaluate(ReducedWord::parse(2, "a").power(2 * r + 1)).is_identity());
    EXPECT_TRUE(o->evaluate(ReducedWord::parse(2, "bbb")).is_identity());
  }
  EXPECT_NE(kernel_fingerprint(*alt_oracle(2), 5), kernel_fingerprint(*alt_oracle(3), 5));
  EXPECT_THROW(alt_oracle(1), InvalidArgument);
}

TEST(MarkedNu, ExactValuesAgainstBruteForce) {
  const auto a2 = alt_oracle(2), a3 = alt_oracle(3), z = az_oracle();
  const NuResult same = marked_nu(*a2, *a2, 5);
  EXPECT_TRUE(same.at_least);
  EXPECT_EQ(same.nu, 5);

  auto alt_dies = [](int r) {
    return [r](const ReducedWord& w) { return oracle::is_identity(oracle::alt_word(w, r)); };
  };
  const NuResult n2z = marked_nu(*a2, *z, 5);
  EXPECT_FALSE(n2z.at_least);
  EXPECT_LE(n2z.nu, 4);
  EXPECT_EQ(n2z.nu, brute_nu(alt_dies(2), oracle::az_trivial, 5));
  const NuResult n23 = marked_nu(*a2, *a3, 5);
  EXPECT_LE(n23.nu, 4);
  EXPECT_EQ(n23.nu, brute_nu(alt_dies(2), alt_dies(3), 5));
  EXPECT_DOUBLE_EQ(n23.distance(), std::ldexp(1.0, -n23.nu));
}

TEST(MarkedNu, SymmetricAndUltrametric) {
  const std::vector<OraclePtr> os{alt_oracle(2), alt_oracle(3), alt_oracle(4), alt_oracle(5),
                                  az_oracle(), trivial_oracle(2), free_oracle(2)};
  const int r_max = 6;
  for (const auto& x : os) {
    for (const auto& y : os) {
      const int xy = marked_nu(*x, *y, r_max).nu;
      EXPECT_EQ(xy, marked_nu(*y, *x, r_max).nu);
      for (const auto& z : os) {
        EXPECT_GE(marked_nu(*x, *z, r_max).nu, std::min(xy, marked_nu(*y, *z, r_max).nu));
      }
    }
  }
}

TEST(MarkedNu, ConvergenceTable) {
  const auto z = az_oracle();
  for (const auto& row : convergence_table({z, z}, *z, 4)) EXPECT_TRUE(row.at_least);
  std::vector<OraclePtr> seq;
  for (int r = 2; r <= 8; ++r) seq.push_back(alt_oracle(r));
  const auto t = convergence_table(seq, *z, 8);
  ASSERT_EQ(t.size(), 7u);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GE(t[i].nu, t[i - 1].nu);
  EXPECT_GT(t.back().nu, t.front().nu);
  EXPECT_EQ(convergence_table({seq[1]}, *z, 6)[0].nu, marked_nu(*seq[1], *z, 6).nu);
}

TEST(Diagonal, ProjectionsAndDefects) {
  std::vector<GenTuple> fs{alt_marking(2), alt_marking(3), alt_marking(4)};
  const TruncatedDiagonalProduct d(fs);
  for (std::size_t m = 0; m < fs.size(); ++m) {
    for (std::size_t s = 0; s < 2; ++s) EXPECT_EQ(d.project(d.marking()[s], m), fs[m][s]);
  }
  const auto z = az_oracle();
  EXPECT_TRUE(tail_defect(ReducedWord(2), d, *z).defect.empty());
  const auto a5 = tail_defect(ReducedWord::parse(2, "aaaaa"), d, *z);
  EXPECT_FALSE(a5.trivial_in_target);
  EXPECT_EQ(a5.defect, (std::vector<std::size_t>{1, 2}));
  const auto b3 = tail_defect(ReducedWord::parse(2, "bbb"), d, *z);
  EXPECT_TRUE(b3.trivial_in_target);
  EXPECT_TRUE(b3.defect.empty());
}

TEST(Diagonal, DefectsOfTargetKernelWordsAreFinite) {
  // Conjugated commutators of 3-cycles three or more apart die in A(Z) but
  // survive in Alt([[r]]) for small r.
  const auto z = az_oracle();
  const ReducedWord a = ReducedWord::parse(2, "a"), b = ReducedWord::parse(2, "b");
  const auto prod = neumann_truncation(0, 12);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 3; j < 7; ++j) {
      const ReducedWord x = a.power(i) * b * a.power(-i), y = a.power(j) * b * a.power(-j);
      const ReducedWord w = x * y * x.inverse() * y.inverse();
      ASSERT_TRUE(oracle::az_trivial(w));
      const auto d = tail_defect(w, prod, *z);
      EXPECT_TRUE(d.trivial_in_target);
      for (std::size_t m = 0; m < prod.size(); ++m) {
        const int r = default_radius_sequence(static_cast<int>(m));
        const bool in_defect = std::find(d.defect.begin(), d.defect.end(), m) != d.defect.end();
        EXPECT_EQ(in_defect, !oracle::is_identity(oracle::alt_word(w, r))) << w.str() << " r=" << r;
        if (r >= static_cast<int>(w.length()) + 2) EXPECT_FALSE(in_defect);
      }
    }
  }
}

TEST(Diagonal, NeumannTruncations) {
  const auto one = neumann_truncation(3, 1);
  EXPECT_EQ(kernel_fingerprint(*one.oracle(), 5), kernel_fingerprint(*alt_oracle(5), 5));
  EXPECT_THROW(neumann_truncation(0, 0), InvalidArgument);
  for (int m : {1, 2}) {
    std::vector<int> nus;
    for (int n = 0; n < 5; ++n) {
      nus.push_back(marked_nu(*neumann_truncation(n, m).oracle(), *neumann_truncation(n + 1, m).oracle(), 8).nu);
    }
    for (std::size_t i = 1; i < nus.size(); ++i) EXPECT_GE(nus[i], nus[i - 1]);
    if (m == 1) EXPECT_GT(nus.back(), nus.front());
  }
}

TEST(Oracles, FromSpec) {
  EXPECT_EQ(oracle_from_spec("az")->name(), "az");
  EXPECT_EQ(kernel_fingerprint(*oracle_from_spec("alt:3"), 4), kernel_fingerprint(*alt_oracle(3), 4));
  EXPECT_EQ(oracle_from_spec("free:3")->rank(), 3);
  EXPECT_EQ(oracle_from_spec("trivial:2")->rank(), 2);
  EXPECT_EQ(kernel_fingerprint(*oracle_from_spec("neumann:2:3"), 4),
            kernel_fingerprint(*neumann_truncation(2, 3).oracle(), 4));
  EXPECT_THROW(oracle_from_spec("alt"), InvalidArgument);
  EXPECT_THROW(oracle_from_spec("bogus:1"), InvalidArgument);
}
