#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stablab/common.hpp"
#include "stablab/irs.hpp"

namespace stablab {

/// Stabilizer IRS of i.i.d. random colourings.
///
/// Each site is coloured independently with law `alpha` (probabilities of
/// colours 0..C-1, summing to 1). A group element g fixes a colouring c iff
/// c o g^-1 = c, i.e. c is constant on every orbit of g.
///
/// Targets: "alt:n" colours the 2n+1 points of [[n]] acted on by the pair
/// (alpha_n, beta_n); "az" colours the window [-R, R] of Z acted on by A(Z).
/// For az, shift-free elements are decided exactly (their support must fit
/// in the window); elements with nonzero shift are decided on the pairs
/// (m, g.m) that both lie in the window.
struct VershikTarget {
  bool az = true;
  int n = 0;

  static VershikTarget parse(const std::string& spec);
  std::string str() const;
};

struct VershikOptions {
  int radius = 2;
  /// Half-width R of the colouring window for az targets.
  int window = 64;
  /// Cap on the number of colourings enumerated in exact mode.
  std::size_t enumeration_cap = std::size_t{1} << 22;
};

/// Exact pushforward by enumerating every colouring (alt targets, or the az window).
ExactIRS vershik_irs_exact(const std::vector<Rational>& alpha, const VershikTarget& target,
                           const VershikOptions& options);

/// Monte Carlo estimate from n_samples independent colourings.
ApproxIRS vershik_irs_sampled(const std::vector<Rational>& alpha, const VershikTarget& target,
                              const VershikOptions& options, std::uint64_t n_samples,
                              std::uint64_t seed);

/// Smallest window half-width R accepted for an az target at radius r.
int vershik_min_window(int radius);

}  // namespace stablab
