#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablab/oracle.hpp"
#include "stablab/perms.hpp"
#include "stablab/words.hpp"

namespace stablab {

/// An element (sigma, t) of the alternating enrichment FAlt(Z) x| Z.
///
/// sigma is a finitely supported even permutation of Z stored as the sorted
/// list of its moved points; t is the shift. The element acts on Z by
/// n -> sigma(n + t). Equality is structural on the normalized form.
class AZElement {
 public:
  AZElement() = default;
  /// Validates bijectivity and evenness of the finite map; fixed points are dropped.
  AZElement(std::vector<std::pair<long, long>> sigma, long shift);

  static AZElement shift_by(long t) { return AZElement({}, t); }
  /// The 3-cycle (c-1 c c+1).
  static AZElement three_cycle_at(long c);

  long shift() const noexcept { return shift_; }
  const std::vector<std::pair<long, long>>& sigma() const noexcept { return sigma_; }
  long sigma_at(long n) const;
  /// g . n = sigma(n + t)
  long apply(long n) const { return sigma_at(n + shift_); }

  bool is_identity() const noexcept { return shift_ == 0 && sigma_.empty(); }
  bool sigma_is_even() const;
  /// max |n| over the support of sigma, or -1 when sigma is trivial.
  long support_radius() const noexcept;
  AZElement inverse() const;

  /// "((0 1 2),0)"
  std::string str() const;

  /// (sigma, t)(tau, s) = (sigma o (t . tau), t + s), (t . tau)(n) = tau(n - t) + t.
  friend AZElement operator*(const AZElement& a, const AZElement& b);
  friend bool operator==(const AZElement&, const AZElement&) = default;

 private:
  std::vector<std::pair<long, long>> sigma_;
  long shift_ = 0;
};

/// A(Z) marked by S = ((id, 1), ((-1 0 1), 0)).
class AZGroup {
 public:
  using element_type = AZElement;
  int rank() const { return 2; }
  std::string name() const { return "az"; }
  AZElement identity() const { return {}; }
  AZElement letter(int x) const;
};

OraclePtr az_oracle();

/// (Alt([[r]]), T(r)), r >= 2.
OraclePtr alt_oracle(int r);

/// Result of comparing two marked groups on balls.
struct NuResult {
  /// Largest n <= r_max with equal kernels on B(n).
  int nu = 0;
  /// True when kernels agree on all of B(r_max), so only nu >= r_max is known.
  bool at_least = false;
  int r_max = 0;

  /// 2^-nu; for saturated results this is an upper bound on the distance.
  double distance() const;
  std::string str() const;
};

NuResult marked_nu(const MarkedGroupOracle& a, const MarkedGroupOracle& b, int r_max,
                   std::size_t ball_cap = kDefaultBallCap);

/// nu(O_n, target) for each oracle in the sequence, sharing one ball.
std::vector<NuResult> convergence_table(const std::vector<OraclePtr>& sequence,
                                        const MarkedGroupOracle& target, int r_max,
                                        std::size_t ball_cap = kDefaultBallCap);

/// A finite truncation of a diagonal product of marked finite groups.
///
/// Each factor is a marked permutation group; the diagonal marking acts on
/// the disjoint union of the factor domains block by block.
class TruncatedDiagonalProduct {
 public:
  explicit TruncatedDiagonalProduct(std::vector<GenTuple> factors);

  int rank() const noexcept { return marking_.rank(); }
  std::size_t size() const noexcept { return factors_.size(); }
  const std::vector<GenTuple>& factors() const noexcept { return factors_; }
  const GenTuple& marking() const noexcept { return marking_; }
  /// First point of block m in the disjoint union.
  std::size_t offset(std::size_t m) const { return offsets_[m]; }

  /// Restriction of a block-diagonal permutation to block m.
  Perm project(const Perm& p, std::size_t m) const;

  OraclePtr oracle(std::string name = "diagonal") const;

 private:
  std::vector<GenTuple> factors_;
  std::vector<std::size_t> offsets_;
  GenTuple marking_;
};

OraclePtr diagonal_oracle(const std::vector<GenTuple>& factors);

/// Factor indices at which a word is nontrivial, for a word that the
/// target (tail) group kills.
struct TailDefect {
  ReducedWord word;
  bool trivial_in_target = false;
  std::vector<std::size_t> defect;
};

TailDefect tail_defect(const ReducedWord& w, const TruncatedDiagonalProduct& product,
                       const MarkedGroupOracle& target);

/// Radius sequence r0 for the Neumann family; must be >= 2 and strictly increasing.
using RadiusSequence = std::function<int(int)>;
inline int default_radius_sequence(int m) { return m + 2; }

/// Factors Alt([[r0(m + offset)]]) for m < count.
TruncatedDiagonalProduct neumann_truncation(int offset, int count,
                                            const RadiusSequence& r0 = default_radius_sequence);

/// Parses "az", "alt:r", "neumann:n:M", "free:d", "trivial:d".
OraclePtr oracle_from_spec(const std::string& spec);

}  // namespace stablab
