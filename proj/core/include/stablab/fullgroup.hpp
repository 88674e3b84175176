#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stablab/clopen.hpp"
#include "stablab/irs.hpp"
#include "stablab/kr.hpp"
#include "stablab/perms.hpp"
#include "stablab/words.hpp"

namespace stablab {

/// g acts as T^exponent on `set`.
struct Part {
  ClopenSet set;
  long exponent = 0;
};

/// An element of the topological full group [[T]] as its cocycle table.
///
/// Canonical form: one part per exponent, parts sorted by exponent, every
/// set non-empty and at its minimal resolution. Two tables are equal iff
/// they define the same homeomorphism.
class TableElement {
 public:
  static TableElement identity(SubshiftPtr space);
  /// T^a
  static TableElement shift(SubshiftPtr space, long a = 1);

  const SubshiftPtr& space() const noexcept { return space_; }
  const std::vector<Part>& parts() const noexcept { return parts_; }
  bool is_identity() const { return parts_.size() == 1 && parts_[0].exponent == 0; }
  long max_abs_exponent() const;
  /// Common resolution of the parts.
  int resolution() const;

  /// f_g at the point whose window (odd length) is centred at `center`.
  long cocycle(std::string_view window, std::size_t center) const;
  long cocycle(std::string_view centred_window) const {
    return cocycle(centred_window, centred_window.size() / 2);
  }

  /// Canonical text key; equal keys iff equal elements.
  std::string key() const;
  /// {"parts":[{"exponent":a,"resolution":L,"members":[...]}...]}
  std::string to_json() const;

  friend bool operator==(const TableElement& a, const TableElement& b) { return a.key() == b.key(); }

 private:
  TableElement(SubshiftPtr space, std::vector<Part> parts);
  friend TableElement make_element(SubshiftPtr space, std::vector<Part> parts);
  friend TableElement compose(const TableElement& g, const TableElement& h);
  friend TableElement inverse(const TableElement& g);

  SubshiftPtr space_;
  std::vector<Part> parts_;
};

/// Validates that the sets and their images T^a(C) both partition X.
TableElement make_element(SubshiftPtr space, std::vector<Part> parts);
/// g o h, with f_{gh}(x) = f_g(h(x)) + f_h(x).
TableElement compose(const TableElement& g, const TableElement& h);
TableElement inverse(const TableElement& g);
/// U -> TU -> T^2U -> U, identity elsewhere. Requires U, TU, T^2U pairwise disjoint.
TableElement three_cycle(const ClopenSet& u);

struct BallEntry {
  ReducedWord word;
  TableElement element;
};

/// Distinct elements of B_S(n), each with its shortlex-first word. Letter i
/// of the free group maps to s[i-1], letter -i to its inverse.
std::vector<BallEntry> ball_elements(const std::vector<TableElement>& s, int n,
                                     std::size_t cap = 100000);

/// Exponent of g on every atom of xi (flat order). Throws PreconditionError,
/// naming the atom, when the exponent is not constant on some atom.
std::vector<long> atom_exponents(const TableElement& g, const KRPartition& xi);

struct AtomPerm {
  Perm perm;
  bool tower_preserving = true;
};

/// In-range rule (v, i) -> (v, i + c) within each tower; the remaining atoms
/// of a tower are matched in increasing height order.
AtomPerm atom_action(const TableElement& g, const KRPartition& xi);

struct AdaptOptions {
  /// Deepen the seed at least this many times, even once the height bound holds.
  std::size_t min_depth = 0;
  std::size_t max_depth = 64;
};

/// KR partition with min height >= 2 max|f_g| + 2 over B_S(n) on which
/// every f_g, g in B_S(n), is constant on atoms. The seed u is deepened
/// alternately to the right and to the left by the smallest admissible letter.
KRPartition adapted_partition(const std::vector<TableElement>& s, int n, std::string_view u,
                              const AdaptOptions& options = {});

struct EmbeddingReport {
  bool pass = false;
  bool precondition_ok = false;
  bool injective = false;
  bool multiplicative = false;
  bool block_stab = false;
  std::size_t ball_size = 0;
  std::size_t atom_count = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
  std::vector<BallEntry> ball;
  std::vector<AtomPerm> images;

  std::string to_json() const;
};

/// Checks that g -> atom_action(g) is a local embedding of B_S(n):
/// injective, multiplicative on composable pairs, and for every atom A
/// "g fixes a point of A" iff "f_g = 0 on A" iff "phi(g) fixes A".
EmbeddingReport local_embedding(const std::vector<TableElement>& s, int n, const KRPartition& xi);

struct FullGroupIRS {
  ApproxIRS irs;
  /// Distribution of the per-coordinate fingerprints of the k atoms.
  std::map<std::vector<CylinderFingerprint>, double> joint;
  std::size_t atom_count = 0;
};

/// Stab_* of the k-fold product of the atom measure under the atom action.
FullGroupIRS fullgroup_irs(const KRPartition& xi, const std::vector<TableElement>& s, int k, int r,
                           const ErgodicMeasure& mu);

/// One-coordinate marginal of the joint fingerprint distribution.
ApproxIRS joint_marginal(const FullGroupIRS& irs, std::size_t coordinate);

struct LimitLevel {
  std::string seed;
  std::size_t depth = 0;
  std::size_t atom_count = 0;
  FullGroupIRS irs;
};

struct LimitReport {
  std::vector<LimitLevel> levels;
  /// tv[i][j] between levels i and j.
  std::vector<std::vector<double>> tv;
  double bound = 0;
  bool pass = false;
};

/// A partition level: a seed word deepened at least min_depth times.
struct LevelSpec {
  std::string seed;
  std::size_t min_depth = 0;

  /// "seed" or "seed@depth"
  static LevelSpec parse(const std::string& text);
};

/// fullgroup_irs at every level (deepened until the embedding passes) and
/// their pairwise total variation, against 2 k max|atoms| tolerance.
LimitReport fullgroup_irs_limit_check(const std::vector<TableElement>& s, int k, int r,
                                      const std::vector<LevelSpec>& levels,
                                      const ErgodicMeasure& mu, const AdaptOptions& options = {});

/// The adapted partition of the smallest depth (at least options.min_depth,
/// at most options.max_depth) with a passing local embedding, and that depth.
std::pair<KRPartition, std::size_t> passing_partition(const std::vector<TableElement>& s, int n,
                                                      std::string_view u,
                                                      const AdaptOptions& options = {});

}  // namespace stablab
