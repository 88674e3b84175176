#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stablab/subshift.hpp"

namespace stablab {

inline constexpr int kMaxResolution = 4096;

/// A clopen subset of a substitution subshift in window form.
///
/// At resolution L a point x belongs to the set iff x[-L..L] is one of the
/// members: sorted, distinct admissible words of length 2L+1. Set
/// operations refine both operands to a common resolution, so equality and
/// emptiness are exact.
class ClopenSet {
 public:
  ClopenSet(SubshiftPtr space, int resolution, std::vector<std::string> members);

  static ClopenSet empty(SubshiftPtr space, int resolution = 0);
  static ClopenSet full(SubshiftPtr space, int resolution = 0);
  /// { x : x[p .. p+|u|-1] = u }
  static ClopenSet cylinder(SubshiftPtr space, std::string_view u, long position = 0);

  const SubshiftPtr& space() const noexcept { return space_; }
  int resolution() const noexcept { return resolution_; }
  const std::vector<std::string>& members() const& noexcept { return members_; }
  /// By value on temporaries, so `for (w : c.refined(l).members())` is safe.
  std::vector<std::string> members() && { return std::move(members_); }
  std::size_t size() const noexcept { return members_.size(); }
  bool is_empty() const noexcept { return members_.empty(); }

  /// Membership of the point whose centred window is `window` (odd length >= 2L+1).
  bool contains_window(std::string_view window) const;

  /// The same set at a finer resolution L >= resolution().
  ClopenSet refined(int resolution) const;
  /// The same set at the smallest resolution that represents it.
  ClopenSet normalized() const;

  /// T^a(C), where (Tx)[n] = x[n+1].
  ClopenSet shifted(long a) const;
  ClopenSet complement() const;

  bool is_subset_of(const ClopenSet& other) const;
  bool disjoint_from(const ClopenSet& other) const;

  double measure(const ErgodicMeasure& mu) const;

  /// "L=1{aab,aba}"
  std::string str() const;

  friend ClopenSet operator&(const ClopenSet& a, const ClopenSet& b);
  friend ClopenSet operator|(const ClopenSet& a, const ClopenSet& b);
  friend ClopenSet operator-(const ClopenSet& a, const ClopenSet& b);
  /// Set equality, independent of resolution.
  friend bool operator==(const ClopenSet& a, const ClopenSet& b);

 private:
  ClopenSet(SubshiftPtr space, int resolution, std::vector<std::string> members, bool trusted);

  SubshiftPtr space_;
  int resolution_ = 0;
  std::vector<std::string> members_;
};

/// Throws InvalidArgument unless the sets are pairwise disjoint and cover X.
void check_partition(const std::vector<ClopenSet>& parts);

/// The largest resolution among the sets.
int common_resolution(const std::vector<ClopenSet>& sets);

}  // namespace stablab
