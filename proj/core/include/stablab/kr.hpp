#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablab/clopen.hpp"

namespace stablab {

/// A T-tower B, TB, ..., T^{h-1}B. `label` records where the base came from
/// (the return word for towers built by kr_partition).
struct Tower {
  ClopenSet base;
  std::size_t height = 1;
  std::string label;
};

/// Outcome of the exact partition checks on a list of towers.
struct KRCheck {
  bool partitions = false;
  bool roof_to_base = false;
  std::string failure;
  bool ok() const { return partitions && roof_to_base; }
};

KRCheck check_towers(const SubshiftPtr& space, const std::vector<Tower>& towers);

/// A Kakutani-Rokhlin partition: towers whose atoms T^i B_v partition X
/// and with T(roof) = base. Validated on construction.
class KRPartition {
 public:
  KRPartition(SubshiftPtr space, std::vector<Tower> towers);

  const SubshiftPtr& space() const noexcept { return space_; }
  const std::vector<Tower>& towers() const noexcept { return towers_; }
  std::size_t atom_count() const noexcept { return atom_count_; }
  /// Atom (v, i) has flat index offset(v) + i.
  std::size_t offset(std::size_t v) const { return offsets_.at(v); }
  std::pair<std::size_t, std::size_t> atom_at(std::size_t flat) const;
  /// T^i B_v
  ClopenSet atom(std::size_t v, std::size_t i) const;
  ClopenSet atom(std::size_t flat) const;

  ClopenSet base() const;
  ClopenSet roof() const;
  std::size_t min_height() const;

  /// Flat index of the atom containing the point with this centred window.
  std::size_t locate(std::string_view window) const;

  /// {"towers":[{"label","height","resolution","base":[...]}...]}
  std::string to_json() const;

 private:
  SubshiftPtr space_;
  std::vector<Tower> towers_;
  std::vector<std::size_t> offsets_;
  std::size_t atom_count_ = 0;
};

/// Words w such that wu is admissible, begins with u, and u occurs in wu
/// only at positions 0 and |w|. Sorted by length, then lexicographically.
std::vector<std::string> return_words(const Subshift& space, std::string_view u,
                                      std::size_t max_length = 4096);

/// Towers over the cylinder {x : x[-anchor .. -anchor+|u|-1] = u}, one per
/// return word w, with base {x : x[-anchor ..] starts with wu} and height |w|.
KRPartition kr_partition(const SubshiftPtr& space, std::string_view u, std::size_t anchor = 0);

/// Splits every tower so that each atom lies in one part of the partition,
/// keeping base, roof and heights.
KRPartition refine_kr(const KRPartition& xi, const std::vector<ClopenSet>& partition);

}  // namespace stablab
