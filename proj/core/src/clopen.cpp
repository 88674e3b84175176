#include "stablab/clopen.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>

namespace stablab {

namespace {

void check_resolution(long l) {
  if (l < 0) throw InvalidArgument("negative resolution");
  if (l > kMaxResolution) {
    throw ResourceError("clopen resolution " + std::to_string(l) + " exceeds the cap of " +
                        std::to_string(kMaxResolution));
  }
}

std::size_t window_length(int l) { return static_cast<std::size_t>(2 * l + 1); }

bool has(const std::vector<std::string>& sorted, std::string_view w) {
  return std::binary_search(sorted.begin(), sorted.end(), w);
}

void same_space(const ClopenSet& a, const ClopenSet& b) {
  if (a.space() != b.space()) throw InvalidArgument("clopen sets live in different subshifts");
}

}  // namespace

ClopenSet::ClopenSet(SubshiftPtr space, int resolution, std::vector<std::string> members, bool)
    : space_(std::move(space)), resolution_(resolution), members_(std::move(members)) {}

ClopenSet::ClopenSet(SubshiftPtr space, int resolution, std::vector<std::string> members)
    : space_(std::move(space)), resolution_(resolution), members_(std::move(members)) {
  if (!space_) throw InvalidArgument("clopen set needs a subshift");
  check_resolution(resolution_);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (const auto& w : members_) {
    if (w.size() != window_length(resolution_) || !space_->admissible(w)) {
      throw InvalidArgument("\"" + w + "\" is not an admissible window of length " +
                            std::to_string(window_length(resolution_)));
    }
  }
}

ClopenSet ClopenSet::empty(SubshiftPtr space, int resolution) {
  check_resolution(resolution);
  return ClopenSet(std::move(space), resolution, {}, true);
}

ClopenSet ClopenSet::full(SubshiftPtr space, int resolution) {
  check_resolution(resolution);
  auto words = space->language(window_length(resolution));
  return ClopenSet(std::move(space), resolution, std::move(words), true);
}

ClopenSet ClopenSet::cylinder(SubshiftPtr space, std::string_view u, long position) {
  if (u.empty()) return full(std::move(space));
  const long last = position + static_cast<long>(u.size()) - 1;
  const long l = std::max(std::labs(position), std::labs(last));
  check_resolution(l);
  std::vector<std::string> members;
  for (const auto& v : space->language(window_length(static_cast<int>(l)))) {
    if (std::string_view(v).substr(static_cast<std::size_t>(position + l), u.size()) == u) {
      members.push_back(v);
    }
  }
  return ClopenSet(std::move(space), static_cast<int>(l), std::move(members), true);
}

bool ClopenSet::contains_window(std::string_view window) const {
  if (window.size() % 2 == 0 || window.size() < window_length(resolution_)) {
    throw InvalidArgument("point window of length " + std::to_string(window.size()) +
                          " cannot decide a set of resolution " + std::to_string(resolution_));
  }
  const std::size_t c = window.size() / 2;
  return has(members_, window.substr(c - static_cast<std::size_t>(resolution_),
                                     window_length(resolution_)));
}

ClopenSet ClopenSet::refined(int resolution) const {
  if (resolution < resolution_) {
    throw InvalidArgument("cannot refine from resolution " + std::to_string(resolution_) +
                          " down to " + std::to_string(resolution));
  }
  if (resolution == resolution_) return *this;
  check_resolution(resolution);
  const auto off = static_cast<std::size_t>(resolution - resolution_);
  std::vector<std::string> members;
  if (!members_.empty()) {
    for (const auto& v : space_->language(window_length(resolution))) {
      if (has(members_, std::string_view(v).substr(off, window_length(resolution_)))) {
        members.push_back(v);
      }
    }
  }
  return ClopenSet(space_, resolution, std::move(members), true);
}

ClopenSet ClopenSet::normalized() const {
  if (members_.empty()) return empty(space_);
  for (int l = 0; l < resolution_; ++l) {
    const auto off = static_cast<std::size_t>(resolution_ - l);
    std::vector<std::string> coarse;
    for (const auto& w : members_) coarse.push_back(w.substr(off, window_length(l)));
    std::sort(coarse.begin(), coarse.end());
    coarse.erase(std::unique(coarse.begin(), coarse.end()), coarse.end());
    ClopenSet candidate(space_, l, std::move(coarse), true);
    if (candidate.refined(resolution_).size() == members_.size()) return candidate;
  }
  return *this;
}

ClopenSet ClopenSet::shifted(long a) const {
  if (a == 0) return *this;
  const long l = resolution_ + std::labs(a);
  check_resolution(l);
  const auto start = static_cast<std::size_t>(std::labs(a) - a);
  std::vector<std::string> members;
  if (!members_.empty()) {
    for (const auto& v : space_->language(window_length(static_cast<int>(l)))) {
      if (has(members_, std::string_view(v).substr(start, window_length(resolution_)))) {
        members.push_back(v);
      }
    }
  }
  return ClopenSet(space_, static_cast<int>(l), std::move(members), true);
}

ClopenSet ClopenSet::complement() const {
  const auto& all = space_->language(window_length(resolution_));
  std::vector<std::string> out;
  std::set_difference(all.begin(), all.end(), members_.begin(), members_.end(),
                      std::back_inserter(out));
  return ClopenSet(space_, resolution_, std::move(out), true);
}

ClopenSet operator&(const ClopenSet& a, const ClopenSet& b) {
  same_space(a, b);
  const int l = std::max(a.resolution_, b.resolution_);
  const ClopenSet x = a.refined(l), y = b.refined(l);
  std::vector<std::string> out;
  std::set_intersection(x.members_.begin(), x.members_.end(), y.members_.begin(), y.members_.end(),
                        std::back_inserter(out));
  return ClopenSet(a.space_, l, std::move(out), true);
}

ClopenSet operator|(const ClopenSet& a, const ClopenSet& b) {
  same_space(a, b);
  const int l = std::max(a.resolution_, b.resolution_);
  const ClopenSet x = a.refined(l), y = b.refined(l);
  std::vector<std::string> out;
  std::set_union(x.members_.begin(), x.members_.end(), y.members_.begin(), y.members_.end(),
                 std::back_inserter(out));
  return ClopenSet(a.space_, l, std::move(out), true);
}

ClopenSet operator-(const ClopenSet& a, const ClopenSet& b) {
  same_space(a, b);
  const int l = std::max(a.resolution_, b.resolution_);
  const ClopenSet x = a.refined(l), y = b.refined(l);
  std::vector<std::string> out;
  std::set_difference(x.members_.begin(), x.members_.end(), y.members_.begin(), y.members_.end(),
                      std::back_inserter(out));
  return ClopenSet(a.space_, l, std::move(out), true);
}

bool operator==(const ClopenSet& a, const ClopenSet& b) {
  if (a.space_ != b.space_) return false;
  const int l = std::max(a.resolution_, b.resolution_);
  return a.refined(l).members_ == b.refined(l).members_;
}

bool ClopenSet::is_subset_of(const ClopenSet& other) const { return (*this - other).is_empty(); }

bool ClopenSet::disjoint_from(const ClopenSet& other) const { return (*this & other).is_empty(); }

double ClopenSet::measure(const ErgodicMeasure& mu) const {
  if (mu.space() != space_) throw InvalidArgument("measure belongs to a different subshift");
  double total = 0;
  for (const auto& w : members_) total += mu.frequency(w);
  return total;
}

std::string ClopenSet::str() const {
  std::string out = "L=" + std::to_string(resolution_) + "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += members_[i];
  }
  return out + "}";
}

int common_resolution(const std::vector<ClopenSet>& sets) {
  int l = 0;
  for (const auto& s : sets) l = std::max(l, s.resolution());
  return l;
}

void check_partition(const std::vector<ClopenSet>& parts) {
  if (parts.empty()) throw InvalidArgument("a partition needs at least one part");
  const int l = common_resolution(parts);
  const auto& space = parts.front().space();
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].space() != space) throw InvalidArgument("partition parts live in different subshifts");
    const auto r = parts[i].refined(l);
    std::vector<std::string> overlap;
    std::set_intersection(seen.begin(), seen.end(), r.members().begin(), r.members().end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) {
      throw InvalidArgument("partition part " + std::to_string(i) +
                            " overlaps an earlier part at window " + overlap.front());
    }
    std::vector<std::string> merged;
    std::merge(seen.begin(), seen.end(), r.members().begin(), r.members().end(),
               std::back_inserter(merged));
    seen = std::move(merged);
  }
  const auto& all = space->language(window_length(l));
  if (seen.size() != all.size()) {
    std::vector<std::string> missing;
    std::set_difference(all.begin(), all.end(), seen.begin(), seen.end(), std::back_inserter(missing));
    throw InvalidArgument("partition does not cover the window " + missing.front());
  }
}

}  // namespace stablab
