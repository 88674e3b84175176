#include "stablab/kr.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace stablab {

KRCheck check_towers(const SubshiftPtr& space, const std::vector<Tower>& towers) {
  KRCheck out;
  if (towers.empty()) {
    out.failure = "no towers";
    return out;
  }
  std::vector<ClopenSet> atoms;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < towers.size(); ++v) {
    if (towers[v].base.space() != space) throw InvalidArgument("tower base lives in another subshift");
    if (towers[v].height == 0) {
      out.failure = "tower " + std::to_string(v) + " has height 0";
      return out;
    }
    for (std::size_t i = 0; i < towers[v].height; ++i) {
      atoms.push_back(towers[v].base.shifted(static_cast<long>(i)));
      names.push_back("(" + std::to_string(v) + "," + std::to_string(i) + ")");
    }
  }
  const int l = common_resolution(atoms);
  out.partitions = true;
  for (const auto& w : space->language(static_cast<std::size_t>(2 * l + 1))) {
    std::vector<std::size_t> hits;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (atoms[a].contains_window(w)) hits.push_back(a);
    }
    if (hits.size() != 1) {
      out.partitions = false;
      out.failure = hits.empty() ? "window " + w + " lies in no atom"
                                 : "atoms " + names[hits[0]] + " and " + names[hits[1]] +
                                       " overlap at window " + w;
      return out;
    }
  }
  ClopenSet roof = ClopenSet::empty(space), base = ClopenSet::empty(space);
  for (const auto& t : towers) {
    base = base | t.base;
    roof = roof | t.base.shifted(static_cast<long>(t.height) - 1);
  }
  out.roof_to_base = roof.shifted(1) == base;
  if (!out.roof_to_base) out.failure = "T(roof) differs from the base";
  return out;
}

KRPartition::KRPartition(SubshiftPtr space, std::vector<Tower> towers)
    : space_(std::move(space)), towers_(std::move(towers)) {
  const KRCheck check = check_towers(space_, towers_);
  if (!check.ok()) throw InvalidArgument("not a Kakutani-Rokhlin partition: " + check.failure);
  for (const auto& t : towers_) {
    offsets_.push_back(atom_count_);
    atom_count_ += t.height;
  }
}

std::pair<std::size_t, std::size_t> KRPartition::atom_at(std::size_t flat) const {
  if (flat >= atom_count_) throw InvalidArgument("atom index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
  const auto v = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {v, flat - offsets_[v]};
}

ClopenSet KRPartition::atom(std::size_t v, std::size_t i) const {
  if (v >= towers_.size() || i >= towers_[v].height) throw InvalidArgument("no such atom");
  return towers_[v].base.shifted(static_cast<long>(i));
}

ClopenSet KRPartition::atom(std::size_t flat) const {
  const auto [v, i] = atom_at(flat);
  return atom(v, i);
}

ClopenSet KRPartition::base() const {
  ClopenSet out = ClopenSet::empty(space_);
  for (const auto& t : towers_) out = out | t.base;
  return out;
}

ClopenSet KRPartition::roof() const {
  ClopenSet out = ClopenSet::empty(space_);
  for (const auto& t : towers_) out = out | t.base.shifted(static_cast<long>(t.height) - 1);
  return out;
}

std::size_t KRPartition::min_height() const {
  std::size_t h = towers_.front().height;
  for (const auto& t : towers_) h = std::min(h, t.height);
  return h;
}

std::size_t KRPartition::locate(std::string_view window) const {
  for (std::size_t a = 0; a < atom_count_; ++a) {
    if (atom(a).contains_window(window)) return a;
  }
  throw InvalidArgument("window " + std::string(window) + " lies in no atom");
}

std::string KRPartition::to_json() const {
  std::ostringstream os;
  os << "{\"towers\":[";
  for (std::size_t v = 0; v < towers_.size(); ++v) {
    const auto& t = towers_[v];
    os << (v ? "," : "") << "{\"label\":\"" << t.label << "\",\"height\":" << t.height
       << ",\"resolution\":" << t.base.resolution() << ",\"base\":[";
    for (std::size_t i = 0; i < t.base.members().size(); ++i) {
      os << (i ? "," : "") << '"' << t.base.members()[i] << '"';
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::vector<std::string> return_words(const Subshift& space, std::string_view u,
                                      std::size_t max_length) {
  if (u.empty() || !space.admissible(u)) {
    throw InvalidArgument("\"" + std::string(u) + "\" is not an admissible word");
  }
  std::vector<std::string> out;
  std::vector<std::string> frontier{std::string(u)};
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& v : frontier) {
      if (v.size() - u.size() >= max_length) {
        throw ResourceError("return-word search for \"" + std::string(u) +
                            "\" exceeded length " + std::to_string(max_length));
      }
      for (char c : space.alphabet()) {
        std::string e = v + c;
        if (!space.admissible(e)) continue;
        if (std::string_view(e).substr(e.size() - u.size()) == u) {
          out.push_back(e.substr(0, e.size() - u.size()));
        } else {
          next.push_back(std::move(e));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

KRPartition kr_partition(const SubshiftPtr& space, std::string_view u, std::size_t anchor) {
  if (anchor >= u.size()) throw InvalidArgument("anchor must lie inside the seed word");
  std::vector<Tower> towers;
  for (const auto& w : return_words(*space, u)) {
    towers.push_back({ClopenSet::cylinder(space, w + std::string(u), -static_cast<long>(anchor)),
                      w.size(), w});
  }
  return KRPartition(space, std::move(towers));
}

KRPartition refine_kr(const KRPartition& xi, const std::vector<ClopenSet>& partition) {
  check_partition(partition);
  const int p = common_resolution(partition);
  std::unordered_map<std::string, std::size_t> part_of;
  for (std::size_t k = 0; k < partition.size(); ++k) {
    if (partition[k].space() != xi.space()) throw InvalidArgument("partition lives in another subshift");
    for (const auto& w : partition[k].refined(p).members()) part_of.emplace(w, k);
  }
  const std::size_t width = static_cast<std::size_t>(2 * p + 1);
  std::vector<Tower> towers;
  for (const auto& t : xi.towers()) {
    // x in B is sorted by the parts visited by x, Tx, ..., T^{h-1}x.
    const int l = std::max(t.base.resolution(), p + static_cast<int>(t.height) - 1);
    std::map<std::vector<std::size_t>, std::vector<std::string>> groups;
    for (const auto& v : t.base.refined(l).members()) {
      std::vector<std::size_t> sig(t.height);
      for (std::size_t i = 0; i < t.height; ++i) {
        sig[i] = part_of.at(v.substr(static_cast<std::size_t>(l - p) + i, width));
      }
      groups[std::move(sig)].push_back(v);
    }
    std::size_t k = 0;
    for (auto& [sig, words] : groups) {
      ClopenSet b(xi.space(), l, std::move(words));
      towers.push_back({b.normalized(), t.height,
                        groups.size() == 1 ? t.label : t.label + "#" + std::to_string(k)});
      ++k;
    }
  }
  return KRPartition(xi.space(), std::move(towers));
}

}  // namespace stablab
