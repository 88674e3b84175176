#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "stablab/common.hpp"
#include "stablab/perms.hpp"
#include "stablab/words.hpp"

namespace stablab {

/// Radius-r shadow of a subgroup H of the free group: H intersected with B(r).
using CylinderFingerprint = WordSet;

/// A finite action of the free group: generator images on {0, ..., m-1}.
using FiniteGSet = GenTuple;

/// Radius-r marginal of an invariant random subgroup: a probability
/// distribution over cylinder fingerprints.
template <class Mass>
struct EmpiricalIRS {
  int rank = 1;
  int radius = 0;
  std::map<CylinderFingerprint, Mass> masses;

  Mass total() const {
    Mass t = 0;
    for (const auto& [_, m] : masses) t += m;
    return t;
  }
  Mass mass_of(const CylinderFingerprint& f) const {
    auto it = masses.find(f);
    return it == masses.end() ? Mass(0) : it->second;
  }
};

using ExactIRS = EmpiricalIRS<Rational>;

/// Floating-point IRS: sampled estimates carry n_samples and per-fingerprint
/// standard errors; measured ones (full-group pushforwards) carry a tolerance.
struct ApproxIRS : EmpiricalIRS<double> {
  std::optional<std::uint64_t> n_samples;
  std::map<CylinderFingerprint, double> stderr_of;
  double tolerance = 0.0;
};

ApproxIRS to_approx(const ExactIRS& irs);

/// Ball-word fixation masks of every point: out[x][i] iff ball[i] fixes x.
std::vector<std::vector<bool>> fixation_masks(const GenTuple& action, const Ball& ball);

/// { w in ball : w(x) = x }.
CylinderFingerprint fingerprint(const GenTuple& action, std::uint32_t x, const Ball& ball);

/// The IRS associated to a finite G-set: push forward the uniform measure.
ExactIRS irs_of_gset(const FiniteGSet& x, int radius);

/// Disjoint union X u Y with Y's points shifted after X's.
FiniteGSet disjoint_union(const FiniteGSet& x, const FiniteGSet& y);

/// The trivial action of rank d on m points.
FiniteGSet trivial_gset(int rank, std::size_t m);

/// Convex combination of IRS of a common radius; weights must be >= 0 and sum to 1.
ExactIRS mixture(const std::vector<std::pair<ExactIRS, Rational>>& parts);

/// q copies of X plus r trivial points, where target = q|X| + r, 0 <= r < |X|.
FiniteGSet pad_gset(const FiniteGSet& x, std::size_t target);

/// ((target - r)/target) irs(X) + (r/target) delta_{full ball}.
ExactIRS padding_formula(const ExactIRS& irs, std::size_t size, std::size_t target);

/// A finite group given by its BFS closure and marking.
class FiniteGroup {
 public:
  explicit FiniteGroup(GenTuple marking, std::size_t cap = kDefaultClosureCap);

  const GenTuple& marking() const noexcept { return marking_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  const Perm& operator[](std::size_t i) const { return elements_[i]; }
  /// Index of an element, or order() if not in the group.
  std::size_t index_of(const Perm& p) const;

  /// Sorted element indices of the subgroup generated by the given elements.
  std::vector<std::size_t> subgroup(const std::vector<std::size_t>& generators) const;
  /// Throws unless the indices form a subgroup.
  void check_subgroup(const std::vector<std::size_t>& members) const;

  /// Left action of the marking on the cosets gH; one point per coset.
  GenTuple coset_action(const std::vector<std::size_t>& subgroup) const;

 private:
  GenTuple marking_;
  std::vector<Perm> elements_;
  std::map<std::string, std::size_t> index_;
};

/// A subgroup given by generator indices into the group's element list, with its weight.
struct IRSAtom {
  std::vector<std::size_t> generators;
  Rational weight;
};

/// Sum of weight_i times the uniform measure on conjugates g H_i g^-1,
/// computed directly from the conjugates.
ExactIRS atomic_irs(const FiniteGroup& group, const std::vector<IRSAtom>& atoms, int radius);

/// Disjoint union of coset actions G/H_i with multiplicities clearing the
/// weight denominators, so that its associated IRS equals atomic_irs.
FiniteGSet realize_irs_as_gset(const FiniteGroup& group, const std::vector<IRSAtom>& atoms,
                               std::size_t size_cap = 1'000'000);

/// Total variation (1/2) sum_F |mu(F) - nu(F)|.
template <class Mass>
Mass irs_distance(const EmpiricalIRS<Mass>& mu, const EmpiricalIRS<Mass>& nu) {
  if (mu.radius != nu.radius || mu.rank != nu.rank) {
    throw InvalidArgument("IRS radius or rank mismatch in distance");
  }
  Mass sum = 0;
  auto diff = [](const Mass& a, const Mass& b) { return a > b ? Mass(a - b) : Mass(b - a); };
  for (const auto& [f, m] : mu.masses) sum += diff(m, nu.mass_of(f));
  for (const auto& [f, m] : nu.masses) {
    if (!mu.masses.count(f)) sum += m;
  }
  return sum / 2;
}

/// Restricts every fingerprint to radius r and merges masses.
template <class Mass>
EmpiricalIRS<Mass> restrict_irs(const EmpiricalIRS<Mass>& irs, int r) {
  EmpiricalIRS<Mass> out;
  out.rank = irs.rank;
  out.radius = r;
  for (const auto& [f, m] : irs.masses) out.masses[f.restrict(r)] += m;
  return out;
}

/// Every fingerprint passes check_fingerprint and has the IRS radius.
bool fingerprints_valid(const ExactIRS& irs);
bool fingerprints_valid(const ApproxIRS& irs);

/// Number of independent random streams used by sample_irs. The sample
/// partition depends only on this constant, never on the thread count.
inline constexpr std::size_t kSampleStreams = 16;

/// Monte Carlo pushforward of a point measure under the stabilizer map.
///
/// `sampler(rng)` draws a point, `fixes(i, point)` decides whether ball word i
/// fixes it. Stream s uses an engine seeded from (seed, s); streams run in
/// parallel and are merged in stream order.
template <class Point>
ApproxIRS sample_irs(const std::function<Point(std::mt19937_64&)>& sampler,
                     const std::function<bool(std::size_t, const Point&)>& fixes, const Ball& ball,
                     std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("sample_irs needs at least one sample");
  using Counts = std::map<std::vector<bool>, std::uint64_t>;
  auto run_stream = [&](std::size_t stream, std::uint64_t begin, std::uint64_t end) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x5ab1e5u};
    std::mt19937_64 rng(seq);
    Counts counts;
    std::vector<bool> mask(ball.size());
    for (std::uint64_t s = begin; s < end; ++s) {
      Point p;
      try {
        p = sampler(rng);
      } catch (const std::exception& e) {
        throw std::runtime_error("sampler failed at sample " + std::to_string(s) + ": " + e.what());
      }
      for (std::size_t i = 0; i < ball.size(); ++i) mask[i] = fixes(i, p);
      ++counts[mask];
    }
    return counts;
  };

  const std::size_t streams = static_cast<std::size_t>(std::min<std::uint64_t>(kSampleStreams, n));
  std::vector<std::future<Counts>> futures;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Counts> results(streams);
  for (std::size_t s = 0; s < streams; ++s) {
    const std::uint64_t begin = n * s / streams;
    const std::uint64_t end = n * (s + 1) / streams;
    if (workers == 1) {
      results[s] = run_stream(s, begin, end);
    } else {
      futures.push_back(std::async(std::launch::async, run_stream, s, begin, end));
    }
  }
  for (std::size_t s = 0; s < futures.size(); ++s) results[s] = futures[s].get();

  Counts merged;
  for (const auto& c : results) {
    for (const auto& [mask, k] : c) merged[mask] += k;
  }
  ApproxIRS out;
  out.rank = ball.rank();
  out.radius = ball.radius();
  out.n_samples = n;
  const double dn = static_cast<double>(n);
  for (const auto& [mask, k] : merged) {
    const double p = static_cast<double>(k) / dn;
    auto f = WordSet::from_mask(ball, mask);
    out.stderr_of[f] = std::sqrt(p * (1.0 - p) / dn);
    out.masses.emplace(std::move(f), p);
  }
  return out;
}

/// Standard-error scale of the total variation between two sampled IRS:
/// (1/2) sum_F sqrt(se_mu(F)^2 + se_nu(F)^2).
double combined_stderr(const ApproxIRS& mu, const ApproxIRS& nu);

/// JSON-lines: one {"r","W","mass",...} object per fingerprint.
std::string to_jsonl(const ExactIRS& irs);
std::string to_jsonl(const ApproxIRS& irs);

}  // namespace stablab
