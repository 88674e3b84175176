#include "stablab/irs.hpp"

#include <algorithm>
#include <numeric>

namespace stablab {

ApproxIRS to_approx(const ExactIRS& irs) {
  ApproxIRS out;
  out.rank = irs.rank;
  out.radius = irs.radius;
  for (const auto& [f, m] : irs.masses) out.masses.emplace(f, to_double(m));
  return out;
}

std::vector<std::vector<bool>> fixation_masks(const GenTuple& action, const Ball& ball) {
  const auto evals = eval_ball(ball, action);
  std::vector<std::vector<bool>> out(action.degree(), std::vector<bool>(ball.size()));
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::uint32_t x = 0; x < action.degree(); ++x) out[x][i] = evals[i](x) == x;
  }
  return out;
}

CylinderFingerprint fingerprint(const GenTuple& action, std::uint32_t x, const Ball& ball) {
  if (x >= action.degree()) {
    throw InvalidArgument("point " + std::to_string(x) + " outside a G-set of size " +
                          std::to_string(action.degree()));
  }
  const auto evals = eval_ball(ball, action);
  std::vector<bool> mask(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) mask[i] = evals[i](x) == x;
  return WordSet::from_mask(ball, mask);
}

ExactIRS irs_of_gset(const FiniteGSet& x, int radius) {
  if (x.degree() < 1) throw InvalidArgument("a G-set needs at least one point");
  const Ball ball = enumerate_ball(x.rank(), radius);
  std::map<std::vector<bool>, std::size_t> counts;
  for (auto& mask : fixation_masks(x, ball)) ++counts[std::move(mask)];
  ExactIRS out;
  out.rank = x.rank();
  out.radius = radius;
  for (const auto& [mask, k] : counts) {
    out.masses.emplace(WordSet::from_mask(ball, mask), Rational(k, x.degree()));
  }
  return out;
}

FiniteGSet disjoint_union(const FiniteGSet& x, const FiniteGSet& y) {
  if (x.rank() != y.rank()) throw InvalidArgument("rank mismatch in disjoint union");
  const std::size_t n = x.degree();
  std::vector<Perm> gens;
  for (std::size_t g = 0; g < x.perms().size(); ++g) {
    std::vector<std::uint32_t> images(x[g].images());
    for (auto v : y[g].images()) images.push_back(static_cast<std::uint32_t>(v + n));
    gens.emplace_back(std::move(images));
  }
  return FiniteGSet(std::move(gens));
}

FiniteGSet trivial_gset(int rank, std::size_t m) { return GenTuple::identity(rank, m); }

ExactIRS mixture(const std::vector<std::pair<ExactIRS, Rational>>& parts) {
  if (parts.empty()) throw InvalidArgument("mixture of no parts");
  Rational total = 0;
  ExactIRS out;
  out.rank = parts.front().first.rank;
  out.radius = parts.front().first.radius;
  for (const auto& [irs, w] : parts) {
    if (irs.radius != out.radius || irs.rank != out.rank) {
      throw InvalidArgument("mixture parts have different radii or ranks");
    }
    if (w < 0) throw InvalidArgument("mixture weights must be non-negative");
    total += w;
    for (const auto& [f, m] : irs.masses) out.masses[f] += w * m;
  }
  if (total != 1) throw InvalidArgument("mixture weights sum to " + to_string(total) + ", not 1");
  std::erase_if(out.masses, [](const auto& e) { return e.second == 0; });
  return out;
}

FiniteGSet pad_gset(const FiniteGSet& x, std::size_t target) {
  const std::size_t n = x.degree();
  if (target < n) {
    throw InvalidArgument("cannot pad a G-set of size " + std::to_string(n) + " down to " +
                          std::to_string(target));
  }
  const std::size_t q = target / n;
  const std::size_t r = target % n;
  FiniteGSet out = x;
  for (std::size_t i = 1; i < q; ++i) out = disjoint_union(out, x);
  if (r > 0) out = disjoint_union(out, trivial_gset(x.rank(), r));
  return out;
}

ExactIRS padding_formula(const ExactIRS& irs, std::size_t size, std::size_t target) {
  if (size == 0 || target < size) throw InvalidArgument("padding needs 0 < size <= target");
  const std::size_t r = target % size;
  const Ball ball = enumerate_ball(irs.rank, irs.radius);
  ExactIRS delta;
  delta.rank = irs.rank;
  delta.radius = irs.radius;
  delta.masses.emplace(WordSet(irs.rank, irs.radius, ball.words()), Rational(1));
  return mixture({{irs, Rational(target - r, target)}, {delta, Rational(r, target)}});
}

FiniteGroup::FiniteGroup(GenTuple marking, std::size_t cap) : marking_(std::move(marking)) {
  auto closure = generate_closure(marking_, cap);
  if (closure.truncated) {
    throw ResourceError("group closure exceeds the cap of " + std::to_string(cap) + " elements");
  }
  elements_ = std::move(closure.elements);
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].key(), i);
}

std::size_t FiniteGroup::index_of(const Perm& p) const {
  if (p.degree() != marking_.degree()) return order();
  auto it = index_.find(p.key());
  return it == index_.end() ? order() : it->second;
}

std::vector<std::size_t> FiniteGroup::subgroup(const std::vector<std::size_t>& generators) const {
  for (auto g : generators) {
    if (g >= order()) {
      throw InvalidArgument("subgroup generator index " + std::to_string(g) +
                            " is not an element of the group");
    }
  }
  std::vector<bool> in(order(), false);
  std::vector<std::size_t> members{0};
  in[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (auto g : generators) {
      const std::size_t k = index_of(elements_[members[head]] * elements_[g]);
      if (!in[k]) {
        in[k] = true;
        members.push_back(k);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

void FiniteGroup::check_subgroup(const std::vector<std::size_t>& members) const {
  std::vector<bool> in(order(), false);
  for (auto m : members) {
    if (m >= order()) throw InvalidArgument("subgroup member index out of range");
    in[m] = true;
  }
  if (!in[0]) throw InvalidArgument("subgroup does not contain the identity");
  for (auto a : members) {
    for (auto b : members) {
      if (!in[index_of(elements_[a] * elements_[b])]) {
        throw InvalidArgument("given element set is not closed under multiplication");
      }
    }
  }
}

GenTuple FiniteGroup::coset_action(const std::vector<std::size_t>& subgroup) const {
  check_subgroup(subgroup);
  std::vector<std::size_t> coset_of(order(), order());
  std::vector<std::size_t> reps;
  for (std::size_t g = 0; g < order(); ++g) {
    if (coset_of[g] != order()) continue;
    const std::size_t c = reps.size();
    reps.push_back(g);
    for (auto h : subgroup) coset_of[index_of(elements_[g] * elements_[h])] = c;
  }
  std::vector<Perm> gens;
  for (const auto& s : marking_.perms()) {
    std::vector<std::uint32_t> images(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) {
      images[c] = static_cast<std::uint32_t>(coset_of[index_of(s * elements_[reps[c]])]);
    }
    gens.emplace_back(std::move(images));
  }
  return GenTuple(std::move(gens));
}

namespace {

void check_weights(const std::vector<IRSAtom>& atoms) {
  if (atoms.empty()) throw InvalidArgument("an atomic IRS needs at least one atom");
  Rational total = 0;
  for (const auto& a : atoms) {
    if (a.weight < 0) throw InvalidArgument("atom weights must be non-negative");
    total += a.weight;
  }
  if (total != 1) throw InvalidArgument("atom weights sum to " + to_string(total) + ", not 1");
}

}  // namespace

ExactIRS atomic_irs(const FiniteGroup& group, const std::vector<IRSAtom>& atoms, int radius) {
  check_weights(atoms);
  const Ball ball = enumerate_ball(group.marking().rank(), radius);
  const auto evals = eval_ball(ball, group.marking());
  ExactIRS out;
  out.rank = ball.rank();
  out.radius = radius;
  for (const auto& atom : atoms) {
    const auto h = group.subgroup(atom.generators);
    std::vector<bool> in_h(group.order(), false);
    for (auto k : h) in_h[k] = true;
    const Rational per_conjugate = atom.weight / Rational(group.order());
    for (std::size_t g = 0; g < group.order(); ++g) {
      // w lies in g H g^-1 iff g^-1 w g lies in H.
      const Perm& gp = group[g];
      const Perm gi = gp.inverse();
      std::vector<bool> mask(ball.size());
      for (std::size_t i = 0; i < ball.size(); ++i) {
        mask[i] = in_h[group.index_of(gi * evals[i] * gp)];
      }
      out.masses[WordSet::from_mask(ball, mask)] += per_conjugate;
    }
  }
  std::erase_if(out.masses, [](const auto& e) { return e.second == 0; });
  return out;
}

FiniteGSet realize_irs_as_gset(const FiniteGroup& group, const std::vector<IRSAtom>& atoms,
                               std::size_t size_cap) {
  check_weights(atoms);
  using boost::multiprecision::cpp_int;
  std::vector<std::vector<std::size_t>> subgroups;
  cpp_int denom_lcm = 1, index_lcm = 1;
  for (const auto& a : atoms) {
    subgroups.push_back(group.subgroup(a.generators));
    denom_lcm = boost::multiprecision::lcm(denom_lcm, cpp_int(denominator(a.weight)));
    index_lcm = boost::multiprecision::lcm(index_lcm, cpp_int(group.order() / subgroups.back().size()));
  }
  // Copies c_i of G/H_i with c_i [G:H_i] proportional to weight_i.
  std::vector<cpp_int> copies;
  cpp_int g = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const cpp_int scaled = numerator(atoms[i].weight) * (denom_lcm / denominator(atoms[i].weight));
    const cpp_int index = group.order() / subgroups[i].size();
    copies.push_back(scaled * (index_lcm / index));
    g = boost::multiprecision::gcd(g, copies.back());
  }
  cpp_int total = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    copies[i] /= g;
    total += copies[i] * (group.order() / subgroups[i].size());
  }
  if (total > size_cap) {
    throw ResourceError("realization needs " + total.str() + " points, over the cap of " +
                        std::to_string(size_cap));
  }
  std::optional<FiniteGSet> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (copies[i] == 0) continue;
    const GenTuple coset = group.coset_action(subgroups[i]);
    for (cpp_int c = 0; c < copies[i]; ++c) out = out ? disjoint_union(*out, coset) : coset;
  }
  return *out;
}

bool fingerprints_valid(const ExactIRS& irs) {
  return std::all_of(irs.masses.begin(), irs.masses.end(), [&](const auto& e) {
    return e.first.radius() == irs.radius && check_fingerprint(e.first).ok();
  });
}

bool fingerprints_valid(const ApproxIRS& irs) {
  return std::all_of(irs.masses.begin(), irs.masses.end(), [&](const auto& e) {
    return e.first.radius() == irs.radius && check_fingerprint(e.first).ok();
  });
}

double combined_stderr(const ApproxIRS& mu, const ApproxIRS& nu) {
  auto se = [](const ApproxIRS& irs, const CylinderFingerprint& f) {
    auto it = irs.stderr_of.find(f);
    return it == irs.stderr_of.end() ? 0.0 : it->second;
  };
  double total = 0;
  for (const auto& [f, _] : mu.masses) total += std::hypot(se(mu, f), se(nu, f));
  for (const auto& [f, _] : nu.masses) {
    if (!mu.masses.count(f)) total += se(nu, f);
  }
  return total / 2;
}

}  // namespace stablab
