#include "stablab/vershik.hpp"

#include <algorithm>
#include <random>

#include "stablab/marked.hpp"

namespace stablab {

VershikTarget VershikTarget::parse(const std::string& spec) {
  if (spec == "az") return {true, 0};
  if (spec.rfind("alt:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(spec.substr(4), &used);
      if (used == spec.size() - 4 && n >= 1) return {false, n};
    } catch (const std::exception&) {
    }
  }
  throw InvalidArgument("colouring target must be \"az\" or \"alt:n\" with n >= 1, got \"" + spec +
                        "\"");
}

std::string VershikTarget::str() const { return az ? "az" : "alt:" + std::to_string(n); }

int vershik_min_window(int radius) {
  // Ball words of length <= r have support in [[r+1]] and shift at most r.
  return 2 * radius + 1;
}

namespace {

// Each ball word reduces to the list of site pairs whose colours must agree.
struct Constraints {
  std::size_t sites = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs;
};

Constraints build_constraints(const VershikTarget& target, const VershikOptions& opt,
                              const Ball& ball) {
  Constraints out;
  out.pairs.resize(ball.size());
  if (!target.az) {
    const GenTuple marking = bracket_marking(target.n);
    const auto evals = eval_ball(ball, marking);
    out.sites = marking.degree();
    for (std::size_t i = 0; i < ball.size(); ++i) {
      for (std::uint32_t x = 0; x < out.sites; ++x) {
        if (evals[i](x) != x) out.pairs[i].emplace_back(x, evals[i](x));
      }
    }
    return out;
  }
  if (opt.window < vershik_min_window(opt.radius)) {
    throw InvalidArgument("colouring window half-width " + std::to_string(opt.window) +
                          " is too small for radius " + std::to_string(opt.radius) + "; need >= " +
                          std::to_string(vershik_min_window(opt.radius)));
  }
  const long w = opt.window;
  out.sites = static_cast<std::size_t>(2 * w + 1);
  AZGroup group;
  std::vector<AZElement> evals(ball.size());
  for (std::size_t i = 1; i < ball.size(); ++i) {
    evals[i] = evals[ball.parent(i)] * group.letter(ball.last_letter(i));
  }
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto& g = evals[i];
    if (g.shift() == 0 && g.support_radius() > w) {
      throw InvalidArgument("ball element " + g.str() + " is not supported in the window");
    }
    for (long m = -w; m <= w; ++m) {
      const long gm = g.apply(m);
      if (gm != m && gm >= -w && gm <= w) {
        out.pairs[i].emplace_back(static_cast<std::uint32_t>(m + w),
                                  static_cast<std::uint32_t>(gm + w));
      }
    }
  }
  return out;
}

bool fixes(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
           const std::vector<std::uint8_t>& colouring) {
  return std::all_of(pairs.begin(), pairs.end(),
                     [&](auto p) { return colouring[p.first] == colouring[p.second]; });
}

void check_alpha(const std::vector<Rational>& alpha) {
  if (alpha.empty() || alpha.size() > 255) {
    throw InvalidArgument("colour distribution needs between 1 and 255 colours");
  }
  Rational total = 0;
  for (const auto& p : alpha) {
    if (p < 0) throw InvalidArgument("colour probabilities must be non-negative");
    total += p;
  }
  if (total != 1) throw InvalidArgument("colour probabilities sum to " + to_string(total));
}

}  // namespace

ExactIRS vershik_irs_exact(const std::vector<Rational>& alpha, const VershikTarget& target,
                           const VershikOptions& options) {
  check_alpha(alpha);
  const Ball ball = enumerate_ball(2, options.radius);
  const Constraints c = build_constraints(target, options, ball);
  // Colours of probability zero never occur, so they are left out of the enumeration.
  std::vector<std::uint8_t> live;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] > 0) live.push_back(static_cast<std::uint8_t>(k));
  }
  double count = 1;
  for (std::size_t s = 0; s < c.sites; ++s) count *= static_cast<double>(live.size());
  if (count > static_cast<double>(options.enumeration_cap)) {
    throw ResourceError("exact colouring enumeration needs " + std::to_string(count) +
                        " colourings, over the cap of " + std::to_string(options.enumeration_cap));
  }
  std::vector<std::size_t> digits(c.sites, 0);
  std::vector<std::uint8_t> colouring(c.sites, live[0]);
  std::map<std::vector<bool>, Rational> by_mask;
  std::vector<bool> mask(ball.size());
  while (true) {
    Rational weight = 1;
    for (auto col : colouring) weight *= alpha[col];
    for (std::size_t i = 0; i < ball.size(); ++i) mask[i] = fixes(c.pairs[i], colouring);
    by_mask[mask] += weight;
    std::size_t s = 0;
    while (s < c.sites && ++digits[s] == live.size()) {
      digits[s] = 0;
      colouring[s] = live[0];
      ++s;
    }
    if (s == c.sites) break;
    colouring[s] = live[digits[s]];
  }
  ExactIRS out;
  out.rank = 2;
  out.radius = options.radius;
  for (const auto& [m, p] : by_mask) out.masses[WordSet::from_mask(ball, m)] += p;
  return out;
}

ApproxIRS vershik_irs_sampled(const std::vector<Rational>& alpha, const VershikTarget& target,
                              const VershikOptions& options, std::uint64_t n_samples,
                              std::uint64_t seed) {
  check_alpha(alpha);
  const Ball ball = enumerate_ball(2, options.radius);
  const Constraints c = build_constraints(target, options, ball);
  std::vector<double> weights;
  for (const auto& p : alpha) weights.push_back(to_double(p));
  using Colouring = std::vector<std::uint8_t>;
  std::function<Colouring(std::mt19937_64&)> sampler = [&](std::mt19937_64& rng) {
    std::discrete_distribution<int> colour(weights.begin(), weights.end());
    Colouring out(c.sites);
    for (auto& x : out) x = static_cast<std::uint8_t>(colour(rng));
    return out;
  };
  std::function<bool(std::size_t, const Colouring&)> fixed = [&](std::size_t i, const Colouring& col) {
    return fixes(c.pairs[i], col);
  };
  return sample_irs<Colouring>(sampler, fixed, ball, n_samples, seed);
}

}  // namespace stablab
