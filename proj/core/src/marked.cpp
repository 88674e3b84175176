#include "stablab/marked.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace stablab {

AZElement::AZElement(std::vector<std::pair<long, long>> sigma, long shift) : shift_(shift) {
  std::sort(sigma.begin(), sigma.end());
  std::vector<long> domain, range;
  for (auto [n, m] : sigma) {
    if (!domain.empty() && domain.back() == n) {
      throw InvalidArgument("finite map lists point " + std::to_string(n) + " twice");
    }
    domain.push_back(n);
    range.push_back(m);
  }
  std::sort(range.begin(), range.end());
  if (domain != range) throw InvalidArgument("finite map is not a permutation of its support");
  for (auto& e : sigma) {
    if (e.first != e.second) sigma_.push_back(e);
  }
  if (!sigma_is_even()) throw InvalidArgument("sigma must be an even permutation");
}

AZElement AZElement::three_cycle_at(long c) {
  return AZElement({{c - 1, c}, {c, c + 1}, {c + 1, c - 1}}, 0);
}

long AZElement::sigma_at(long n) const {
  auto it = std::lower_bound(sigma_.begin(), sigma_.end(), std::make_pair(n, long{0}),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  return it != sigma_.end() && it->first == n ? it->second : n;
}

bool AZElement::sigma_is_even() const {
  std::map<long, long> m(sigma_.begin(), sigma_.end());
  std::map<long, bool> seen;
  std::size_t transpositions = 0;
  for (auto [n, _] : m) {
    if (seen[n]) continue;
    std::size_t len = 0;
    for (long j = n; !seen[j]; j = m.at(j)) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

long AZElement::support_radius() const noexcept {
  long r = -1;
  for (auto [n, _] : sigma_) r = std::max(r, std::abs(n));
  return r;
}

AZElement AZElement::inverse() const {
  // (sigma, t)^-1 = ((-t) . sigma^-1, -t)
  AZElement out;
  out.shift_ = -shift_;
  for (auto [n, m] : sigma_) out.sigma_.emplace_back(m - shift_, n - shift_);
  std::sort(out.sigma_.begin(), out.sigma_.end());
  return out;
}

std::string AZElement::str() const {
  std::ostringstream os;
  os << '(';
  std::map<long, long> m(sigma_.begin(), sigma_.end());
  std::map<long, bool> seen;
  bool any = false;
  for (auto [n, _] : m) {
    if (seen[n]) continue;
    os << '(';
    bool first = true;
    for (long j = n; !seen[j]; j = m.at(j)) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j;
      first = false;
    }
    os << ')';
    any = true;
  }
  if (!any) os << "id";
  os << ',' << shift_ << ')';
  return os.str();
}

AZElement operator*(const AZElement& a, const AZElement& b) {
  // (t . tau)(n) = tau(n - t) + t has support supp(tau) + t.
  const long t = a.shift_;
  std::vector<long> points;
  for (auto [n, _] : a.sigma_) points.push_back(n);
  for (auto [n, _] : b.sigma_) points.push_back(n + t);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  AZElement out;
  out.shift_ = t + b.shift_;
  for (long n : points) {
    const long m = a.sigma_at(b.sigma_at(n - t) + t);
    if (m != n) out.sigma_.emplace_back(n, m);
  }
  return out;
}

AZElement AZGroup::letter(int x) const {
  switch (x) {
    case 1: return AZElement::shift_by(1);
    case -1: return AZElement::shift_by(-1);
    case 2: return AZElement::three_cycle_at(0);
    case -2: return AZElement::three_cycle_at(0).inverse();
    default:
      throw InvalidArgument("letter " + std::to_string(x) + " out of range for A(Z)");
  }
}

OraclePtr az_oracle() { return std::make_shared<const GroupOracle<AZGroup>>(AZGroup{}); }

OraclePtr alt_oracle(int r) { return perm_oracle(alt_marking(r), "alt:" + std::to_string(r)); }

OraclePtr perm_oracle(GenTuple tuple, std::string name) {
  return std::make_shared<const GroupOracle<PermGroup>>(PermGroup(std::move(tuple), std::move(name)));
}

OraclePtr free_oracle(int rank) {
  return std::make_shared<const GroupOracle<FreeGroup>>(FreeGroup(rank));
}

OraclePtr trivial_oracle(int rank) {
  return std::make_shared<const GroupOracle<TrivialGroup>>(TrivialGroup(rank));
}

WordSet kernel_fingerprint(const MarkedGroupOracle& oracle, int radius, std::size_t ball_cap) {
  const Ball ball = enumerate_ball(oracle.rank(), radius, ball_cap);
  return WordSet::from_mask(ball, oracle.identity_mask(ball));
}

double NuResult::distance() const { return std::ldexp(1.0, -nu); }

std::string NuResult::str() const {
  return at_least ? ">=" + std::to_string(nu) : std::to_string(nu);
}

namespace {

NuResult nu_from_masks(const Ball& ball, const std::vector<bool>& a, const std::vector<bool>& b) {
  NuResult res;
  res.r_max = ball.radius();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (a[i] != b[i]) {
      res.nu = static_cast<int>(ball[i].length()) - 1;
      return res;
    }
  }
  res.nu = ball.radius();
  res.at_least = true;
  return res;
}

}  // namespace

NuResult marked_nu(const MarkedGroupOracle& a, const MarkedGroupOracle& b, int r_max,
                   std::size_t ball_cap) {
  if (a.rank() != b.rank()) {
    throw InvalidArgument("cannot compare marked groups of ranks " + std::to_string(a.rank()) +
                          " and " + std::to_string(b.rank()));
  }
  const Ball ball = enumerate_ball(a.rank(), r_max, ball_cap);
  return nu_from_masks(ball, a.identity_mask(ball), b.identity_mask(ball));
}

std::vector<NuResult> convergence_table(const std::vector<OraclePtr>& sequence,
                                        const MarkedGroupOracle& target, int r_max,
                                        std::size_t ball_cap) {
  for (const auto& o : sequence) {
    if (o->rank() != target.rank()) throw InvalidArgument("oracle ranks differ in sequence");
  }
  const Ball ball = enumerate_ball(target.rank(), r_max, ball_cap);
  const auto target_mask = target.identity_mask(ball);
  std::vector<NuResult> out;
  out.reserve(sequence.size());
  for (const auto& o : sequence) out.push_back(nu_from_masks(ball, o->identity_mask(ball), target_mask));
  return out;
}

TruncatedDiagonalProduct::TruncatedDiagonalProduct(std::vector<GenTuple> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("a diagonal product needs at least one factor");
  const int rank = factors_.front().rank();
  std::size_t total = 0;
  for (const auto& f : factors_) {
    if (f.rank() != rank) throw InvalidArgument("diagonal product factors have different ranks");
    offsets_.push_back(total);
    total += f.degree();
  }
  std::vector<Perm> gens;
  for (int g = 0; g < rank; ++g) {
    std::vector<std::uint32_t> images(total);
    for (std::size_t m = 0; m < factors_.size(); ++m) {
      const auto& p = factors_[m][static_cast<std::size_t>(g)];
      for (std::uint32_t i = 0; i < p.degree(); ++i) {
        images[offsets_[m] + i] = static_cast<std::uint32_t>(offsets_[m] + p(i));
      }
    }
    gens.emplace_back(std::move(images));
  }
  marking_ = GenTuple(std::move(gens));
}

Perm TruncatedDiagonalProduct::project(const Perm& p, std::size_t m) const {
  if (p.degree() != marking_.degree()) throw InvalidArgument("permutation is not block diagonal");
  const std::size_t off = offsets_.at(m);
  const std::size_t deg = factors_[m].degree();
  std::vector<std::uint32_t> images(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    const std::uint32_t y = p(static_cast<std::uint32_t>(off + i));
    if (y < off || y >= off + deg) throw InvalidArgument("permutation does not preserve block");
    images[i] = static_cast<std::uint32_t>(y - off);
  }
  return Perm(std::move(images));
}

OraclePtr TruncatedDiagonalProduct::oracle(std::string name) const {
  return perm_oracle(marking_, std::move(name));
}

OraclePtr diagonal_oracle(const std::vector<GenTuple>& factors) {
  return TruncatedDiagonalProduct(factors).oracle();
}

TailDefect tail_defect(const ReducedWord& w, const TruncatedDiagonalProduct& product,
                       const MarkedGroupOracle& target) {
  if (w.rank() != product.rank() || target.rank() != product.rank()) {
    throw InvalidArgument("rank mismatch in tail defect");
  }
  TailDefect out{w, target.evaluate(w).is_identity(), {}};
  for (std::size_t m = 0; m < product.size(); ++m) {
    if (!word_eval(w, product.factors()[m]).is_identity()) out.defect.push_back(m);
  }
  return out;
}

TruncatedDiagonalProduct neumann_truncation(int offset, int count, const RadiusSequence& r0) {
  if (count <= 0) throw InvalidArgument("neumann truncation needs at least one factor");
  if (offset < 0) throw InvalidArgument("neumann offset must be non-negative");
  std::vector<GenTuple> factors;
  int prev = 1;
  for (int m = 0; m < count; ++m) {
    const int r = r0(m + offset);
    if (r < 2 || r <= prev) {
      throw InvalidArgument("radius sequence must be >= 2 and strictly increasing");
    }
    prev = r;
    factors.push_back(alt_marking(r));
  }
  return TruncatedDiagonalProduct(std::move(factors));
}

OraclePtr oracle_from_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto num = [&](std::size_t i) {
    try {
      return std::stoi(parts.at(i));
    } catch (const std::exception&) {
      throw InvalidArgument("malformed oracle spec \"" + spec + "\"");
    }
  };
  if (parts.empty()) throw InvalidArgument("empty oracle spec");
  const auto& kind = parts[0];
  if (kind == "az" && parts.size() == 1) return az_oracle();
  if (kind == "alt" && parts.size() == 2) return alt_oracle(num(1));
  if (kind == "neumann" && parts.size() == 3) {
    return neumann_truncation(num(1), num(2)).oracle(spec);
  }
  if (kind == "free" && parts.size() == 2) return free_oracle(num(1));
  if (kind == "trivial" && parts.size() == 2) return trivial_oracle(num(1));
  throw InvalidArgument("unknown oracle spec \"" + spec + "\"");
}

}  // namespace stablab
