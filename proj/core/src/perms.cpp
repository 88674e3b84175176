#include "stablab/perms.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace stablab {

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), 0u);
  return p;
}

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw InvalidArgument("image array is not a bijection of {0.." +
                            std::to_string(images_.size()) + "-1}");
    }
    seen[x] = true;
  }
}

Perm Perm::cycle(std::size_t degree, std::span<const std::uint32_t> points) {
  Perm p = identity(degree);
  std::vector<bool> seen(degree, false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= degree || seen[points[i]]) {
      throw InvalidArgument("invalid cycle entry " + std::to_string(points[i]));
    }
    seen[points[i]] = true;
    p.images_[points[i]] = points[(i + 1) % points.size()];
  }
  return p;
}

Perm Perm::parse(std::size_t degree, std::string_view text) {
  std::vector<std::vector<std::uint32_t>> groups;
  std::vector<std::uint32_t> current;
  bool in_group = false;
  char open = 0;
  std::string number;
  auto flush_number = [&] {
    if (!number.empty()) {
      current.push_back(static_cast<std::uint32_t>(std::stoul(number)));
      number.clear();
    }
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (!in_group) throw InvalidArgument("permutation text: digit outside brackets");
      number.push_back(c);
    } else if (c == '(' || c == '[') {
      if (in_group) throw InvalidArgument("permutation text: nested brackets");
      in_group = true;
      open = c;
    } else if (c == ')' || c == ']') {
      if (!in_group || (c == ')') != (open == '(')) {
        throw InvalidArgument("permutation text: unbalanced brackets");
      }
      flush_number();
      groups.push_back(std::move(current));
      current.clear();
      in_group = false;
    } else if (c == ' ' || c == ',') {
      flush_number();
    } else {
      throw InvalidArgument("permutation text: unexpected character '" + std::string(1, c) + "'");
    }
  }
  if (in_group) throw InvalidArgument("permutation text: unbalanced brackets");
  if (open == '[') {
    if (groups.size() != 1) throw InvalidArgument("permutation text: expected one image array");
    if (groups[0].size() != degree) {
      throw InvalidArgument("image array has length " + std::to_string(groups[0].size()) +
                            ", expected " + std::to_string(degree));
    }
    return Perm(groups[0]);
  }
  Perm p = identity(degree);
  for (const auto& g : groups) p = p * cycle(degree, g);
  return p;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::uint32_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = i;
  return out;
}

Perm Perm::pow(long exponent) const {
  Perm base = exponent < 0 ? inverse() : *this;
  unsigned long n = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  Perm acc = identity(degree());
  while (n) {
    if (n & 1u) acc = acc * base;
    base = base * base;
    n >>= 1u;
  }
  return acc;
}

bool Perm::is_identity() const noexcept {
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::size_t Perm::fixed_points() const noexcept {
  std::size_t n = 0;
  for (std::uint32_t i = 0; i < images_.size(); ++i) n += images_[i] == i;
  return n;
}

std::vector<std::vector<std::uint32_t>> Perm::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(degree(), false);
  for (std::uint32_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::vector<std::uint32_t> c;
    for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool Perm::is_even() const {
  std::size_t transpositions = 0;
  for (const auto& c : cycles()) transpositions += c.size() - 1;
  return transpositions % 2 == 0;
}

std::uint64_t Perm::order() const {
  std::uint64_t o = 1;
  for (const auto& c : cycles()) o = std::lcm(o, static_cast<std::uint64_t>(c.size()));
  return o;
}

std::string Perm::key() const {
  std::string k(images_.size() * sizeof(std::uint32_t), '\0');
  std::memcpy(k.data(), images_.data(), k.size());
  return k;
}

std::string Perm::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ' ';
    os << images_[i];
  }
  os << ']';
  return os.str();
}

std::string Perm::cycle_str() const {
  std::ostringstream os;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ' ';
      os << c[i];
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

Perm operator*(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) {
    throw InvalidArgument("degree mismatch in permutation product: " +
                          std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
  }
  Perm out;
  out.images_.resize(q.images_.size());
  for (std::size_t i = 0; i < q.images_.size(); ++i) out.images_[i] = p.images_[q.images_[i]];
  return out;
}

Rational hamming_distance(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) {
    throw InvalidArgument("degree mismatch in Hamming distance: " + std::to_string(p.degree()) +
                          " vs " + std::to_string(q.degree()));
  }
  if (p.degree() == 0) return Rational(0);
  std::size_t agree = 0;
  for (std::uint32_t i = 0; i < p.degree(); ++i) agree += p(i) == q(i);
  return Rational(1) - Rational(agree, p.degree());
}

GenTuple::GenTuple(std::vector<Perm> perms) : perms_(std::move(perms)) {
  if (perms_.empty()) throw InvalidArgument("a generator tuple needs at least one permutation");
  if (perms_.size() > static_cast<std::size_t>(kMaxRank)) {
    throw InvalidArgument("generator tuple rank exceeds 26");
  }
  degree_ = perms_.front().degree();
  for (const auto& p : perms_) {
    if (p.degree() != degree_) throw InvalidArgument("generator tuple degrees differ");
  }
  inverses_.reserve(perms_.size());
  for (const auto& p : perms_) inverses_.push_back(p.inverse());
}

GenTuple GenTuple::identity(int rank, std::size_t degree) {
  return GenTuple(std::vector<Perm>(static_cast<std::size_t>(rank), Perm::identity(degree)));
}

const Perm& GenTuple::letter(int x) const {
  const auto i = static_cast<std::size_t>(x > 0 ? x - 1 : -x - 1);
  if (x == 0 || i >= perms_.size()) {
    throw InvalidArgument("letter " + std::to_string(x) + " out of range for rank " +
                          std::to_string(rank()));
  }
  return x > 0 ? perms_[i] : inverses_[i];
}

GenTuple GenTuple::relabeled(const Perm& relabel) const {
  const Perm inv = relabel.inverse();
  std::vector<Perm> out;
  out.reserve(perms_.size());
  for (const auto& p : perms_) out.push_back(relabel * p * inv);
  return GenTuple(std::move(out));
}

Perm word_eval(const ReducedWord& w, const GenTuple& tuple) {
  if (w.rank() != tuple.rank()) {
    throw InvalidArgument("rank mismatch: word of rank " + std::to_string(w.rank()) +
                          " evaluated on a tuple of rank " + std::to_string(tuple.rank()));
  }
  Perm acc = Perm::identity(tuple.degree());
  for (int x : w.letters()) acc = acc * tuple.letter(x);
  return acc;
}

std::vector<Perm> eval_ball(const Ball& ball, const GenTuple& tuple) {
  if (ball.rank() != tuple.rank()) throw InvalidArgument("rank mismatch between ball and tuple");
  std::vector<Perm> out;
  out.reserve(ball.size());
  out.push_back(Perm::identity(tuple.degree()));
  for (std::size_t i = 1; i < ball.size(); ++i) {
    out.push_back(out[ball.parent(i)] * tuple.letter(ball.last_letter(i)));
  }
  return out;
}

Rational tuple_distance(const GenTuple& a, const GenTuple& b) {
  if (a.rank() != b.rank()) throw InvalidArgument("rank mismatch in tuple distance");
  if (a.degree() != b.degree()) throw InvalidArgument("degree mismatch in tuple distance");
  Rational total = 0;
  for (std::size_t i = 0; i < a.perms().size(); ++i) total += hamming_distance(a[i], b[i]);
  return total;
}

namespace {

WordDistanceReport distance_report(const GenTuple& tuple, const WordSet& words, bool take_max) {
  WordDistanceReport rep;
  const Perm id = Perm::identity(tuple.degree());
  bool first = true;
  for (const auto& w : words) {
    Rational d = hamming_distance(word_eval(w, tuple), id);
    if (first || (take_max ? d > rep.extreme : d < rep.extreme)) rep.extreme = d;
    first = false;
    rep.distances.emplace_back(w, std::move(d));
  }
  return rep;
}

void check_delta(const Rational& delta) {
  if (delta <= 0 || delta > 1) throw InvalidArgument("delta must lie in (0, 1]");
}

}  // namespace

WordDistanceReport check_almost_solution(const GenTuple& tuple, const WordSet& relators,
                                         const Rational& delta) {
  check_delta(delta);
  auto rep = distance_report(tuple, relators, true);
  rep.pass = std::all_of(rep.distances.begin(), rep.distances.end(),
                         [&](const auto& e) { return e.second < delta; });
  return rep;
}

WordDistanceReport check_separating(const GenTuple& tuple, const WordSet& words,
                                    const Rational& delta) {
  check_delta(delta);
  auto rep = distance_report(tuple, words, false);
  const Rational bound = Rational(1) - delta;
  rep.pass = std::all_of(rep.distances.begin(), rep.distances.end(),
                         [&](const auto& e) { return e.second > bound; });
  return rep;
}

Closure generate_closure(const GenTuple& tuple, std::size_t cap) {
  if (cap < 1) throw InvalidArgument("closure cap must be at least 1");
  Closure out;
  std::unordered_map<std::string, std::size_t> index;
  Perm id = Perm::identity(tuple.degree());
  index.emplace(id.key(), 0);
  out.elements.push_back(std::move(id));
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (const auto& g : tuple.perms()) {
      Perm next = out.elements[head] * g;
      auto [it, inserted] = index.try_emplace(next.key(), out.elements.size());
      if (!inserted) continue;
      if (out.elements.size() >= cap) {
        out.truncated = true;
        return out;
      }
      out.elements.push_back(std::move(next));
    }
  }
  return out;
}

GenTuple bracket_marking(int r) {
  if (r < 1) throw InvalidArgument("bracket marking needs r >= 1");
  const auto k = static_cast<std::size_t>(2 * r + 1);
  std::vector<std::uint32_t> alpha(k);
  for (std::size_t i = 0; i < k; ++i) alpha[i] = static_cast<std::uint32_t>((i + 1) % k);
  const auto c = static_cast<std::uint32_t>(r);
  const std::uint32_t beta_cycle[] = {c - 1, c, c + 1};
  return GenTuple({Perm(std::move(alpha)), Perm::cycle(k, beta_cycle)});
}

GenTuple alt_marking(int r) {
  if (r < 2) throw InvalidArgument("alt_marking needs r >= 2, got " + std::to_string(r));
  return bracket_marking(r);
}

}  // namespace stablab
