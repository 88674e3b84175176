#include "stablab/subshift.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace stablab {

Substitution::Substitution(std::string alphabet, std::vector<std::string> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {}

Substitution Substitution::parse(std::string_view text) {
  std::string clean;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) clean.push_back(c);
  }
  std::map<char, std::string> rules;
  std::size_t pos = 0;
  while (pos <= clean.size()) {
    const std::size_t end = std::min(clean.find(';', pos), clean.size());
    const std::string rule = clean.substr(pos, end - pos);
    pos = end + 1;
    if (rule.empty()) continue;
    const auto arrow = rule.find("->");
    if (arrow != 1 || rule.size() < 4) {
      throw InvalidArgument("substitution rule \"" + rule + "\" is not of the form x->word");
    }
    const char c = rule[0];
    if (rules.count(c)) throw InvalidArgument(std::string("letter ") + c + " has two rules");
    rules[c] = rule.substr(3);
  }
  if (rules.empty()) throw InvalidArgument("empty substitution");
  std::string alphabet;
  std::vector<std::string> images;
  for (const auto& [c, img] : rules) {
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      throw InvalidArgument(std::string("letter '") + c + "' is not alphanumeric");
    }
    alphabet.push_back(c);
    images.push_back(img);
  }
  for (const auto& img : images) {
    for (char c : img) {
      if (!rules.count(c)) throw InvalidArgument(std::string("image uses undefined letter ") + c);
    }
  }
  return Substitution(std::move(alphabet), std::move(images));
}

Substitution Substitution::fibonacci() { return parse("a->ab;b->a"); }
Substitution Substitution::thue_morse() { return parse("a->ab;b->ba"); }
Substitution Substitution::chacon() { return parse("a->aabc;b->bc;c->abc"); }

std::size_t Substitution::letter_index(char c) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), c);
  if (it == alphabet_.end() || *it != c) {
    throw InvalidArgument(std::string("letter '") + c + "' is not in the alphabet");
  }
  return static_cast<std::size_t>(it - alphabet_.begin());
}

std::string Substitution::apply(std::string_view w) const {
  std::string out;
  for (char c : w) out += image(c);
  return out;
}

std::string Substitution::iterate(char c, int k) const {
  std::string w(1, c);
  for (int i = 0; i < k; ++i) w = apply(w);
  return w;
}

std::vector<std::vector<std::uint64_t>> Substitution::incidence() const {
  const std::size_t n = alphabet_.size();
  std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (char c : images_[j]) ++m[letter_index(c)][j];
  }
  return m;
}

bool Substitution::is_primitive() const {
  const std::size_t n = alphabet_.size();
  // Boolean powers suffice: positivity pattern of M^p.
  auto m = incidence();
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n)), cur;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) base[i][j] = m[i][j] > 0;
  }
  cur = base;
  for (std::size_t p = 1; p <= 2 * n * n; ++p) {
    bool positive = true;
    for (const auto& row : cur) positive = positive && std::all_of(row.begin(), row.end(), [](bool b) { return b; });
    if (positive) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!cur[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || base[k][j];
      }
    }
    cur = std::move(next);
  }
  return false;
}

std::string Substitution::str() const {
  std::string out;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (i) out += ';';
    out += alphabet_[i];
    out += "->" + images_[i];
  }
  return out;
}

Subshift::Subshift(Substitution s, std::size_t max_word_length)
    : sub_(std::move(s)), max_len_(max_word_length) {
  if (!sub_.is_primitive()) throw InvalidArgument("substitution " + sub_.str() + " is not primitive");
  // Two-letter factors: close the internal factors of the images under sigma.
  std::set<std::string> f2;
  auto add_factors = [&](const std::string& w, std::vector<std::string>& fresh) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (f2.insert(w.substr(i, 2)).second) fresh.push_back(w.substr(i, 2));
    }
  };
  std::vector<std::string> frontier;
  for (char c : sub_.alphabet()) add_factors(sub_.image(c), frontier);
  while (!frontier.empty()) {
    std::vector<std::string> fresh;
    for (const auto& de : frontier) add_factors(sub_.apply(de), fresh);
    frontier = std::move(fresh);
  }
  if (f2.empty()) throw InvalidArgument("substitution " + sub_.str() + " never grows words");
  two_factors_.assign(f2.begin(), f2.end());
  // A minimal subshift is periodic iff its complexity p(n) <= n for some n.
  for (std::size_t n = 1; n <= 128; ++n) {
    if (language(n).size() <= n) {
      throw InvalidArgument("substitution " + sub_.str() + " generates a periodic subshift");
    }
  }
}

std::shared_ptr<const Subshift> Subshift::create(Substitution s) {
  return std::make_shared<const Subshift>(std::move(s));
}

std::vector<std::string> Subshift::compute_language(std::size_t n) const {
  std::set<std::string> out;
  if (n == 1) {
    for (char c : sub_.alphabet()) out.insert(std::string(1, c));
    return {out.begin(), out.end()};
  }
  // With every sigma^k-block of length >= n, each length-n factor lies in
  // sigma^k(d) sigma^k(e) for some admissible two-letter word de.
  std::vector<std::string> blocks;
  for (char c : sub_.alphabet()) blocks.emplace_back(1, c);
  auto shortest = [&] {
    std::size_t m = blocks[0].size();
    for (const auto& b : blocks) m = std::min(m, b.size());
    return m;
  };
  while (shortest() < n) {
    for (auto& b : blocks) b = sub_.apply(b);
  }
  for (const auto& de : two_factors_) {
    const std::string w = blocks[sub_.letter_index(de[0])] + blocks[sub_.letter_index(de[1])];
    for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  }
  return {out.begin(), out.end()};
}

const Subshift::Table& Subshift::table(std::size_t n) const {
  if (n == 0) throw InvalidArgument("words must have positive length");
  if (n > max_len_) {
    throw ResourceError("word length " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(max_len_));
  }
  std::lock_guard lock(mutex_);
  auto it = tables_.find(n);
  if (it != tables_.end()) return it->second;
  Table t;
  t.words = compute_language(n);
  t.index.insert(t.words.begin(), t.words.end());
  return tables_.emplace(n, std::move(t)).first->second;
}

const std::vector<std::string>& Subshift::language(std::size_t n) const { return table(n).words; }

std::vector<std::string> Subshift::language_upto(std::size_t n) const {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& l = language(k);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

bool Subshift::admissible(std::string_view w) const {
  if (w.empty()) return true;
  return table(w.size()).index.count(std::string(w)) > 0;
}

std::string Subshift::sample_word(std::mt19937_64& rng, std::size_t length) const {
  const auto& l = language(length);
  std::uniform_int_distribution<std::size_t> pick(0, l.size() - 1);
  return l[pick(rng)];
}

ErgodicMeasure::ErgodicMeasure(SubshiftPtr space, double tolerance)
    : space_(std::move(space)), tolerance_(tolerance) {
  if (!space_) throw InvalidArgument("measure needs a subshift");
  if (!(tolerance_ > 0)) throw InvalidArgument("measure tolerance must be positive");
}

const ErgodicMeasure::Table& ErgodicMeasure::table(std::size_t n) const {
  const auto& words = space_->language(n);
  std::lock_guard lock(mutex_);
  auto it = tables_.find(n);
  if (it != tables_.end()) return it->second;

  const auto& sub = space_->substitution();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  // Column w of the n-block substitution: the n-windows of sigma(w) starting
  // inside sigma(w[0]).
  std::vector<std::vector<std::size_t>> cols(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string img = sub.apply(words[i]);
    const std::size_t first = sub.image(words[i][0]).size();
    for (std::size_t p = 0; p < first; ++p) cols[i].push_back(index.at(img.substr(p, n)));
  }
  const std::size_t k = words.size();
  std::vector<double> x(k, 1.0 / static_cast<double>(k)), y(k);
  double lambda = 1;
  for (int iter = 0; iter < 200000; ++iter) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (auto t : cols[i]) y[t] += x[i];
    }
    lambda = 0;
    for (double v : y) lambda += v;
    double diff = 0;
    for (std::size_t i = 0; i < k; ++i) {
      y[i] /= lambda;
      diff += std::abs(y[i] - x[i]);
    }
    x.swap(y);
    if (diff < 1e-16) break;
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (auto t : cols[i]) y[t] += x[i];
  }
  Table t;
  for (std::size_t i = 0; i < k; ++i) t.residual += std::abs(y[i] / lambda - x[i]);
  if (t.residual > tolerance_) {
    throw ResourceError("frequency table for length " + std::to_string(n) +
                        " did not converge (residual " + std::to_string(t.residual) + ")");
  }
  for (std::size_t i = 0; i < k; ++i) t.freq.emplace(words[i], x[i]);
  return tables_.emplace(n, std::move(t)).first->second;
}

double ErgodicMeasure::frequency(std::string_view w) const {
  if (w.empty()) return 1.0;
  const auto& t = table(w.size());
  auto it = t.freq.find(std::string(w));
  return it == t.freq.end() ? 0.0 : it->second;
}

double ErgodicMeasure::residual(std::size_t n) const { return table(n).residual; }

}  // namespace stablab
